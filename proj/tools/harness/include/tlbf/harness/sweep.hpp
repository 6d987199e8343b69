// Copyright 2026 The tlbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tlbf/harness/experiment.hpp"

namespace tlbf::harness {

// A (k, l) pair chosen for a target error rate.
struct SweepEntry {
    double error_rate = 0.0;
    std::uint32_t k = 0;
    std::uint32_t l = 0;
    double expected_fpr = 0.0;           // analysis::expected_false_positive_rate(k, l)
    double expected_bits_per_element = 0.0;  // (k + l) * k / (l * ln 2) at steady state
};

struct SweepLimits {
    std::uint32_t max_k = 24;
    std::uint32_t max_l = 64;
    // Accept a pair when its expected FPR is within this factor of the target.
    double tolerance_factor = 1.25;
};

// Picks, among pairs whose expected FPR is closest to error_rate for their k,
// the one with the fewest expected bits per element. Throws
// std::invalid_argument when error_rate is outside (0, 1) or no pair qualifies.
[[nodiscard]] SweepEntry select_configuration(double error_rate, const SweepLimits& limits = {});

[[nodiscard]] std::vector<double> default_error_rates();

struct SweepOutcome {
    SweepEntry entry;
    std::uint64_t warmup_shifts = 0;  // samples before this many shifts are excluded
    std::optional<double> mean_fpr;  // absent when no sample follows the warm-up
    std::optional<double> max_fpr;
    double mean_bits_per_element = 0.0;  // over the final 10% of insertions
    std::uint64_t final_slices = 0;
    std::uint64_t false_negatives = 0;
};

// Runs `base` with the entry's k and l and summarizes the trace. Samples are
// counted once k + l shifts have happened.
[[nodiscard]] SweepOutcome run_sweep_entry(const SweepEntry& entry, ExperimentConfig base);

}  // namespace tlbf::harness
