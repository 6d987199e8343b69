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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "tlbf/clock.hpp"

namespace tlbf::harness {

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'0f'71bf'2023ULL;

struct ExperimentConfig {
    std::uint32_t k = 4;
    std::uint32_t l = 3;
    std::uint64_t initial_capacity = 1000;
    Millis t_span = 300'000;
    Millis insert_interval = 100;
    std::uint64_t stream_length = 10'000;
    std::uint64_t probe_count = 10'000;
    std::uint64_t sample_every = 100;  // 0 disables FPR sampling
    std::uint64_t seed = kDefaultSeed;
    bool wall_clock = false;

    void validate() const;
};

// One row per insertion.
struct MetricSample {
    std::uint64_t insert_index = 0;
    std::uint64_t sim_time_ms = 0;
    std::uint64_t num_slices = 0;
    std::uint64_t m0_bits = 0;
    std::uint64_t total_bits = 0;
    std::optional<double> bits_per_element;  // absent until an element is in the window
    std::optional<double> measured_fpr;      // present on sampled rows only

    friend bool operator==(const MetricSample&, const MetricSample&) = default;
};

struct ExperimentResult {
    std::vector<MetricSample> samples;
    std::uint64_t construction_m0_bits = 0;
    // Insert indices whose insertion triggered a shift.
    std::vector<std::uint64_t> shift_indices;
    // Final-window membership check against the exact oracle.
    std::uint64_t in_window_checked = 0;
    std::uint64_t false_negatives = 0;
};

// Stream elements are 0x00 followed by the big-endian index; probes use 0x01, so
// the two namespaces never intersect.
[[nodiscard]] std::string stream_element(std::uint64_t index);
[[nodiscard]] std::string probe_element(std::uint64_t index);

// Replays cfg.stream_length distinct elements, one every insert_interval, against
// a fresh filter and an exact oracle.
[[nodiscard]] ExperimentResult run_experiment(const ExperimentConfig& cfg);

inline constexpr const char* kTraceHeader =
    "insert_index,sim_time_ms,num_slices,m0_bits,total_bits,bits_per_element,measured_fpr";

void write_trace(std::ostream& out, std::span<const MetricSample> samples);
// Throws std::runtime_error when the file cannot be written.
void write_trace(const std::string& path, std::span<const MetricSample> samples);

}  // namespace tlbf::harness
