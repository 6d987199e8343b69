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

#include "tlbf/harness/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "tlbf/analysis.hpp"

namespace tlbf::harness {

SweepEntry select_configuration(double error_rate, const SweepLimits& limits)
{
    if (!(error_rate > 0.0 && error_rate < 1.0)) {
        throw std::invalid_argument("select_configuration: error rate must be in (0, 1)");
    }
    const double max_distance = std::log(limits.tolerance_factor);

    SweepEntry best;
    for (std::uint32_t k = 1; k <= limits.max_k; ++k) {
        std::uint32_t nearest_l = 0;
        double nearest = std::numeric_limits<double>::infinity();
        double nearest_fpr = 0.0;
        for (std::uint32_t l = 1; l <= limits.max_l; ++l) {
            const double fpr = analysis::expected_false_positive_rate(k, l);
            const double distance = std::abs(std::log(fpr / error_rate));
            if (distance < nearest) {
                nearest = distance;
                nearest_l = l;
                nearest_fpr = fpr;
            }
        }
        if (nearest > max_distance) {
            continue;
        }
        const double bpe = static_cast<double>(k + nearest_l) * k / (nearest_l * analysis::kLn2);
        if (best.k == 0 || bpe < best.expected_bits_per_element) {
            best = SweepEntry{error_rate, k, nearest_l, nearest_fpr, bpe};
        }
    }
    if (best.k == 0) {
        throw std::invalid_argument("select_configuration: no (k, l) within limits reaches the error rate");
    }
    return best;
}

std::vector<double> default_error_rates()
{
    return {0.1, 0.01, 0.001, 0.0001, 0.00001};
}

SweepOutcome run_sweep_entry(const SweepEntry& entry, ExperimentConfig base)
{
    base.k = entry.k;
    base.l = entry.l;
    const ExperimentResult result = run_experiment(base);

    SweepOutcome out;
    out.entry = entry;
    out.warmup_shifts = static_cast<std::uint64_t>(entry.k) + entry.l;
    out.false_negatives = result.false_negatives;
    if (result.samples.empty()) {
        return out;
    }
    out.final_slices = result.samples.back().num_slices;

    const std::uint64_t steady_from = result.shift_indices.size() >= out.warmup_shifts
                                          ? result.shift_indices[out.warmup_shifts - 1]
                                          : result.samples.size();
    double fpr_sum = 0.0;
    double fpr_max = 0.0;
    std::uint64_t fpr_n = 0;
    for (const MetricSample& s : result.samples) {
        if (s.insert_index >= steady_from && s.measured_fpr) {
            fpr_sum += *s.measured_fpr;
            ++fpr_n;
            fpr_max = std::max(fpr_max, *s.measured_fpr);
        }
    }
    if (fpr_n > 0) {
        out.mean_fpr = fpr_sum / static_cast<double>(fpr_n);
        out.max_fpr = fpr_max;
    }

    double bpe_sum = 0.0;
    std::uint64_t bpe_n = 0;
    const std::size_t tail = std::max<std::size_t>(result.samples.size() / 10, 1);
    for (std::size_t i = result.samples.size() - tail; i < result.samples.size(); ++i) {
        if (const auto& bpe = result.samples[i].bits_per_element) {
            bpe_sum += *bpe;
            ++bpe_n;
        }
    }
    out.mean_bits_per_element = bpe_n > 0 ? bpe_sum / static_cast<double>(bpe_n) : 0.0;
    return out;
}

}  // namespace tlbf::harness
