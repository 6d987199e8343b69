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

#include "tlbf/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace tlbf::analysis {

double expected_fill_ratio(std::uint64_t n, std::uint64_t m)
{
    if (m == 0) {
        throw std::invalid_argument("expected_fill_ratio: m must be positive");
    }
    if (n == 0) {
        return 0.0;
    }
    // log1p keeps precision for large m where 1 - 1/m rounds badly.
    return -std::expm1(static_cast<double>(n) * std::log1p(-1.0 / static_cast<double>(m)));
}

double steady_state_fill_ratio(std::uint32_t i, std::uint32_t k)
{
    if (k == 0) {
        throw std::invalid_argument("steady_state_fill_ratio: k must be positive");
    }
    if (i >= k) {
        return 0.5;
    }
    return 1.0 - std::exp2(-static_cast<double>(i + 1) / static_cast<double>(k));
}

std::uint64_t slice_capacity(std::uint64_t bits)
{
    return static_cast<std::uint64_t>(std::floor(static_cast<double>(bits) * kLn2));
}

std::uint64_t slice_bits_for_capacity(double capacity)
{
    if (!(capacity > 0.0)) {
        return 0;
    }
    return static_cast<std::uint64_t>(std::ceil(capacity / kLn2));
}

std::uint64_t remaining_updates(std::uint64_t bits, std::uint64_t inserted, std::uint32_t position, std::uint32_t k)
{
    if (position >= k) {
        throw std::invalid_argument("remaining_updates: position must be inside the insertion region");
    }
    const double headroom = static_cast<double>(bits) * kLn2 - static_cast<double>(inserted);
    if (headroom <= 0.0) {
        return 0;
    }
    return static_cast<std::uint64_t>(std::floor(headroom / static_cast<double>(k - position)));
}

double target_generation_size(std::uint64_t inserted, std::uint64_t t_span_ms, std::uint64_t elapsed_ms,
                              std::uint32_t l)
{
    if (l == 0) {
        throw std::invalid_argument("target_generation_size: l must be positive");
    }
    const auto elapsed = static_cast<double>(std::max<std::uint64_t>(elapsed_ms, 1));
    return static_cast<double>(inserted) * static_cast<double>(t_span_ms) / (elapsed * static_cast<double>(l));
}

double expected_false_positive_rate(std::uint32_t k, std::uint32_t l)
{
    if (k == 0) {
        throw std::invalid_argument("expected_false_positive_rate: k must be positive");
    }
    // run[c]: probability that the trailing run of hits has length c and no
    // earlier run reached k.
    std::vector<double> run(k, 0.0);
    run[0] = 1.0;
    double hit_k = 0.0;
    for (std::uint32_t i = 0; i < k + l; ++i) {
        const double r = steady_state_fill_ratio(i, k);
        std::vector<double> next(k, 0.0);
        for (std::uint32_t c = 0; c < k; ++c) {
            next[0] += run[c] * (1.0 - r);
            if (c + 1 == k) {
                hit_k += run[c] * r;
            } else {
                next[c + 1] += run[c] * r;
            }
        }
        run = std::move(next);
    }
    return hit_k;
}

}  // namespace tlbf::analysis
