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

// Closed-form sizing and fill-ratio formulas shared by the filter and its
// tests. Everything here is a pure function.
namespace tlbf::analysis {

inline constexpr double kLn2 = 0.693147180559945309417232121458176568;

// Expected fraction of set bits after inserting n elements, one bit each, into
// a size-m array: 1 - (1 - 1/m)^n. Requires m >= 1.
[[nodiscard]] double expected_fill_ratio(std::uint64_t n, std::uint64_t m);

// Worst-case (just before a shift) fill ratio of the slice at position i in a
// warmed-up filter with k insertion slices.
[[nodiscard]] double steady_state_fill_ratio(std::uint32_t i, std::uint32_t k);

// Number of elements a slice of `bits` bits holds at fill ratio 1/2: floor(bits * ln 2).
[[nodiscard]] std::uint64_t slice_capacity(std::uint64_t bits);

// Bits needed to hold `capacity` elements at fill ratio 1/2: ceil(capacity / ln 2).
[[nodiscard]] std::uint64_t slice_bits_for_capacity(double capacity);

// Insertions left for a slice at insertion-region position i (0 <= i < k) before it
// reaches its optimal fill, spread across its remaining k - i generations:
// floor((bits * ln 2 - inserted) / (k - i)), clamped at zero for over-full slices.
[[nodiscard]] std::uint64_t remaining_updates(std::uint64_t bits, std::uint64_t inserted, std::uint32_t position,
                                              std::uint32_t k);

// Insertions per generation that would make shifts land every t_span / l:
// inserted * t_span / (elapsed * l). elapsed is clamped to at least 1 ms.
[[nodiscard]] double target_generation_size(std::uint64_t inserted, std::uint64_t t_span_ms, std::uint64_t elapsed_ms,
                                            std::uint32_t l);

// Probability that a never-inserted element is reported present by a warmed-up
// filter of k + l slices whose fill ratios follow steady_state_fill_ratio(),
// with independent bit tests (the probability of a run of k consecutive hits).
[[nodiscard]] double expected_false_positive_rate(std::uint32_t k, std::uint32_t l);

}  // namespace tlbf::analysis
