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

#include <cstddef>
#include <cstdint>
#include <deque>
#include <span>
#include <string_view>
#include <vector>

#include "tlbf/bit_array.hpp"
#include "tlbf/clock.hpp"
#include "tlbf/hashing.hpp"

namespace tlbf {

struct FilterParams {
    std::uint32_t k = 4;                    // consecutive slices touched per insert
    std::uint32_t l = 3;                    // window depth in generations
    Millis t_span = 300'000;                // guaranteed membership span
    std::uint64_t initial_capacity = 1000;  // expected elements per t_span
    std::uint64_t seed = 0;

    // Throws std::invalid_argument unless k, l, t_span and initial_capacity are all >= 1.
    void validate() const;
};

struct Slice {
    BitArray bits;
    std::uint64_t inserted = 0;
    Timestamp last_update;
    std::uint32_t hash_index = 0;

    [[nodiscard]] std::uint64_t size() const noexcept { return bits.size(); }
    // Elements held at fill ratio 1/2.
    [[nodiscard]] std::uint64_t capacity() const;

    friend bool operator==(const Slice&, const Slice&) = default;
};

struct SliceSizing {
    std::uint64_t capacity = 0;
    std::uint64_t bits = 0;
};

struct MetricSnapshot {
    std::size_t num_slices = 0;
    std::uint64_t m0_bits = 0;
    std::uint64_t total_bits = 0;
    std::vector<std::uint64_t> slice_bits;
    std::vector<double> fill_ratios;
    std::uint64_t shift_countdown = 0;
    std::uint64_t total_inserted = 0;
};

// Age-partitioned Bloom filter over a time window.
//
// Slices are ordered newest first. An insert sets one bit in each of the first k
// slices; a query succeeds when k consecutive slices that were updated within
// t_span all hold the element's bit. A shift ages the filter: stale tail slices
// are retired and a fresh slice, sized from the observed insertion rate, is
// prepended. The slice count never drops below k + l.
//
// Not internally synchronized: one writer or any number of readers at a time.
class TimeLimitedFilter {
public:
    TimeLimitedFilter(const FilterParams& params, Clock clock);

    void insert(std::span<const std::byte> element);
    void insert(std::string_view element) { insert(std::as_bytes(std::span{element.data(), element.size()})); }

    [[nodiscard]] bool contains(std::span<const std::byte> element) const;
    [[nodiscard]] bool contains(std::string_view element) const
    {
        return contains(std::as_bytes(std::span{element.data(), element.size()}));
    }

    // Normally triggered by insert(); public so tests can drive aging directly.
    void shift();

    // Insertions the filter can take before the next shift: the smallest
    // remaining_updates() over the insertion region, at least 1.
    [[nodiscard]] std::uint64_t next_generation_size() const;

    [[nodiscard]] double target_generation_size(std::uint64_t inserted, Millis elapsed) const;

    // Capacity and bit count of the slice a shift would prepend now. The slices
    // currently at positions 0..k-2 are evaluated as if already moved up by one.
    [[nodiscard]] SliceSizing new_slice_size(double target_generation) const;

    [[nodiscard]] MetricSnapshot metrics() const;

    [[nodiscard]] std::uint32_t k() const noexcept { return k_; }
    [[nodiscard]] std::uint32_t l() const noexcept { return l_; }
    [[nodiscard]] Millis t_span() const noexcept { return t_span_; }
    [[nodiscard]] std::uint64_t seed() const noexcept { return seed_; }
    [[nodiscard]] const Clock& clock() const noexcept { return clock_; }

    [[nodiscard]] const std::deque<Slice>& slices() const noexcept { return slices_; }
    [[nodiscard]] std::size_t num_slices() const noexcept { return slices_.size(); }
    [[nodiscard]] std::uint64_t shift_countdown() const noexcept { return shift_countdown_; }
    [[nodiscard]] std::uint64_t total_inserted() const noexcept { return total_inserted_; }
    [[nodiscard]] Timestamp last_shift_time() const noexcept { return last_shift_time_; }
    [[nodiscard]] std::uint64_t total_bits() const noexcept;

    // Compares filter state; the clock is not part of it.
    friend bool operator==(const TimeLimitedFilter& a, const TimeLimitedFilter& b);

private:
    struct RestoreTag {};
    TimeLimitedFilter(RestoreTag, Clock clock) : clock_{std::move(clock)} {}

    [[nodiscard]] bool is_fresh(const Slice& s, Timestamp now) const noexcept { return s.last_update + t_span_ >= now; }

    friend std::vector<std::uint8_t> serialize(const TimeLimitedFilter& filter);
    friend TimeLimitedFilter deserialize(std::span<const std::uint8_t> bytes, Clock clock);

    std::uint32_t k_ = 0;
    std::uint32_t l_ = 0;
    Millis t_span_ = 0;
    std::uint64_t seed_ = 0;
    Clock clock_;

    std::deque<Slice> slices_;
    std::uint64_t shift_countdown_ = 0;
    std::uint64_t total_inserted_ = 0;
    Timestamp last_shift_time_;
};

// Binary snapshot. All integers little-endian:
//   "TLBF" | u16 version=1 | u32 k | u32 l | u64 t_span | u64 seed | u32 num_slices
//   | u64 shift_countdown | u64 total_inserted | u64 last_shift_time
// then per slice, newest first:
//   u64 m | u64 n | u64 t | u32 hash_index | ceil(m/8) payload bytes, bit j at byte j/8, bit j%8
[[nodiscard]] std::vector<std::uint8_t> serialize(const TimeLimitedFilter& filter);

// Throws std::invalid_argument on a malformed or inconsistent snapshot.
[[nodiscard]] TimeLimitedFilter deserialize(std::span<const std::uint8_t> bytes, Clock clock);

}  // namespace tlbf
