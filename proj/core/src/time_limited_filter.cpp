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

#include "tlbf/time_limited_filter.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "tlbf/analysis.hpp"

namespace tlbf {

void FilterParams::validate() const
{
    if (k < 1) {
        throw std::invalid_argument("FilterParams: k must be >= 1");
    }
    if (l < 1) {
        throw std::invalid_argument("FilterParams: l must be >= 1");
    }
    if (t_span < 1) {
        throw std::invalid_argument("FilterParams: t_span must be >= 1 ms");
    }
    if (initial_capacity < 1) {
        throw std::invalid_argument("FilterParams: initial_capacity must be >= 1");
    }
    if (static_cast<std::uint64_t>(k) + l > std::numeric_limits<std::uint32_t>::max()) {
        throw std::invalid_argument("FilterParams: k + l too large");
    }
}

std::uint64_t Slice::capacity() const
{
    return analysis::slice_capacity(bits.size());
}

TimeLimitedFilter::TimeLimitedFilter(const FilterParams& params, Clock clock) : clock_{std::move(clock)}
{
    params.validate();
    k_ = params.k;
    l_ = params.l;
    t_span_ = params.t_span;
    seed_ = params.seed;

    // Each slice takes insertions for k generations; the window spans l of them.
    const std::uint64_t generation = (params.initial_capacity + l_ - 1) / l_;
    const auto capacity = static_cast<double>(generation) * k_;
    const std::uint64_t bits = std::max<std::uint64_t>(analysis::slice_bits_for_capacity(capacity), k_);

    const Timestamp now = clock_.now();
    for (std::uint32_t p = 0; p < k_ + l_; ++p) {
        slices_.push_back(Slice{BitArray(bits), 0, now, p % k_});
    }
    last_shift_time_ = now;
    shift_countdown_ = next_generation_size();
}

void TimeLimitedFilter::insert(std::span<const std::byte> element)
{
    // The generation closes lazily: the first insert past it shifts, so the
    // shift is stamped after the last write of the closing generation.
    if (shift_countdown_ == 0) {
        shift();
    }
    const HashPair hp = hash_element(element, seed_);
    const Timestamp now = clock_.now();
    for (std::uint32_t i = 0; i < k_; ++i) {
        Slice& s = slices_[i];
        s.bits.set_unchecked(bit_position(hp, s.hash_index, s.size()));
        ++s.inserted;
        s.last_update = std::max(s.last_update, now);
    }
    ++total_inserted_;
    --shift_countdown_;
}

bool TimeLimitedFilter::contains(std::span<const std::byte> element) const
{
    const HashPair hp = hash_element(element, seed_);
    const Timestamp now = clock_.now();
    const auto k = static_cast<std::int64_t>(k_);

    // Scan upward from the oldest k-run; on a miss jump down k positions,
    // carrying the matches already seen above the jump target.
    std::int64_t i = static_cast<std::int64_t>(slices_.size()) - k;
    std::int64_t prev = 0;
    std::int64_t run = 0;
    while (i >= 0) {
        const Slice& s = slices_[static_cast<std::size_t>(i)];
        if (is_fresh(s, now) && s.bits.test_unchecked(bit_position(hp, s.hash_index, s.size()))) {
            ++run;
            ++i;
            if (prev + run == k) {
                return true;
            }
        } else {
            i -= k;
            prev = run;
            run = 0;
        }
    }
    return false;
}

void TimeLimitedFilter::shift()
{
    const Timestamp now = clock_.now();
    const std::uint64_t generation = std::max<std::uint64_t>(slices_.front().inserted, 1);
    const double target = target_generation_size(generation, now.ms - std::min(now.ms, last_shift_time_.ms));

    const std::size_t floor = static_cast<std::size_t>(k_) + l_;
    while (slices_.size() >= floor && slices_.back().last_update + t_span_ < now) {
        slices_.pop_back();
    }

    const SliceSizing sizing = new_slice_size(target);
    const std::uint32_t hash_index = (slices_.front().hash_index + k_ - 1) % k_;
    slices_.push_front(Slice{BitArray(sizing.bits), 0, now, hash_index});

    last_shift_time_ = now;
    shift_countdown_ = next_generation_size();
}

std::uint64_t TimeLimitedFilter::next_generation_size() const
{
    std::uint64_t g = std::numeric_limits<std::uint64_t>::max();
    for (std::uint32_t i = 0; i < k_; ++i) {
        g = std::min(g, analysis::remaining_updates(slices_[i].size(), slices_[i].inserted, i, k_));
    }
    return std::max<std::uint64_t>(g, 1);
}

double TimeLimitedFilter::target_generation_size(std::uint64_t inserted, Millis elapsed) const
{
    return analysis::target_generation_size(inserted, t_span_, elapsed, l_);
}

SliceSizing TimeLimitedFilter::new_slice_size(double target_generation) const
{
    double capacity = static_cast<double>(k_) * target_generation;
    if (k_ > 1) {
        // Position p after the shift holds the slice now at p - 1.
        std::uint32_t binding = 1;
        std::uint64_t least = std::numeric_limits<std::uint64_t>::max();
        for (std::uint32_t p = 1; p < k_; ++p) {
            const Slice& s = slices_[p - 1];
            const std::uint64_t u = analysis::remaining_updates(s.size(), s.inserted, p, k_);
            if (u < least) {
                least = u;
                binding = p;
            }
        }
        // Until the new slice reaches the binding position the stream is capped by
        // that slice; afterwards it runs at the target rate.
        const double count = static_cast<double>(least) * static_cast<double>(k_ - binding);
        capacity = count + static_cast<double>(binding) * target_generation;
    }

    SliceSizing out;
    out.capacity = static_cast<std::uint64_t>(std::ceil(capacity));
    out.bits = std::max<std::uint64_t>(analysis::slice_bits_for_capacity(static_cast<double>(out.capacity)),
                                       std::max<std::uint64_t>(k_, 1));
    return out;
}

MetricSnapshot TimeLimitedFilter::metrics() const
{
    MetricSnapshot m;
    m.num_slices = slices_.size();
    m.m0_bits = slices_.front().size();
    m.slice_bits.reserve(slices_.size());
    m.fill_ratios.reserve(slices_.size());
    for (const Slice& s : slices_) {
        m.slice_bits.push_back(s.size());
        m.fill_ratios.push_back(s.bits.fill_ratio());
    }
    m.total_bits = std::accumulate(m.slice_bits.begin(), m.slice_bits.end(), std::uint64_t{0});
    m.shift_countdown = shift_countdown_;
    m.total_inserted = total_inserted_;
    return m;
}

std::uint64_t TimeLimitedFilter::total_bits() const noexcept
{
    std::uint64_t total = 0;
    for (const Slice& s : slices_) {
        total += s.size();
    }
    return total;
}

bool operator==(const TimeLimitedFilter& a, const TimeLimitedFilter& b)
{
    return a.k_ == b.k_ && a.l_ == b.l_ && a.t_span_ == b.t_span_ && a.seed_ == b.seed_ && a.slices_ == b.slices_ &&
           a.shift_countdown_ == b.shift_countdown_ && a.total_inserted_ == b.total_inserted_ &&
           a.last_shift_time_ == b.last_shift_time_;
}

}  // namespace tlbf
