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

#include "tlbf/window_oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace tlbf {

namespace {

std::string_view as_chars(std::span<const std::byte> bytes)
{
    return {reinterpret_cast<const char*>(bytes.data()), bytes.size()};
}

}  // namespace

ExactWindowOracle::ExactWindowOracle(Millis t_span) : t_span_{t_span}
{
    if (t_span == 0) {
        throw std::invalid_argument("ExactWindowOracle: t_span must be positive");
    }
}

void ExactWindowOracle::insert(std::string_view element, Timestamp t)
{
    auto [it, inserted] = last_seen_.try_emplace(std::string{element}, t);
    if (!inserted) {
        if (it->second == t) {
            return;
        }
        auto slot = by_time_.find(it->second.ms);
        if (--slot->second == 0) {
            by_time_.erase(slot);
        }
        it->second = std::max(it->second, t);
    }
    ++by_time_[it->second.ms];
}

void ExactWindowOracle::insert(std::span<const std::byte> element, Timestamp t)
{
    insert(as_chars(element), t);
}

bool ExactWindowOracle::contains(std::string_view element, Timestamp now) const
{
    const auto t = last_seen(element);
    return t.has_value() && in_window(*t, now);
}

bool ExactWindowOracle::contains(std::span<const std::byte> element, Timestamp now) const
{
    return contains(as_chars(element), now);
}

std::optional<Timestamp> ExactWindowOracle::last_seen(std::string_view element) const
{
    const auto it = last_seen_.find(element);
    if (it == last_seen_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::size_t ExactWindowOracle::count_in_window(Timestamp now) const
{
    const std::uint64_t cutoff = now.ms > t_span_ ? now.ms - t_span_ : 0;
    std::size_t count = 0;
    for (auto it = by_time_.lower_bound(cutoff); it != by_time_.end(); ++it) {
        count += it->second;
    }
    return count;
}

}  // namespace tlbf
