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
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>

#include "tlbf/clock.hpp"

namespace tlbf {

// Exact time-windowed set: remembers the latest insertion time of every
// element ever inserted. Ground truth for the filter's no-false-negative
// guarantee and for classifying its positives.
class ExactWindowOracle {
public:
    explicit ExactWindowOracle(Millis t_span);

    // Insertion times must be non-decreasing across calls.
    void insert(std::string_view element, Timestamp t);
    void insert(std::span<const std::byte> element, Timestamp t);

    // True iff element was inserted at some time >= now - t_span.
    [[nodiscard]] bool contains(std::string_view element, Timestamp now) const;
    [[nodiscard]] bool contains(std::span<const std::byte> element, Timestamp now) const;

    [[nodiscard]] std::optional<Timestamp> last_seen(std::string_view element) const;

    // Number of distinct elements currently inside the window.
    [[nodiscard]] std::size_t count_in_window(Timestamp now) const;

    [[nodiscard]] std::size_t size() const noexcept { return last_seen_.size(); }
    [[nodiscard]] Millis t_span() const noexcept { return t_span_; }

    // Calls fn(element, last_seen) for every element inside the window.
    template <typename Fn>
    void for_each_in_window(Timestamp now, Fn&& fn) const
    {
        for (const auto& [element, t] : last_seen_) {
            if (in_window(t, now)) {
                fn(std::string_view{element}, t);
            }
        }
    }

private:
    struct StringHash {
        using is_transparent = void;
        std::size_t operator()(std::string_view s) const noexcept { return std::hash<std::string_view>{}(s); }
    };

    [[nodiscard]] bool in_window(Timestamp t, Timestamp now) const noexcept { return t + t_span_ >= now; }

    Millis t_span_;
    std::unordered_map<std::string, Timestamp, StringHash, std::equal_to<>> last_seen_;
    // last-seen time -> number of elements whose latest insertion is at that time
    std::map<std::uint64_t, std::size_t> by_time_;
};

}  // namespace tlbf
