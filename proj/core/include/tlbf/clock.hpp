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

#include <compare>
#include <cstdint>
#include <memory>
#include <stdexcept>

namespace tlbf {

// Duration in milliseconds.
using Millis = std::uint64_t;

// Milliseconds since an arbitrary epoch.
struct Timestamp {
    std::uint64_t ms = 0;

    friend constexpr auto operator<=>(Timestamp, Timestamp) = default;
};

constexpr Timestamp operator+(Timestamp t, Millis d) noexcept { return Timestamp{t.ms + d}; }

// Thrown when an operation is not supported by the clock variant.
class UnsupportedOperation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

// Time source handle. Copies share state, so a test can keep a manual clock
// and advance it while a filter holds another copy.
//
// Both variants are monotone: the system clock clamps wall-time regressions to
// the last value it returned.
class Clock {
public:
    enum class Kind { system, manual };

    [[nodiscard]] static Clock system();
    [[nodiscard]] static Clock manual(Timestamp start = {});

    [[nodiscard]] Kind kind() const noexcept { return kind_; }

    [[nodiscard]] Timestamp now() const;

    // Manual clocks only; throws UnsupportedOperation on the system clock.
    void advance(Millis delta);

private:
    struct State;

    Clock(Kind kind, std::shared_ptr<State> state) : kind_{kind}, state_{std::move(state)} {}

    Kind kind_;
    std::shared_ptr<State> state_;
};

}  // namespace tlbf
