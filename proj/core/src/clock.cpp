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

#include "tlbf/clock.hpp"

#include <atomic>
#include <chrono>

namespace tlbf {

struct Clock::State {
    std::atomic<std::uint64_t> value{0};
};

Clock Clock::system()
{
    return Clock{Kind::system, std::make_shared<State>()};
}

Clock Clock::manual(Timestamp start)
{
    auto state = std::make_shared<State>();
    state->value.store(start.ms);
    return Clock{Kind::manual, std::move(state)};
}

Timestamp Clock::now() const
{
    if (kind_ == Kind::manual) {
        return Timestamp{state_->value.load(std::memory_order_acquire)};
    }

    const auto wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::system_clock::now().time_since_epoch())
                          .count();
    const auto reading = static_cast<std::uint64_t>(wall < 0 ? 0 : wall);

    // Clamp regressions: publish max(last, reading).
    std::uint64_t last = state_->value.load(std::memory_order_acquire);
    while (reading > last && !state_->value.compare_exchange_weak(last, reading, std::memory_order_acq_rel)) {
    }
    return Timestamp{reading > last ? reading : last};
}

void Clock::advance(Millis delta)
{
    if (kind_ != Kind::manual) {
        throw UnsupportedOperation("Clock::advance: system clock cannot be advanced");
    }
    state_->value.fetch_add(delta, std::memory_order_acq_rel);
}

}  // namespace tlbf
