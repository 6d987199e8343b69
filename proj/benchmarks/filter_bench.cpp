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

#include <benchmark/benchmark.h>

#include <cstdint>
#include <string>
#include <vector>

#include "tlbf/hashing.hpp"
#include "tlbf/time_limited_filter.hpp"

namespace {

std::string key(std::uint64_t i)
{
    std::string out(9, '\0');
    for (int b = 0; b < 8; ++b) {
        out[1 + b] = static_cast<char>(i >> (8 * (7 - b)));
    }
    return out;
}

tlbf::FilterParams params_for(const benchmark::State& state)
{
    tlbf::FilterParams p;
    p.k = static_cast<std::uint32_t>(state.range(0));
    p.l = static_cast<std::uint32_t>(state.range(1));
    p.t_span = 300'000;
    p.initial_capacity = 3000;
    return p;
}

void BM_HashElement(benchmark::State& state)
{
    const std::string k = key(42);
    for (auto _ : state) {
        benchmark::DoNotOptimize(tlbf::hash_element(k, 7));
    }
}
BENCHMARK(BM_HashElement);

void BM_Insert(benchmark::State& state)
{
    tlbf::Clock clock = tlbf::Clock::manual();
    tlbf::TimeLimitedFilter filter{params_for(state), clock};
    std::uint64_t i = 0;
    for (auto _ : state) {
        clock.advance(100);
        filter.insert(key(i++));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_Insert)->Args({4, 3})->Args({8, 56})->Args({11, 46});

void BM_QueryAbsent(benchmark::State& state)
{
    tlbf::Clock clock = tlbf::Clock::manual();
    tlbf::TimeLimitedFilter filter{params_for(state), clock};
    for (std::uint64_t i = 0; i < 10'000; ++i) {
        clock.advance(100);
        filter.insert(key(i));
    }
    std::vector<std::string> probes;
    for (std::uint64_t i = 0; i < 4096; ++i) {
        probes.push_back(key(i + (std::uint64_t{1} << 40)));
    }
    std::size_t n = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(filter.contains(probes[n++ & 4095]));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_QueryAbsent)->Args({4, 3})->Args({8, 56})->Args({11, 46});

void BM_QueryPresent(benchmark::State& state)
{
    tlbf::Clock clock = tlbf::Clock::manual();
    tlbf::TimeLimitedFilter filter{params_for(state), clock};
    for (std::uint64_t i = 0; i < 10'000; ++i) {
        clock.advance(100);
        filter.insert(key(i));
    }
    std::uint64_t n = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(filter.contains(key(9'000 + (n++ % 1000))));
    }
    state.SetItemsProcessed(state.iterations());
}
BENCHMARK(BM_QueryPresent)->Args({4, 3})->Args({8, 56});

}  // namespace

BENCHMARK_MAIN();
