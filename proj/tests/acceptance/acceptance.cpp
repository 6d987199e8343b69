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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits nonzero
// if any of them fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "tlbf/analysis.hpp"
#include "tlbf/clock.hpp"
#include "tlbf/harness/experiment.hpp"
#include "tlbf/harness/selftest.hpp"
#include "tlbf/harness/sweep.hpp"
#include "tlbf/time_limited_filter.hpp"
#include "tlbf/window_oracle.hpp"

namespace {

using namespace tlbf;
using harness::ExperimentConfig;
using harness::ExperimentResult;

struct Verdict {
    bool ok = false;
    std::string detail;
};

using Clk = std::chrono::steady_clock;

double seconds_since(Clk::time_point start)
{
    return std::chrono::duration<double>(Clk::now() - start).count();
}

std::string fmt(const char* format, auto... args)
{
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

// The run most criteria share: k=4, l=3, 300 s window, one insert per 100 ms.
ExperimentConfig reference_run(std::uint64_t capacity, bool probe)
{
    ExperimentConfig cfg;
    cfg.k = 4;
    cfg.l = 3;
    cfg.initial_capacity = capacity;
    cfg.t_span = 300'000;
    cfg.insert_interval = 100;
    cfg.stream_length = 10'000;
    cfg.probe_count = 10'000;
    cfg.sample_every = probe ? 100 : 0;
    return cfg;
}

double mean_bits_final_tenth(const ExperimentResult& r)
{
    const std::size_t from = r.samples.size() - r.samples.size() / 10;
    double sum = 0.0;
    for (std::size_t i = from; i < r.samples.size(); ++i) {
        sum += r.samples[i].bits_per_element.value_or(0.0);
    }
    return sum / static_cast<double>(r.samples.size() - from);
}

// 1. Randomized insert / advance scripts never lose an in-window element.
Verdict no_false_negatives()
{
    const auto start = Clk::now();
    std::uint64_t queries = 0;
    std::uint64_t violations = 0;
    std::string first;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        std::mt19937_64 rng{seed};
        auto pick = [&rng](std::uint64_t lo, std::uint64_t hi) {
            return std::uniform_int_distribution<std::uint64_t>{lo, hi}(rng);
        };
        FilterParams params;
        params.k = static_cast<std::uint32_t>(pick(1, 8));
        params.l = static_cast<std::uint32_t>(pick(1, 8));
        params.t_span = pick(500, 20'000);
        params.initial_capacity = pick(1, 3000);
        params.seed = seed;
        Clock clock = Clock::manual(Timestamp{pick(0, 1'000'000)});
        TimeLimitedFilter filter{params, clock};
        ExactWindowOracle oracle{params.t_span};

        for (int op = 0; op < 10'000; ++op) {
            const std::uint64_t roll = pick(0, 99);
            if (roll < 75) {
                const std::string e = "el-" + std::to_string(pick(0, 199));
                filter.insert(e);
                oracle.insert(e, clock.now());
            } else if (roll < 99) {
                clock.advance(pick(0, params.t_span / 10));
            } else {
                clock.advance(pick(params.t_span / 2, params.t_span * 2));
            }
            oracle.for_each_in_window(clock.now(), [&](std::string_view e, Timestamp) {
                ++queries;
                if (!filter.contains(e)) {
                    if (violations++ == 0) {
                        first = fmt(" first: seed=%llu op=%d", static_cast<unsigned long long>(seed), op);
                    }
                }
            });
        }
    }
    const double secs = seconds_since(start);
    return {violations == 0 && secs < 30.0,
            fmt("50 scripts, %llu in-window queries, %llu false negatives, %.1f s (limit 30 s)%s",
                static_cast<unsigned long long>(queries), static_cast<unsigned long long>(violations), secs,
                first.c_str())};
}

// 2. Measured FPR settles near the configured rate once k + l shifts have passed.
Verdict fpr_stabilizes(const ExperimentResult& r, double secs)
{
    constexpr std::uint64_t warmup = 7;
    if (r.shift_indices.size() < warmup) {
        return {false, fmt("only %zu shifts happened", r.shift_indices.size())};
    }
    const std::uint64_t from = r.shift_indices[warmup - 1];
    double sum = 0.0;
    double worst = 0.0;
    std::size_t n = 0;
    for (const auto& s : r.samples) {
        if (s.insert_index >= from && s.measured_fpr) {
            sum += *s.measured_fpr;
            worst = std::max(worst, *s.measured_fpr);
            ++n;
        }
    }
    const double mean = n == 0 ? 0.0 : sum / static_cast<double>(n);
    const bool ok = n > 0 && mean >= 0.03 && mean <= 0.13 && worst <= 0.15 && secs < 60.0 && r.false_negatives == 0;
    return {ok, fmt("%zu samples after shift %llu: mean %.4f in [0.03, 0.13], max %.4f <= 0.15, %.1f s", n,
                    static_cast<unsigned long long>(warmup), mean, worst, secs)};
}

// 3. Steady bits per element for the base configuration, and monotone growth
// with precision across the sweep.
Verdict bits_per_element(const ExperimentResult& base)
{
    if (base.samples.empty()) {
        return {false, "base run produced no samples"};
    }
    const auto start = Clk::now();
    const double base_bpe = mean_bits_final_tenth(base);
    bool ok = base_bpe >= 8.0 && base_bpe <= 15.0;

    ExperimentConfig sweep_cfg = reference_run(1000, false);
    std::string chain;
    double prev = 0.0;
    for (const double rate : harness::default_error_rates()) {
        const harness::SweepEntry entry = harness::select_configuration(rate);
        const harness::SweepOutcome out = harness::run_sweep_entry(entry, sweep_cfg);
        ok = ok && out.mean_bits_per_element > prev && out.false_negatives == 0;
        prev = out.mean_bits_per_element;
        chain += fmt(" %g:(%u,%u)=%.2f", rate, entry.k, entry.l, out.mean_bits_per_element);
    }
    const double secs = seconds_since(start);
    ok = ok && secs < 120.0;
    return {ok, fmt("k=4 l=3: %.2f in [8, 15]; sweep%s; %.1f s", base_bpe, chain.c_str(), secs)};
}

// 4. An under-dimensioned filter grows, then returns to k + l slices.
Verdict under_dimensioned(const ExperimentResult& r)
{
    if (r.samples.empty()) {
        return {false, "base run produced no samples"};
    }
    const std::size_t tail = r.samples.size() - r.samples.size() / 10;
    std::uint64_t peak = 0;
    for (std::size_t i = 0; i < tail; ++i) {
        peak = std::max(peak, r.samples[i].num_slices);
    }
    bool settled = true;
    std::uint64_t lo = UINT64_MAX;
    std::uint64_t hi = 0;
    for (std::size_t i = tail; i < r.samples.size(); ++i) {
        settled = settled && r.samples[i].num_slices == 7;
        lo = std::min(lo, r.samples[i].m0_bits);
        hi = std::max(hi, r.samples[i].m0_bits);
    }
    // m0 never falls back by more than a bit of rounding while it grows.
    bool grows = r.samples.back().m0_bits > r.construction_m0_bits;
    std::uint64_t running = r.construction_m0_bits;
    for (const auto& s : r.samples) {
        grows = grows && s.m0_bits + 1 >= running;
        running = std::max(running, s.m0_bits);
    }
    const bool ok = peak > 7 && settled && grows && hi - lo <= 1;
    return {ok, fmt("peak %llu slices > 7, final 10%% at 7: %s, m0 %llu -> [%llu, %llu]",
                    static_cast<unsigned long long>(peak), settled ? "yes" : "no",
                    static_cast<unsigned long long>(r.construction_m0_bits), static_cast<unsigned long long>(lo),
                    static_cast<unsigned long long>(hi))};
}

// 5. An over-dimensioned filter keeps k + l slices and shrinks its new slice.
Verdict over_dimensioned()
{
    const ExperimentResult r = harness::run_experiment(reference_run(10'000, false));
    std::uint64_t lo = UINT64_MAX;
    std::uint64_t hi = 0;
    for (const auto& s : r.samples) {
        lo = std::min(lo, s.num_slices);
        hi = std::max(hi, s.num_slices);
    }
    if (r.shift_indices.empty()) {
        return {false, "no shift happened"};
    }
    const std::uint64_t after = r.samples[r.shift_indices.front()].m0_bits;
    const bool ok = lo == 7 && hi == 7 && after < r.construction_m0_bits;
    return {ok, fmt("slices in [%llu, %llu], m0 %llu at construction -> %llu after first shift",
                    static_cast<unsigned long long>(lo), static_cast<unsigned long long>(hi),
                    static_cast<unsigned long long>(r.construction_m0_bits), static_cast<unsigned long long>(after))};
}

// 6. Fill ratios just before a shift match the steady-state profile.
Verdict steady_fill()
{
    double worst = 0.0;
    std::string where;
    bool ok = true;
    for (const auto [k, l] : {std::pair{4u, 3u}, std::pair{5u, 7u}}) {
        FilterParams params;
        params.k = k;
        params.l = l;
        params.t_span = 300'000;
        params.initial_capacity = 3000;  // matches the stream rate
        Clock clock = Clock::manual();
        TimeLimitedFilter filter{params, clock};

        std::vector<std::vector<double>> before_shift;
        for (std::uint64_t i = 0; i < 60'000; ++i) {
            clock.advance(100);
            if (filter.shift_countdown() == 0) {
                before_shift.push_back(filter.metrics().fill_ratios);
            }
            filter.insert(harness::stream_element(i));
        }
        if (before_shift.size() < 3 * (k + l) + 10) {
            return {false, fmt("(%u,%u): only %zu shifts", k, l, before_shift.size())};
        }
        for (std::size_t s = before_shift.size() - 10; s < before_shift.size(); ++s) {
            const auto& fills = before_shift[s];
            ok = ok && fills.size() == k + l;
            for (std::uint32_t p = 0; p < fills.size(); ++p) {
                const double err = std::abs(fills[p] - analysis::steady_state_fill_ratio(p, k));
                if (err > worst) {
                    worst = err;
                    where = fmt("(%u,%u) position %u", k, l, p);
                }
            }
        }
    }
    ok = ok && worst <= 0.05;
    return {ok, fmt("last 10 shifts of (4,3) and (5,7): max |observed - expected| %.4f <= 0.05 at %s", worst,
                    where.c_str())};
}

// 7. Closed forms against long-double recomputations on random inputs.
Verdict formulas()
{
    constexpr long double ln2 = 0.693147180559945309417232121458176568L;
    std::mt19937_64 rng{20260415};
    auto pick = [&rng](std::uint64_t lo, std::uint64_t hi) {
        return std::uniform_int_distribution<std::uint64_t>{lo, hi}(rng);
    };
    auto rel = [](double got, long double want) {
        return want == 0.0L ? std::abs(static_cast<long double>(got))
                            : std::abs((static_cast<long double>(got) - want) / want);
    };
    double worst_real = 0.0;
    std::uint64_t int_mismatches = 0;

    for (int i = 0; i < 100; ++i) {  // fill ratio after n inserts
        const std::uint64_t m = pick(1, 1'000'000);
        const std::uint64_t n = pick(1, 4 * m);
        const long double y = static_cast<long double>(n) * (std::log(static_cast<long double>(m - 1)) -
                                                             std::log(static_cast<long double>(m)));
        worst_real = std::max(worst_real, static_cast<double>(rel(analysis::expected_fill_ratio(n, m),
                                                                  1.0L - std::exp(y))));
    }
    for (int i = 0; i < 100; ++i) {  // steady-state profile
        const auto k = static_cast<std::uint32_t>(pick(1, 64));
        const auto p = static_cast<std::uint32_t>(pick(0, 2 * k));
        const long double want =
            p >= k ? 0.5L : 1.0L - std::pow(2.0L, -static_cast<long double>(p + 1) / static_cast<long double>(k));
        worst_real = std::max(worst_real, static_cast<double>(rel(analysis::steady_state_fill_ratio(p, k), want)));
    }
    for (int i = 0; i < 100; ++i) {  // remaining updates
        const auto k = static_cast<std::uint32_t>(pick(1, 32));
        const auto p = static_cast<std::uint32_t>(pick(0, k - 1));
        const std::uint64_t m = pick(1, 10'000'000);
        const std::uint64_t n = pick(0, m);
        const long double head = static_cast<long double>(m) * ln2 - static_cast<long double>(n);
        const std::uint64_t want =
            head <= 0.0L ? 0 : static_cast<std::uint64_t>(std::floor(head / static_cast<long double>(k - p)));
        int_mismatches += analysis::remaining_updates(m, n, p, k) != want;
    }
    for (int i = 0; i < 100; ++i) {  // target generation size
        const std::uint64_t g = pick(1, 1'000'000);
        const std::uint64_t span = pick(1, 86'400'000);
        const std::uint64_t elapsed = pick(0, 86'400'000);
        const auto l = static_cast<std::uint32_t>(pick(1, 64));
        const long double want = static_cast<long double>(g) * static_cast<long double>(span) /
                                 (static_cast<long double>(std::max<std::uint64_t>(elapsed, 1)) * l);
        worst_real =
            std::max(worst_real, static_cast<double>(rel(analysis::target_generation_size(g, span, elapsed, l), want)));
    }
    for (int i = 0; i < 100; ++i) {  // slice size for a capacity
        const std::uint64_t c = pick(1, 100'000'000);
        const auto want = static_cast<std::uint64_t>(std::ceil(static_cast<long double>(c) / ln2));
        int_mismatches += analysis::slice_bits_for_capacity(static_cast<double>(c)) != want;
    }
    const bool ok = int_mismatches == 0 && worst_real < 1e-9;
    return {ok, fmt("5 formulas x 100 inputs: %llu integer mismatches, max relative error %.3g < 1e-9",
                    static_cast<unsigned long long>(int_mismatches), worst_real)};
}

// 8. Structural invariants over random configurations.
Verdict invariants()
{
    const auto reports = harness::run_selftest(harness::SelftestOptions{8, 1000, 2000});
    bool ok = true;
    std::string detail = "1000 configurations:";
    for (const auto& r : reports) {
        ok = ok && r.passed();
        detail += fmt(" %s=%llu/%llu", r.name.c_str(), static_cast<unsigned long long>(r.violations),
                      static_cast<unsigned long long>(r.checks));
        if (!r.passed()) {
            detail += " (" + r.first_violation + ")";
        }
    }
    return {ok, detail};
}

}  // namespace

int main()
{
    int failures = 0;
    auto report = [&failures](int id, const char* name, const std::function<Verdict()>& check) {
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("threw: ") + e.what()};
        }
        failures += v.ok ? 0 : 1;
        std::printf("%s [%d] %s: %s\n", v.ok ? "PASS" : "FAIL", id, name, v.detail.c_str());
        std::fflush(stdout);
    };

    report(1, "no false negatives", no_false_negatives);

    const auto start = Clk::now();
    ExperimentResult under;
    double under_secs = 0.0;
    try {
        under = harness::run_experiment(reference_run(1000, true));
        under_secs = seconds_since(start);
    } catch (const std::exception& e) {
        std::printf("base run threw: %s\n", e.what());
    }
    report(2, "fpr stabilization", [&] { return fpr_stabilizes(under, under_secs); });
    report(3, "bits per element", [&] { return bits_per_element(under); });
    report(4, "under-dimensioned dynamics", [&] { return under_dimensioned(under); });
    report(5, "over-dimensioned dynamics", over_dimensioned);
    report(6, "steady-state fill ratios", steady_fill);
    report(7, "formula oracles", formulas);
    report(8, "structural invariants", invariants);

    std::printf("%d of 8 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}
