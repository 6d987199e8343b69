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

#include "tlbf/harness/selftest.hpp"

#include <algorithm>
#include <ostream>
#include <random>
#include <sstream>

#include "tlbf/harness/experiment.hpp"
#include "tlbf/time_limited_filter.hpp"
#include "tlbf/window_oracle.hpp"

namespace tlbf::harness {

namespace {

enum Check : std::size_t {
    kNoFalseNegatives,
    kSliceFloor,
    kHashCycling,
    kShiftPreservation,
    kCapacity,
    kSnapshotRoundTrip,
    kDeterminism,
    kMonotoneStaleness,
    kCheckCount,
};

constexpr const char* kCheckNames[kCheckCount] = {
    "no_false_negatives", "slice_floor",          "hash_cycling", "shift_preservation",
    "capacity",           "snapshot_round_trip", "determinism",  "monotone_staleness",
};

class Recorder {
public:
    Recorder()
    {
        for (std::size_t i = 0; i < kCheckCount; ++i) {
            reports_.push_back(InvariantReport{kCheckNames[i], 0, 0, {}});
        }
    }

    void expect(Check check, bool ok, const std::string& context)
    {
        InvariantReport& r = reports_[check];
        ++r.checks;
        if (!ok && r.violations++ == 0) {
            r.first_violation = context;
        }
    }

    std::vector<InvariantReport> take() { return std::move(reports_); }

private:
    std::vector<InvariantReport> reports_;
};

struct Script {
    FilterParams params;
    std::uint64_t pool = 1;
    std::uint64_t rng_seed = 0;
};

Script make_script(std::mt19937_64& rng)
{
    Script s;
    s.params.k = static_cast<std::uint32_t>(1 + rng() % 6);
    s.params.l = static_cast<std::uint32_t>(1 + rng() % 6);
    s.params.t_span = 20 + rng() % 2000;
    s.params.initial_capacity = 1 + rng() % 300;
    s.params.seed = rng();
    s.pool = 3 * s.params.initial_capacity + 1;
    s.rng_seed = rng();
    return s;
}

bool hash_indices_cycle(const TimeLimitedFilter& f)
{
    const auto& slices = f.slices();
    for (std::size_t start = 0; start + f.k() <= slices.size(); ++start) {
        std::vector<bool> seen(f.k(), false);
        for (std::size_t i = start; i < start + f.k(); ++i) {
            if (seen[slices[i].hash_index]) {
                return false;
            }
            seen[slices[i].hash_index] = true;
        }
    }
    return true;
}

// Survivors of a shift are the old slices moved up one position, untouched.
bool shift_preserved(const std::deque<Slice>& before, const std::deque<Slice>& after)
{
    if (after.size() < 2 || after.size() - 1 > before.size()) {
        return false;
    }
    return std::equal(after.begin() + 1, after.end(), before.begin()) && after.front().inserted == 0 &&
           after.front().bits.popcount() == 0;
}

std::vector<std::uint8_t> run_script(const Script& script, std::uint32_t ops, Recorder* rec)
{
    Clock clock = Clock::manual();
    TimeLimitedFilter filter{script.params, clock};
    ExactWindowOracle oracle{script.params.t_span};
    std::mt19937_64 rng{script.rng_seed};
    const std::size_t floor = static_cast<std::size_t>(script.params.k) + script.params.l;

    auto context = [&](std::uint32_t op) {
        std::ostringstream os;
        os << "k=" << script.params.k << " l=" << script.params.l << " t_span=" << script.params.t_span
           << " op=" << op;
        return os.str();
    };

    for (std::uint32_t op = 0; op < ops; ++op) {
        if (rng() % 10 < 7) {
            if (filter.shift_countdown() == 0) {
                if (rec != nullptr) {
                    bool within = true;
                    for (std::uint32_t i = 0; i < filter.k(); ++i) {
                        const Slice& s = filter.slices()[i];
                        within = within && s.inserted <= s.capacity() + filter.k();
                    }
                    rec->expect(kCapacity, within, context(op));
                    const std::deque<Slice> before = filter.slices();
                    filter.shift();
                    rec->expect(kShiftPreservation, shift_preserved(before, filter.slices()), context(op));
                } else {
                    filter.shift();
                }
            }
            const std::string element = stream_element(rng() % script.pool);
            filter.insert(element);
            oracle.insert(element, clock.now());
        } else {
            clock.advance(rng() % (script.params.t_span / 4 + 1));
        }

        if (rec == nullptr) {
            continue;
        }
        rec->expect(kSliceFloor, filter.num_slices() >= floor, context(op));
        rec->expect(kHashCycling, hash_indices_cycle(filter), context(op));
        if (op % 25 == 0 || op + 1 == ops) {
            bool all_found = true;
            oracle.for_each_in_window(clock.now(), [&](std::string_view element, Timestamp) {
                all_found = all_found && filter.contains(element);
            });
            rec->expect(kNoFalseNegatives, all_found, context(op));
        }
    }

    std::vector<std::uint8_t> bytes = serialize(filter);
    if (rec == nullptr) {
        return bytes;
    }

    const TimeLimitedFilter restored = deserialize(bytes, clock);
    rec->expect(kSnapshotRoundTrip, restored == filter && serialize(restored) == bytes, context(ops));

    // With no further inserts, membership can only expire.
    std::vector<std::string> probes;
    for (std::uint64_t i = 0; i < std::min<std::uint64_t>(script.pool, 200); ++i) {
        probes.push_back(stream_element(i));
    }
    std::vector<bool> alive(probes.size());
    for (std::size_t i = 0; i < probes.size(); ++i) {
        alive[i] = filter.contains(probes[i]);
    }
    bool monotone = true;
    const Millis step = std::max<Millis>(script.params.t_span / 8, 1);
    for (int s = 0; s < 20; ++s) {
        clock.advance(step);
        for (std::size_t i = 0; i < probes.size(); ++i) {
            const bool now_alive = filter.contains(probes[i]);
            monotone = monotone && (alive[i] || !now_alive);
            alive[i] = now_alive;
        }
    }
    rec->expect(kMonotoneStaleness, monotone, context(ops));
    return bytes;
}

}  // namespace

std::vector<InvariantReport> run_selftest(const SelftestOptions& options)
{
    Recorder rec;
    std::mt19937_64 rng{options.seed};
    for (std::uint32_t i = 0; i < options.scripts; ++i) {
        const Script script = make_script(rng);
        const auto first = run_script(script, options.ops_per_script, &rec);
        const auto second = run_script(script, options.ops_per_script, nullptr);
        rec.expect(kDeterminism, first == second, "script " + std::to_string(i));
    }
    return rec.take();
}

void print_reports(std::ostream& out, const std::vector<InvariantReport>& reports)
{
    for (const InvariantReport& r : reports) {
        out << (r.passed() ? "PASS " : "FAIL ") << r.name << " checks=" << r.checks << " violations=" << r.violations;
        if (!r.passed()) {
            out << " first: " << r.first_violation;
        }
        out << '\n';
    }
}

}  // namespace tlbf::harness
