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

#include "tlbf/harness/experiment.hpp"

#include <charconv>
#include <chrono>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "tlbf/time_limited_filter.hpp"
#include "tlbf/window_oracle.hpp"

namespace tlbf::harness {

namespace {

std::string tagged_element(std::uint8_t tag, std::uint64_t index)
{
    std::string out(9, '\0');
    out[0] = static_cast<char>(tag);
    for (int i = 0; i < 8; ++i) {
        out[1 + i] = static_cast<char>(index >> (8 * (7 - i)));
    }
    return out;
}

void put_double(std::ostream& out, double v)
{
    char buf[32];
    const auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
    out.write(buf, end - buf);
}

}  // namespace

void ExperimentConfig::validate() const
{
    FilterParams{k, l, t_span, initial_capacity, seed}.validate();
    if (sample_every > 0 && probe_count == 0) {
        throw std::invalid_argument("ExperimentConfig: probe_count must be positive when FPR sampling is enabled");
    }
}

std::string stream_element(std::uint64_t index)
{
    return tagged_element(0x00, index);
}

std::string probe_element(std::uint64_t index)
{
    return tagged_element(0x01, index);
}

ExperimentResult run_experiment(const ExperimentConfig& cfg)
{
    cfg.validate();

    Clock clock = cfg.wall_clock ? Clock::system() : Clock::manual();
    const Timestamp start = clock.now();
    TimeLimitedFilter filter{FilterParams{cfg.k, cfg.l, cfg.t_span, cfg.initial_capacity, cfg.seed}, clock};
    ExactWindowOracle oracle{cfg.t_span};

    ExperimentResult result;
    result.construction_m0_bits = filter.slices().front().size();
    result.samples.reserve(cfg.stream_length);

    std::uint64_t next_probe = 0;
    for (std::uint64_t i = 0; i < cfg.stream_length; ++i) {
        if (cfg.wall_clock) {
            std::this_thread::sleep_for(std::chrono::milliseconds(cfg.insert_interval));
        } else {
            clock.advance(cfg.insert_interval);
        }
        const Timestamp now = clock.now();
        const std::string element = stream_element(i);
        if (filter.shift_countdown() == 0) {
            result.shift_indices.push_back(i);
        }
        filter.insert(element);
        oracle.insert(element, now);

        MetricSample row;
        row.insert_index = i;
        row.sim_time_ms = now.ms - start.ms;
        row.num_slices = filter.num_slices();
        row.m0_bits = filter.slices().front().size();
        row.total_bits = filter.total_bits();
        if (const auto live = oracle.count_in_window(now); live > 0) {
            row.bits_per_element = static_cast<double>(row.total_bits) / static_cast<double>(live);
        }
        if (cfg.sample_every > 0 && (i + 1) % cfg.sample_every == 0) {
            std::uint64_t positives = 0;
            for (std::uint64_t p = 0; p < cfg.probe_count; ++p) {
                positives += filter.contains(probe_element(next_probe++)) ? 1 : 0;
            }
            row.measured_fpr = static_cast<double>(positives) / static_cast<double>(cfg.probe_count);
        }
        result.samples.push_back(row);
    }

    const Timestamp end = clock.now();
    oracle.for_each_in_window(end, [&](std::string_view element, Timestamp) {
        ++result.in_window_checked;
        if (!filter.contains(element)) {
            ++result.false_negatives;
        }
    });
    return result;
}

void write_trace(std::ostream& out, std::span<const MetricSample> samples)
{
    out << kTraceHeader << '\n';
    for (const MetricSample& s : samples) {
        out << s.insert_index << ',' << s.sim_time_ms << ',' << s.num_slices << ',' << s.m0_bits << ','
            << s.total_bits << ',';
        if (s.bits_per_element) {
            put_double(out, *s.bits_per_element);
        }
        out << ',';
        if (s.measured_fpr) {
            put_double(out, *s.measured_fpr);
        }
        out << '\n';
    }
}

void write_trace(const std::string& path, std::span<const MetricSample> samples)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open trace file for writing: " + path);
    }
    write_trace(out, samples);
    out.flush();
    if (!out) {
        throw std::runtime_error("failed writing trace file: " + path);
    }
}

}  // namespace tlbf::harness
