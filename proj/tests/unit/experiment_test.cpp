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

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <gtest/gtest.h>

namespace tlbf::harness {
namespace {

ExperimentConfig small_config()
{
    ExperimentConfig cfg;
    cfg.t_span = 3000;
    cfg.initial_capacity = 30;
    cfg.stream_length = 600;
    cfg.probe_count = 500;
    cfg.sample_every = 50;
    return cfg;
}

TEST(ExperimentTest, ElementNamespacesAreDisjoint)
{
    const std::string s = stream_element(258);
    const std::string p = probe_element(258);
    ASSERT_EQ(s.size(), 9u);
    ASSERT_EQ(p.size(), 9u);
    EXPECT_EQ(s[0], '\x00');
    EXPECT_EQ(p[0], '\x01');
    EXPECT_EQ(s.substr(1), p.substr(1));
    EXPECT_EQ(s, std::string("\x00\x00\x00\x00\x00\x00\x00\x01\x02", 9));
    EXPECT_NE(stream_element(0), probe_element(0));
}

TEST(ExperimentTest, EmptyStream)
{
    ExperimentConfig cfg = small_config();
    cfg.stream_length = 0;
    const auto r = run_experiment(cfg);
    EXPECT_TRUE(r.samples.empty());
    EXPECT_EQ(r.false_negatives, 0u);

    std::ostringstream out;
    write_trace(out, r.samples);
    EXPECT_EQ(out.str(), std::string(kTraceHeader) + "\n");
}

TEST(ExperimentTest, RowsAndSampling)
{
    const ExperimentConfig cfg = small_config();
    const auto r = run_experiment(cfg);
    ASSERT_EQ(r.samples.size(), cfg.stream_length);
    for (std::size_t i = 0; i < r.samples.size(); ++i) {
        const MetricSample& s = r.samples[i];
        EXPECT_EQ(s.insert_index, i);
        EXPECT_EQ(s.sim_time_ms, (i + 1) * cfg.insert_interval);
        EXPECT_GE(s.num_slices, cfg.k + cfg.l);
        ASSERT_TRUE(s.bits_per_element.has_value());
        EXPECT_GT(*s.bits_per_element, 0.0);
        EXPECT_EQ(s.measured_fpr.has_value(), (i + 1) % cfg.sample_every == 0);
        if (s.measured_fpr) {
            EXPECT_GE(*s.measured_fpr, 0.0);
            EXPECT_LE(*s.measured_fpr, 1.0);
        }
    }
    EXPECT_EQ(r.false_negatives, 0u);
    // 30 elements per 3 s window at one per 100 ms
    EXPECT_EQ(r.in_window_checked, 31u);
    EXPECT_FALSE(r.shift_indices.empty());
}

TEST(ExperimentTest, BitsPerElementUsesWindowCount)
{
    ExperimentConfig cfg = small_config();
    cfg.sample_every = 0;
    const auto r = run_experiment(cfg);
    // Once the window is full it holds t_span / interval + 1 elements.
    const MetricSample& last = r.samples.back();
    EXPECT_DOUBLE_EQ(*last.bits_per_element, static_cast<double>(last.total_bits) / 31.0);
    EXPECT_DOUBLE_EQ(*r.samples[0].bits_per_element, static_cast<double>(r.samples[0].total_bits));
}

TEST(ExperimentTest, TraceIsDeterministic)
{
    const ExperimentConfig cfg = small_config();
    std::ostringstream a;
    std::ostringstream b;
    write_trace(a, run_experiment(cfg).samples);
    write_trace(b, run_experiment(cfg).samples);
    EXPECT_EQ(a.str(), b.str());
}

TEST(ExperimentTest, TraceFormat)
{
    std::vector<MetricSample> rows(2);
    rows[0] = MetricSample{0, 100, 7, 1928, 13496, 13496.0, std::nullopt};
    rows[1] = MetricSample{1, 200, 7, 1928, 13496, 6748.0, 0.25};
    std::ostringstream out;
    write_trace(out, rows);
    EXPECT_EQ(out.str(),
              "insert_index,sim_time_ms,num_slices,m0_bits,total_bits,bits_per_element,measured_fpr\n"
              "0,100,7,1928,13496,13496,\n"
              "1,200,7,1928,13496,6748,0.25\n");

    rows[0].bits_per_element.reset();
    std::ostringstream blank;
    write_trace(blank, std::span{rows}.first(1));
    EXPECT_NE(blank.str().find("\n0,100,7,1928,13496,,\n"), std::string::npos);
}

TEST(ExperimentTest, InvalidConfig)
{
    ExperimentConfig cfg = small_config();
    cfg.probe_count = 0;
    EXPECT_THROW(static_cast<void>(run_experiment(cfg)), std::invalid_argument);

    cfg.sample_every = 0;
    EXPECT_NO_THROW(static_cast<void>(run_experiment(cfg)));

    cfg = small_config();
    cfg.k = 0;
    EXPECT_THROW(static_cast<void>(run_experiment(cfg)), std::invalid_argument);
}

TEST(ExperimentTest, UnwritableTrace)
{
    EXPECT_THROW(write_trace("/nonexistent-dir/trace.csv", std::vector<MetricSample>{}), std::runtime_error);
}

TEST(ExperimentTest, TraceFileRoundTrip)
{
    const auto path = std::filesystem::temp_directory_path() / "tlbf_trace_test.csv";
    const auto r = run_experiment(small_config());
    write_trace(path.string(), r.samples);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header, kTraceHeader);
    std::size_t lines = 0;
    for (std::string line; std::getline(in, line);) {
        ++lines;
    }
    EXPECT_EQ(lines, r.samples.size());
    std::filesystem::remove(path);
}

}  // namespace
}  // namespace tlbf::harness
