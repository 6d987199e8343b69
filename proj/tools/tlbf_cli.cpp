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

// tlbf: experiment runner for the time-limited Bloom filter.
//
//   tlbf run      replay a synthetic stream and write a per-insertion trace
//   tlbf fpr      sweep error-rate configurations and summarize FPR and memory
//   tlbf selftest randomized invariant checks at desk scale

#include <algorithm>
#include <cstdint>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "tlbf/harness/experiment.hpp"
#include "tlbf/harness/selftest.hpp"
#include "tlbf/harness/sweep.hpp"

namespace {

constexpr int kExitUsage = 2;

// Empty cell for a missing value, as in the trace files.
std::string cell(const std::optional<double>& v)
{
    if (!v) {
        return {};
    }
    std::ostringstream s;
    s << *v;
    return s.str();
}

using tlbf::harness::ExperimentConfig;

std::string trim(const std::string& s)
{
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string::npos) {
        return {};
    }
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

// Reads a flat key=value file into "--key=value" arguments. Blank lines and
// lines starting with '#' are skipped.
std::vector<std::string> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw std::invalid_argument("cannot read config file: " + path);
    }
    std::vector<std::string> out;
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        line = trim(line);
        if (line.empty() || line.front() == '#') {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        out.push_back("--" + trim(line.substr(0, eq)) + "=" + trim(line.substr(eq + 1)));
    }
    return out;
}

// Splices "--config FILE" (or "--config=FILE") into the argument list right
// after the subcommand, so explicit flags given on the command line win.
std::vector<std::string> expand_config(std::vector<std::string> args)
{
    for (std::size_t i = 0; i < args.size(); ++i) {
        std::string path;
        std::size_t consumed = 0;
        if (args[i] == "--config" && i + 1 < args.size()) {
            path = args[i + 1];
            consumed = 2;
        } else if (args[i].rfind("--config=", 0) == 0) {
            path = args[i].substr(9);
            consumed = 1;
        } else {
            continue;
        }
        const auto entries = read_config_file(path);
        args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + consumed));
        args.insert(args.begin() + 1, entries.begin(), entries.end());
        break;
    }
    return args;
}

void add_stream_options(CLI::App& cmd, ExperimentConfig& cfg)
{
    cmd.add_option("--capacity,--initial-capacity", cfg.initial_capacity, "Initial capacity (elements per t_span)")
        ->capture_default_str();
    cmd.add_option("--t-span-ms,--t-span", cfg.t_span, "Guaranteed membership span in ms")->capture_default_str();
    cmd.add_option("--interval-ms,--insert-interval", cfg.insert_interval, "Simulated time between insertions in ms")
        ->capture_default_str();
    cmd.add_option("--n,--stream-length", cfg.stream_length, "Number of distinct elements to insert")
        ->capture_default_str();
    cmd.add_option("--probes,--probe-count", cfg.probe_count, "Never-inserted probes per FPR sample")
        ->capture_default_str();
    cmd.add_option("--sample-every", cfg.sample_every, "Insertions between FPR samples (0 disables)")
        ->capture_default_str();
    cmd.add_option("--seed", cfg.seed, "Hash seed")->capture_default_str();
    cmd.add_flag("--wall-clock", cfg.wall_clock, "Use the system clock and sleep between insertions");
}

int run_command(const ExperimentConfig& cfg, const std::string& out_path)
{
    const auto result = tlbf::harness::run_experiment(cfg);
    if (out_path == "-") {
        tlbf::harness::write_trace(std::cout, result.samples);
    } else {
        tlbf::harness::write_trace(out_path, result.samples);
    }
    std::cerr << "rows=" << result.samples.size() << " shifts=" << result.shift_indices.size()
              << " final_window_checked=" << result.in_window_checked
              << " false_negatives=" << result.false_negatives << '\n';
    return result.false_negatives == 0 ? 0 : 1;
}

int fpr_command(const ExperimentConfig& base, const std::vector<double>& error_rates, const std::string& out_path)
{
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (out_path != "-") {
        file.open(out_path, std::ios::trunc);
        if (!file) {
            throw std::runtime_error("cannot open output file: " + out_path);
        }
        out = &file;
    }

    *out << "error_rate,k,l,expected_fpr,mean_fpr,max_fpr,expected_bits_per_element,bits_per_element,final_slices,"
            "false_negatives\n";
    std::uint64_t false_negatives = 0;
    for (const double rate : error_rates) {
        const auto entry = tlbf::harness::select_configuration(rate);
        const auto o = tlbf::harness::run_sweep_entry(entry, base);
        false_negatives += o.false_negatives;
        *out << rate << ',' << entry.k << ',' << entry.l << ',' << entry.expected_fpr << ',' << cell(o.mean_fpr) << ','
             << cell(o.max_fpr) << ',' << entry.expected_bits_per_element << ',' << o.mean_bits_per_element << ','
             << o.final_slices << ',' << o.false_negatives << '\n';
    }
    return false_negatives == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Time-limited Bloom filter experiment runner", "tlbf"};
    app.require_subcommand(1);

    ExperimentConfig run_cfg;
    std::string run_out = "trace.csv";
    auto* run = app.add_subcommand("run", "Replay a synthetic stream and write a per-insertion trace");
    run->add_option("--k", run_cfg.k, "Slices touched per insertion")->capture_default_str();
    run->add_option("--l", run_cfg.l, "Window depth in generations")->capture_default_str();
    add_stream_options(*run, run_cfg);
    run->add_option("--out", run_out, "Trace file ('-' for stdout)")->capture_default_str();
    std::string config_path;  // consumed by expand_config() before parsing
    run->add_option("--config", config_path, "key=value file mirroring the flags; command-line flags take precedence");

    ExperimentConfig fpr_cfg;
    std::vector<double> error_rates = tlbf::harness::default_error_rates();
    std::string fpr_out = "-";
    auto* fpr = app.add_subcommand("fpr", "Sweep error-rate configurations");
    add_stream_options(*fpr, fpr_cfg);
    fpr->add_option("--error-rates", error_rates, "Target error rates")->delimiter(',')->capture_default_str();
    fpr->add_option("--out", fpr_out, "Summary CSV ('-' for stdout)")->capture_default_str();
    fpr->add_option("--config", config_path, "key=value file mirroring the flags; command-line flags take precedence");

    tlbf::harness::SelftestOptions st;
    st.seed = tlbf::harness::kDefaultSeed;
    auto* selftest = app.add_subcommand("selftest", "Randomized invariant checks");
    selftest->add_option("--seed", st.seed, "Script generator seed")->capture_default_str();
    selftest->add_option("--scripts", st.scripts, "Number of random scripts")->capture_default_str();
    selftest->add_option("--ops", st.ops_per_script, "Operations per script")->capture_default_str();

    for (auto* sub : {run, fpr}) {
        for (auto* opt : sub->get_options()) {
            opt->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
        }
    }

    try {
        std::vector<std::string> args(argv + 1, argv + argc);
        try {
            args = expand_config(std::move(args));
        } catch (const std::invalid_argument& e) {
            std::cerr << "error: " << e.what() << '\n';
            return kExitUsage;
        }
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*run) {
            return run_command(run_cfg, run_out);
        }
        if (*fpr) {
            return fpr_command(fpr_cfg, error_rates, fpr_out);
        }
        const auto reports = tlbf::harness::run_selftest(st);
        tlbf::harness::print_reports(std::cout, reports);
        for (const auto& r : reports) {
            if (!r.passed()) {
                return 1;
            }
        }
        return 0;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
}
