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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace tlbf::harness {

struct InvariantReport {
    std::string name;
    std::uint64_t checks = 0;
    std::uint64_t violations = 0;
    std::string first_violation;

    [[nodiscard]] bool passed() const noexcept { return violations == 0; }
};

struct SelftestOptions {
    std::uint64_t seed = 0;
    std::uint32_t scripts = 20;
    std::uint32_t ops_per_script = 2000;
};

// Drives randomized insert / clock-advance scripts against the filter and the
// exact oracle, checking the structural and membership invariants after every
// operation.
[[nodiscard]] std::vector<InvariantReport> run_selftest(const SelftestOptions& options);

void print_reports(std::ostream& out, const std::vector<InvariantReport>& reports);

}  // namespace tlbf::harness
