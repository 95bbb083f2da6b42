// Copyright 2026 The ares-sim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ares/report.hpp"

namespace ares {

struct FuzzFailure {
    std::uint64_t seed = 0;
    std::string verdict;      // name of the first failing safety check
    std::string detail;
    std::string scenario;     // reproducing scenario text
    std::string minimized;    // smallest variant that still fails the same check
};

struct FuzzOptions {
    std::size_t count = 100;
    std::uint64_t seed = 1;
    std::optional<Mutation> mutation;
    std::optional<std::string> out_dir;
    bool stop_on_failure = false;
    bool minimize = true;
    /// Cross-check tag-based atomicity against exhaustive search on small histories.
    bool cross_check = true;
};

struct FuzzResult {
    std::size_t runs = 0;
    std::size_t quiescent = 0;
    std::size_t small_histories = 0;  // histories exhaustive search covered
    std::vector<FuzzFailure> failures;
    /// Failure counts per verdict name.
    std::map<std::string, std::size_t> by_verdict;

    bool pass() const { return failures.empty(); }
};

/// A concrete scenario drawn from `tmpl` and its [fuzz] section.
Scenario generate_scenario(const Scenario& tmpl, std::uint64_t seed);

/// First failing safety verdict of one run, if any.
std::optional<Verdict> first_safety_failure(const Scenario& s, RunOutput* keep = nullptr);

/// Greedily drops clients, operations and crashes while `verdict` still fails.
Scenario minimize_scenario(const Scenario& failing, const std::string& verdict, std::size_t max_runs = 400);

FuzzResult fuzz(const Scenario& tmpl, const FuzzOptions& opts);

}  // namespace ares
