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

#include <json.hpp>
#include <string>
#include <vector>

#include "ares/checker.hpp"
#include "ares/harness.hpp"
#include "ares/metrics.hpp"

namespace ares {

/// Checker verdicts and cost figures for one run.
struct Evaluation {
    CheckReport all;        // every verdict computed
    CheckReport requested;  // the subset the caller asked for
    CostReport costs;
    bool quiescent = false;

    bool pass() const { return requested.all_pass(); }
};

/// Names accepted by `--check`. "safety" selects every safety verdict,
/// "all" adds liveness, completion and the cost bounds.
const std::vector<std::string>& check_names();
/// Expands group names; throws Error on an unknown name.
std::vector<std::string> expand_checks(const std::vector<std::string>& names);

/// Storage and communication bounds of the erasure-coded configurations.
CheckReport cost_verdicts(const Scenario& s, const CostReport& costs);

Evaluation evaluate(const Scenario& s, const RunOutput& out, const std::vector<std::string>& checks);

nlohmann::ordered_json report_json(const Scenario& s, const RunOutput& out, const Evaluation& ev);

}  // namespace ares
