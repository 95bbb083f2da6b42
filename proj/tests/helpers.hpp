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

#include <algorithm>
#include <string>

#include "ares/fuzz.hpp"
#include "ares/harness.hpp"
#include "ares/report.hpp"
#include "ares/scenario.hpp"

namespace testing {

inline std::string scenario_path(const std::string& name) { return std::string(ARES_SCENARIO_DIR) + "/" + name; }

inline ares::Scenario load(const std::string& name) { return ares::load_scenario(scenario_path(name)); }

inline std::vector<ares::ProcessId> servers(std::initializer_list<std::uint32_t> ids) {
    std::vector<ares::ProcessId> out;
    for (auto i : ids) out.push_back(ares::server(i));
    return out;
}

inline ares::Bytes bytes(std::string_view hex) { return *ares::from_hex(hex); }

template <typename Pred>
std::size_t count_events(const ares::Trace& t, Pred pred) {
    return static_cast<std::size_t>(std::count_if(t.begin(), t.end(), pred));
}

/// Runs and evaluates every verdict.
inline ares::Evaluation run_all(const ares::Scenario& s, ares::RunOutput* keep = nullptr) {
    auto out = ares::run_scenario(s);
    auto ev = ares::evaluate(s, out, {"all"});
    if (keep) *keep = std::move(out);
    return ev;
}

inline std::string failing(const ares::CheckReport& r) {
    std::string out;
    for (const auto& v : r.verdicts)
        if (!v.pass) out += v.name + ": " + v.detail + "\n";
    return out;
}

}  // namespace testing
