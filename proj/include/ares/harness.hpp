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

#include <functional>
#include <string>
#include <vector>

#include "ares/scenario.hpp"

namespace ares {

struct RunOutput {
    Trace trace;
    RunResult result;
    std::vector<std::string> warnings;
    /// Exceptions that escaped client scripts, as "client: message".
    std::vector<std::string> failures;
    /// Top-level operations that never completed, excluding those of crashed clients.
    std::size_t pending_ops = 0;
};

/// Validates and executes the scenario; the trace starts with a preamble
/// recording the initial value, delay parameters and configurations.
RunOutput run_scenario(const Scenario& s);
/// As above; `inspect` sees the simulator after the run, before teardown.
RunOutput run_scenario(const Scenario& s, const std::function<void(const Simulator&)>& inspect);

}  // namespace ares
