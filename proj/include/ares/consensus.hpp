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
#include <utility>
#include <vector>

#include "ares/runtime.hpp"

namespace ares {

/// Con(c): the first proposal to arrive is decided and never changes.
class ConsensusInstance {
public:
    explicit ConsensusInstance(ConfigId cfg) : cfg_(cfg) {}

    ConfigId cfg() const { return cfg_; }
    /// Records the proposal and returns the decision.
    ConfigId propose(ProcessId proposer, ConfigId value);
    std::optional<ConfigId> decided() const { return decided_; }
    const std::vector<std::pair<ProcessId, ConfigId>>& proposals() const { return proposals_; }

private:
    ConfigId cfg_;
    std::optional<ConfigId> decided_;
    std::vector<std::pair<ProcessId, ConfigId>> proposals_;
};

/// Simulator-resident oracle for one instance. Replies DECIDE after the
/// configured consensus delay; it never crashes.
class ConsensusProcess : public Process {
public:
    ConsensusProcess(Simulator& sim, ConfigId cfg);

    const ConsensusInstance& instance() const { return instance_; }
    void on_message(const Envelope& env) override;

private:
    ConsensusInstance instance_;
};

/// d <- Con(instance).propose(value)
Task<ConfigId> propose(ClientProcess& c, ConfigId instance, ConfigId value);

}  // namespace ares
