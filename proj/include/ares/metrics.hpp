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

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ares/checker.hpp"

namespace ares {

/// Peak storage of one configuration, summed over its servers.
struct ConfigStorage {
    Units max_units{0};
    std::uint64_t bytes_at_max = 0;
    Tick at = 0;
};

struct StorageReport {
    std::size_t value_size = 0;
    std::map<ConfigId, ConfigStorage> per_config;
    /// Peak over the run of storage summed over every configuration.
    Units max_total{0};
    std::uint64_t bytes_at_max_total = 0;
};

struct OpCost {
    std::uint64_t op_id = 0;
    ProcessId client;
    std::string kind;
    bool complete = false;
    Units units{0};
    std::uint64_t payload_bytes = 0;
    /// Header overhead, in bytes: payload bytes minus units times |v|.
    double epsilon_bytes = 0;
};

struct LatencyCheck {
    std::string action;
    std::uint64_t op_id = 0;
    ProcessId client;
    Tick measured = 0;
    Tick lo = 0;
    std::optional<Tick> hi;
    bool pass = true;
    std::string note;
};

struct LatencyReport {
    std::vector<LatencyCheck> checks;
    /// First reconfig invocation to the last add-config completion.
    std::optional<Tick> install_time;
    std::size_t reconfigs = 0;

    /// Pass/fail per audited action name.
    std::map<std::string, std::pair<std::size_t, std::size_t>> tally() const;
};

struct CostReport {
    StorageReport storage;
    std::vector<OpCost> ops;
    LatencyReport latency;
};

StorageReport storage_cost(const Trace& trace);
/// Cost of every top-level operation in the trace.
std::vector<OpCost> comm_costs(const Trace& trace);
/// Cost of one top-level operation; throws Error if it is unknown or incomplete.
OpCost comm_cost(const Trace& trace, std::uint64_t op_id);
/// Requires the delay parameters in the trace preamble.
LatencyReport latency_audit(const Trace& trace);
/// 4d * (1 + 2 + ... + k) + k (T(CN) + 2d).
Tick install_lower_bound(std::size_t k, Tick d, Tick consensus_delay);

CostReport cost_report(const Trace& trace);

double to_double(Units u);

}  // namespace ares
