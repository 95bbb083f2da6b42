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

#include "ares/netsim.hpp"
#include "ares/runtime.hpp"

namespace ares {

/// A parse or validation problem, tied to a line of the scenario file when known.
class ScenarioError : public ConfigError {
public:
    ScenarioError(int line, const std::string& what)
        : ConfigError(line > 0 ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
    int line() const { return line_; }

private:
    int line_;
};

enum class RunMode { single, ares };
enum class Template { a1, a2 };

struct OpSpec {
    enum class Kind { read, write, reconfig };

    Kind kind = Kind::read;
    std::optional<Bytes> value;       // write only; generated when absent
    std::optional<ConfigId> target;   // reconfig only
    std::optional<Tick> at;
    std::vector<std::string> after;   // labels; "x:added" waits for reconfig x's add-config
    std::optional<std::string> label;
    int line = 0;

    bool operator==(const OpSpec&) const = default;
};

struct ClientSpec {
    ProcessId id;
    std::vector<OpSpec> ops;
    int line = 0;

    bool operator==(const ClientSpec&) const = default;
};

struct CrashSpec {
    CrashTrigger trigger;
    int line = 0;

    bool operator==(const CrashSpec&) const = default;
};

/// Inclusive integer range.
struct Range {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;

    bool operator==(const Range&) const = default;
};

/// Knobs for generated schedules.
struct FuzzSpec {
    Range writers{1, 2};
    Range readers{1, 2};
    Range reconfigurers{0, 0};
    Range ops{1, 3};
    Range gap{0, 10};
    Range start{0, 10};
    Range crashes{0, 0};
    Range crash_window{0, 50};
    Range client_crashes{0, 0};
    /// Servers s1..s<pool> that generated configurations draw from.
    std::uint32_t pool = 0;
    Range generated_configs{0, 0};
    std::vector<DapFlavor> flavors{DapFlavor::abd};
    std::vector<TransferMode> transfers{TransferMode::client};

    bool operator==(const FuzzSpec&) const = default;
};

struct Scenario {
    SimConfig sim;
    RunMode mode = RunMode::single;
    Template tmpl = Template::a1;
    TransferMode transfer = TransferMode::client;
    Mutation mutation = Mutation::none;
    std::size_t value_size = 16;
    std::optional<Bytes> initial_value;
    std::optional<ConfigId> initial_config;  // defaults to the lowest id
    bool allow_overload = false;
    std::vector<Configuration> configs;
    std::vector<ClientSpec> clients;
    std::vector<CrashSpec> crashes;
    std::vector<std::string> checks;
    std::optional<FuzzSpec> fuzz;

    ConfigId initial() const;
    const Configuration& config(ConfigId id) const;
    Bytes v0() const;
};

/// Throws ScenarioError with the offending line.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::string& path);
std::string serialize_scenario(const Scenario& s);

/// Throws ScenarioError on a structural problem; returns warnings otherwise.
std::vector<std::string> validate_scenario(const Scenario& s);

/// Value for a generated write: writer index and op count, then filler.
Bytes generated_value(std::uint64_t seed, ProcessId writer, std::uint32_t count, std::size_t size);

std::string_view to_string(RunMode m);
std::string_view to_string(Template t);
std::string_view to_string(TransferMode t);

}  // namespace ares
