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

#include <boost/rational.hpp>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ares/common.hpp"

namespace ares {

/// Normalized data volume; one full value is 1.
using Units = boost::rational<std::int64_t>;

std::string to_string(Units u);
std::optional<Units> parse_units(std::string_view text);

enum class EventKind { invoke, respond, send, deliver, crash, state_change, consensus_decide };

std::string_view to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view text);

/// One record of a simulated execution. Optional fields are present only
/// where meaningful for the event's kind and name.
struct TraceEvent {
    Tick time = 0;
    EventKind kind = EventKind::state_change;
    ProcessId subject;
    std::string name;
    std::optional<ProcessId> peer;
    std::optional<std::uint64_t> msg_id;
    std::optional<std::uint64_t> op_id;
    std::optional<std::uint64_t> parent_op;
    std::optional<ConfigId> cfg;
    std::optional<Tag> tag;
    std::optional<Bytes> value;
    std::optional<std::uint64_t> index;
    std::optional<std::uint64_t> mu;
    std::optional<ConfigEntry> entry;
    std::optional<ConfigSequence> seq;
    std::optional<Units> units;
    std::optional<std::uint64_t> payload_bytes;
    std::string note;

    bool operator==(const TraceEvent&) const = default;
};

using Trace = std::vector<TraceEvent>;

/// Single-line JSON with a fixed key order.
std::string to_json_line(const TraceEvent& event);
/// Throws Error on malformed input.
TraceEvent from_json_line(std::string_view line);

void write_trace(std::ostream& out, const Trace& trace);
Trace read_trace(std::istream& in);

}  // namespace ares
