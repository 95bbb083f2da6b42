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

#include "ares/trace.hpp"

#include <charconv>
#include <istream>
#include <json.hpp>
#include <ostream>

namespace ares {

using json = nlohmann::ordered_json;

std::string to_string(Units u) {
    if (u.denominator() == 1) return std::to_string(u.numerator());
    return std::to_string(u.numerator()) + "/" + std::to_string(u.denominator());
}

std::optional<Units> parse_units(std::string_view text) {
    auto slash = text.find('/');
    auto num_text = text.substr(0, slash);
    std::int64_t num = 0, den = 1;
    auto [p1, e1] = std::from_chars(num_text.data(), num_text.data() + num_text.size(), num);
    if (e1 != std::errc{} || p1 != num_text.data() + num_text.size()) return std::nullopt;
    if (slash != std::string_view::npos) {
        auto den_text = text.substr(slash + 1);
        auto [p2, e2] = std::from_chars(den_text.data(), den_text.data() + den_text.size(), den);
        if (e2 != std::errc{} || p2 != den_text.data() + den_text.size() || den == 0) return std::nullopt;
    }
    return Units(num, den);
}

namespace {

constexpr std::pair<EventKind, std::string_view> kKindNames[] = {
    {EventKind::invoke, "invoke"},
    {EventKind::respond, "respond"},
    {EventKind::send, "send"},
    {EventKind::deliver, "deliver"},
    {EventKind::crash, "crash"},
    {EventKind::state_change, "state-change"},
    {EventKind::consensus_decide, "consensus-decide"},
};

json tag_json(const Tag& t) { return json::array({t.z, to_string(t.w)}); }

Tag tag_from(const json& j) {
    auto w = parse_process_id(j.at(1).get<std::string>());
    if (!w) throw Error("bad writer id in tag");
    return Tag{j.at(0).get<std::uint64_t>(), *w};
}

json entry_json(const ConfigEntry& e) {
    return json::array({e.cfg.value, e.status == Status::finalized ? "F" : "P"});
}

ConfigEntry entry_from(const json& j) {
    auto status = j.at(1).get<std::string>();
    if (status != "F" && status != "P") throw Error("bad configuration status");
    return ConfigEntry{ConfigId{j.at(0).get<std::int64_t>()}, status == "F" ? Status::finalized : Status::pending};
}

ProcessId pid_from(const json& j) {
    auto p = parse_process_id(j.get<std::string>());
    if (!p) throw Error("bad process id " + j.dump());
    return *p;
}

}  // namespace

std::string_view to_string(EventKind kind) {
    for (auto [k, name] : kKindNames)
        if (k == kind) return name;
    return "?";
}

std::optional<EventKind> parse_event_kind(std::string_view text) {
    for (auto [k, name] : kKindNames)
        if (name == text) return k;
    return std::nullopt;
}

std::string to_json_line(const TraceEvent& e) {
    json j;
    j["time"] = e.time;
    j["kind"] = to_string(e.kind);
    j["subject"] = to_string(e.subject);
    j["name"] = e.name;
    if (e.peer) j["peer"] = to_string(*e.peer);
    if (e.msg_id) j["msg_id"] = *e.msg_id;
    if (e.op_id) j["op_id"] = *e.op_id;
    if (e.parent_op) j["parent_op"] = *e.parent_op;
    if (e.cfg) j["cfg"] = e.cfg->value;
    if (e.tag) j["tag"] = tag_json(*e.tag);
    if (e.value) j["value"] = to_hex(*e.value);
    if (e.index) j["index"] = *e.index;
    if (e.mu) j["mu"] = *e.mu;
    if (e.entry) j["entry"] = entry_json(*e.entry);
    if (e.seq) {
        auto arr = json::array();
        for (const auto& entry : e.seq->entries()) arr.push_back(entry_json(entry));
        j["seq"] = std::move(arr);
    }
    if (e.units) j["units"] = to_string(*e.units);
    if (e.payload_bytes) j["payload_bytes"] = *e.payload_bytes;
    if (!e.note.empty()) j["note"] = e.note;
    return j.dump();
}

TraceEvent from_json_line(std::string_view line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error& err) {
        throw Error(std::string("trace line is not JSON: ") + err.what());
    }
    TraceEvent e;
    try {
        e.time = j.at("time").get<Tick>();
        auto kind = parse_event_kind(j.at("kind").get<std::string>());
        if (!kind) throw Error("unknown event kind");
        e.kind = *kind;
        e.subject = pid_from(j.at("subject"));
        e.name = j.at("name").get<std::string>();
        if (j.contains("peer")) e.peer = pid_from(j["peer"]);
        if (j.contains("msg_id")) e.msg_id = j["msg_id"].get<std::uint64_t>();
        if (j.contains("op_id")) e.op_id = j["op_id"].get<std::uint64_t>();
        if (j.contains("parent_op")) e.parent_op = j["parent_op"].get<std::uint64_t>();
        if (j.contains("cfg")) e.cfg = ConfigId{j["cfg"].get<std::int64_t>()};
        if (j.contains("tag")) e.tag = tag_from(j["tag"]);
        if (j.contains("value")) {
            auto bytes = from_hex(j["value"].get<std::string>());
            if (!bytes) throw Error("bad hex value");
            e.value = std::move(*bytes);
        }
        if (j.contains("index")) e.index = j["index"].get<std::uint64_t>();
        if (j.contains("mu")) e.mu = j["mu"].get<std::uint64_t>();
        if (j.contains("entry")) e.entry = entry_from(j["entry"]);
        if (j.contains("seq")) {
            std::vector<ConfigEntry> entries;
            for (const auto& x : j["seq"]) entries.push_back(entry_from(x));
            e.seq = ConfigSequence(std::move(entries));
        }
        if (j.contains("units")) {
            auto u = parse_units(j["units"].get<std::string>());
            if (!u) throw Error("bad units");
            e.units = *u;
        }
        if (j.contains("payload_bytes")) e.payload_bytes = j["payload_bytes"].get<std::uint64_t>();
        if (j.contains("note")) e.note = j["note"].get<std::string>();
    } catch (const json::exception& err) {
        throw Error(std::string("malformed trace event: ") + err.what());
    }
    return e;
}

void write_trace(std::ostream& out, const Trace& trace) {
    for (const auto& e : trace) out << to_json_line(e) << '\n';
}

Trace read_trace(std::istream& in) {
    Trace trace;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        trace.push_back(from_json_line(line));
    }
    return trace;
}

}  // namespace ares
