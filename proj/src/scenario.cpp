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

#include "ares/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

namespace ares {

std::string_view to_string(RunMode m) { return m == RunMode::ares ? "ares" : "static"; }
std::string_view to_string(Template t) { return t == Template::a2 ? "a2" : "a1"; }
std::string_view to_string(TransferMode t) { return t == TransferMode::direct ? "direct" : "client"; }

ConfigId Scenario::initial() const {
    if (initial_config) return *initial_config;
    if (configs.empty()) throw ScenarioError(0, "scenario defines no configuration");
    return std::min_element(configs.begin(), configs.end(), [](const auto& a, const auto& b) { return a.id < b.id; })
        ->id;
}

const Configuration& Scenario::config(ConfigId id) const {
    for (const auto& c : configs)
        if (c.id == id) return c;
    throw ScenarioError(0, "unknown configuration " + to_string(id));
}

Bytes Scenario::v0() const { return initial_value ? *initial_value : Bytes(value_size, 0); }

Bytes generated_value(std::uint64_t seed, ProcessId writer, std::uint32_t count, std::size_t size) {
    Bytes v(size, 0);
    std::uint8_t head[8] = {'W',
                            static_cast<std::uint8_t>(writer.index >> 16),
                            static_cast<std::uint8_t>(writer.index >> 8),
                            static_cast<std::uint8_t>(writer.index),
                            static_cast<std::uint8_t>(count >> 24),
                            static_cast<std::uint8_t>(count >> 16),
                            static_cast<std::uint8_t>(count >> 8),
                            static_cast<std::uint8_t>(count)};
    std::uint64_t state = splitmix64(seed ^ (std::uint64_t{writer.index} << 32) ^ count);
    for (std::size_t i = 0; i < size; ++i) {
        if (i < 8) {
            v[i] = head[i];
        } else {
            if (i % 8 == 0) state = splitmix64(state);
            v[i] = static_cast<std::uint8_t>(state >> (8 * (i % 8)));
        }
    }
    return v;
}

namespace {

std::vector<std::string> split(std::string_view text) {
    std::istringstream in{std::string(text)};
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
}

std::string trim(std::string_view s) {
    auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    auto e = s.find_last_not_of(" \t\r");
    return std::string(s.substr(b, e - b + 1));
}

std::uint64_t to_uint(const std::string& s, int line, std::string_view what) {
    std::size_t used = 0;
    std::uint64_t v = 0;
    try {
        if (!s.empty() && s[0] == '-') throw std::invalid_argument(s);
        v = std::stoull(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw ScenarioError(line, std::string(what) + " expects a non-negative integer, got '" + s + "'");
    return v;
}

std::int64_t to_int(const std::string& s, int line, std::string_view what) {
    std::size_t used = 0;
    std::int64_t v = 0;
    try {
        v = std::stoll(s, &used);
    } catch (const std::exception&) {
        used = 0;
    }
    if (used != s.size() || s.empty()) throw ScenarioError(line, std::string(what) + " expects an integer, got '" + s + "'");
    return v;
}

ProcessId to_pid(const std::string& s, int line) {
    auto p = parse_process_id(s);
    if (!p) throw ScenarioError(line, "bad process id '" + s + "'");
    return *p;
}

std::vector<ProcessId> to_pids(const std::vector<std::string>& words, std::size_t from, int line) {
    std::vector<ProcessId> out;
    for (auto i = from; i < words.size(); ++i) out.push_back(to_pid(words[i], line));
    return out;
}

bool to_bool(const std::string& s, int line) {
    if (s == "true" || s == "yes" || s == "1") return true;
    if (s == "false" || s == "no" || s == "0") return false;
    throw ScenarioError(line, "expected true or false, got '" + s + "'");
}

Range to_range(const std::vector<std::string>& w, int line, std::string_view key) {
    if (w.size() == 1) {
        auto v = to_uint(w[0], line, key);
        return {v, v};
    }
    if (w.size() != 2) throw ScenarioError(line, std::string(key) + " expects 'LO HI'");
    Range r{to_uint(w[0], line, key), to_uint(w[1], line, key)};
    if (r.lo > r.hi) throw ScenarioError(line, std::string(key) + " has LO > HI");
    return r;
}

struct ConfigDraft {
    int line = 0;
    std::int64_t id = 0;
    std::optional<DapFlavor> flavor;
    std::vector<ProcessId> servers;
    std::optional<std::pair<std::size_t, std::size_t>> code;
    std::optional<std::size_t> delta;
    std::vector<std::vector<ProcessId>> quorums;
    std::vector<ProcessId> directories, replicas;
    std::optional<std::size_t> f;
};

Configuration build(const ConfigDraft& d) {
    if (!d.flavor) throw ScenarioError(d.line, "configuration " + std::to_string(d.id) + " has no flavor");
    Configuration c;
    c.id = ConfigId{d.id};
    c.flavor = *d.flavor;
    c.servers = d.servers;
    if (c.flavor == DapFlavor::ldr) {
        if (d.directories.empty() || d.replicas.empty())
            throw ScenarioError(d.line, "an ldr configuration needs directories and replicas");
        LdrRoles roles{d.directories, d.replicas, d.f.value_or((d.replicas.size() - 1) / 2)};
        if (c.servers.empty()) {
            c.servers = roles.directories;
            for (auto r : roles.replicas)
                if (std::find(c.servers.begin(), c.servers.end(), r) == c.servers.end()) c.servers.push_back(r);
        }
        c.ldr = roles;
    }
    if (c.servers.empty()) throw ScenarioError(d.line, "configuration " + std::to_string(d.id) + " has no servers");
    if (c.flavor == DapFlavor::treas) {
        if (!d.code) throw ScenarioError(d.line, "a treas configuration needs 'code: N K'");
        if (!d.delta) throw ScenarioError(d.line, "a treas configuration needs 'delta'");
        c.treas = TreasParams{d.code->first, d.code->second, *d.delta};
    }
    try {
        c.quorums = d.quorums.empty() ? QuorumSystem::majority(c.servers) : QuorumSystem::explicit_list(c.servers, d.quorums);
        c.validate();
    } catch (const ScenarioError&) {
        throw;
    } catch (const ConfigError& e) {
        throw ScenarioError(d.line, e.what());
    }
    return c;
}

OpSpec parse_op(const std::vector<std::string>& w, int line) {
    OpSpec op;
    op.line = line;
    if (w.empty()) throw ScenarioError(line, "empty op");
    std::size_t i = 1;
    if (w[0] == "read") {
        op.kind = OpSpec::Kind::read;
    } else if (w[0] == "write") {
        op.kind = OpSpec::Kind::write;
        if (i < w.size() && w[i] != "at" && w[i] != "after" && w[i] != "as") {
            auto v = from_hex(w[i]);
            if (!v) throw ScenarioError(line, "write value must be hex, got '" + w[i] + "'");
            op.value = *v;
            ++i;
        }
    } else if (w[0] == "reconfig") {
        op.kind = OpSpec::Kind::reconfig;
        if (i >= w.size()) throw ScenarioError(line, "reconfig needs a target configuration");
        op.target = ConfigId{to_int(w[i++], line, "reconfig")};
    } else {
        throw ScenarioError(line, "unknown op '" + w[0] + "'");
    }
    while (i < w.size()) {
        const auto& key = w[i];
        if (i + 1 >= w.size()) throw ScenarioError(line, "'" + key + "' needs an argument");
        const auto& arg = w[i + 1];
        if (key == "at")
            op.at = to_uint(arg, line, "at");
        else if (key == "after")
            op.after.push_back(arg);
        else if (key == "as")
            op.label = arg;
        else
            throw ScenarioError(line, "unexpected '" + key + "' in op");
        i += 2;
    }
    return op;
}

std::string op_text(const OpSpec& op) {
    std::ostringstream out;
    switch (op.kind) {
        case OpSpec::Kind::read: out << "read"; break;
        case OpSpec::Kind::write:
            out << "write";
            if (op.value) out << ' ' << to_hex(*op.value);
            break;
        case OpSpec::Kind::reconfig: out << "reconfig " << op.target->value; break;
    }
    if (op.at) out << " at " << *op.at;
    for (const auto& a : op.after) out << " after " << a;
    if (op.label) out << " as " << *op.label;
    return out.str();
}

CrashTrigger parse_crash(const std::vector<std::string>& w, int line) {
    if (w.size() != 3) throw ScenarioError(line, "crash expects 'WHO at T', 'WHO after_sends N' or 'WHO on ACTION'");
    CrashTrigger t;
    t.who = to_pid(w[0], line);
    if (w[1] == "at") {
        t.kind = CrashTrigger::Kind::at_time;
        t.time = to_uint(w[2], line, "crash at");
    } else if (w[1] == "after_sends") {
        t.kind = CrashTrigger::Kind::after_sends;
        t.sends = to_uint(w[2], line, "after_sends");
        if (t.sends == 0) throw ScenarioError(line, "after_sends must be positive");
    } else if (w[1] == "on") {
        t.kind = CrashTrigger::Kind::on_action;
        t.action = w[2];
    } else {
        throw ScenarioError(line, "unknown crash trigger '" + w[1] + "'");
    }
    return t;
}

std::string crash_text(const CrashTrigger& t) {
    switch (t.kind) {
        case CrashTrigger::Kind::at_time: return to_string(t.who) + " at " + std::to_string(t.time);
        case CrashTrigger::Kind::after_sends: return to_string(t.who) + " after_sends " + std::to_string(t.sends);
        case CrashTrigger::Kind::on_action: return to_string(t.who) + " on " + t.action;
    }
    return {};
}

std::string join(const std::vector<ProcessId>& ids) {
    std::string out;
    for (auto id : ids) out += (out.empty() ? "" : " ") + to_string(id);
    return out;
}

std::string range_text(const Range& r) { return std::to_string(r.lo) + " " + std::to_string(r.hi); }

const std::set<std::string>& known_checks() {
    static const std::set<std::string> names = {
        "safety", "all", "well-formed", "atomicity", "linearizability", "C1", "C2", "C3", "uniqueness", "prefix",
        "progress", "nextC-stability", "status-monotonic", "finalize-jump", "agreement", "validity",
        "termination", "server-tag-monotonic", "replica-holds-value", "liveness", "storage", "comm", "latency",
        "completion", "client-errors"};
    return names;
}

}  // namespace

Scenario parse_scenario(std::string_view text) {
    Scenario s;
    std::string section;
    std::string section_arg;
    int section_line = 0;
    std::optional<ConfigDraft> draft;
    ClientSpec* client = nullptr;
    std::set<std::string> seen_sections;

    auto close = [&] {
        if (draft) s.configs.push_back(build(*draft));
        draft.reset();
        client = nullptr;
    };

    std::istringstream in{std::string(text)};
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        if (auto hash = raw.find('#'); hash != std::string::npos) raw.erase(hash);
        auto l = trim(raw);
        if (l.empty()) continue;
        if (l.front() == '[') {
            if (l.back() != ']') throw ScenarioError(line, "unterminated section header");
            close();
            auto words = split(l.substr(1, l.size() - 2));
            if (words.empty()) throw ScenarioError(line, "empty section header");
            section = words[0];
            section_arg = words.size() > 1 ? words[1] : "";
            section_line = line;
            if (words.size() > 2) throw ScenarioError(line, "section header takes at most one argument");
            if (section == "config") {
                if (section_arg.empty()) throw ScenarioError(line, "[config] needs an id");
                draft = ConfigDraft{};
                draft->line = line;
                draft->id = to_int(section_arg, line, "config id");
                for (const auto& c : s.configs)
                    if (c.id.value == draft->id) throw ScenarioError(line, "configuration " + section_arg + " defined twice");
            } else if (section == "client") {
                auto id = to_pid(section_arg, line);
                for (const auto& c : s.clients)
                    if (c.id == id) throw ScenarioError(line, "client " + section_arg + " defined twice");
                s.clients.push_back(ClientSpec{id, {}, line});
                client = &s.clients.back();
            } else if (section == "sim" || section == "crash" || section == "checks" || section == "fuzz") {
                if (!section_arg.empty()) throw ScenarioError(line, "[" + section + "] takes no argument");
                if (!seen_sections.insert(section).second) throw ScenarioError(line, "[" + section + "] appears twice");
                if (section == "fuzz") s.fuzz = FuzzSpec{};
            } else {
                throw ScenarioError(line, "unknown section [" + section + "]");
            }
            continue;
        }
        auto colon = l.find(':');
        if (colon == std::string::npos) throw ScenarioError(line, "expected 'key: value'");
        auto key = trim(l.substr(0, colon));
        auto value = trim(l.substr(colon + 1));
        auto w = split(value);
        auto one = [&]() -> const std::string& {
            if (w.size() != 1) throw ScenarioError(line, "'" + key + "' expects one value");
            return w[0];
        };

        if (section.empty()) throw ScenarioError(line, "key outside any section");
        if (section == "sim") {
            if (key == "seed") s.sim.seed = to_uint(one(), line, key);
            else if (key == "d_min") s.sim.d_min = to_uint(one(), line, key);
            else if (key == "d_max") s.sim.d_max = to_uint(one(), line, key);
            else if (key == "consensus_delay") s.sim.consensus_delay = to_uint(one(), line, key);
            else if (key == "budget") s.sim.budget = to_uint(one(), line, key);
            else if (key == "policy") {
                auto p = parse_policy(one());
                if (!p) throw ScenarioError(line, "unknown policy '" + w[0] + "'");
                s.sim.policy = *p;
            } else if (key == "mode") {
                if (one() == "static") s.mode = RunMode::single;
                else if (w[0] == "ares") s.mode = RunMode::ares;
                else throw ScenarioError(line, "mode is 'static' or 'ares'");
            } else if (key == "template") {
                if (one() == "a1") s.tmpl = Template::a1;
                else if (w[0] == "a2") s.tmpl = Template::a2;
                else throw ScenarioError(line, "template is 'a1' or 'a2'");
            } else if (key == "transfer") {
                if (one() == "client") s.transfer = TransferMode::client;
                else if (w[0] == "direct") s.transfer = TransferMode::direct;
                else throw ScenarioError(line, "transfer is 'client' or 'direct'");
            } else if (key == "mutation") {
                auto m = parse_mutation(one());
                if (!m) throw ScenarioError(line, "unknown mutation '" + w[0] + "'");
                s.mutation = *m;
            } else if (key == "value_size") s.value_size = to_uint(one(), line, key);
            else if (key == "initial_value") {
                auto v = from_hex(one());
                if (!v) throw ScenarioError(line, "initial_value must be hex");
                s.initial_value = *v;
            } else if (key == "initial_config") s.initial_config = ConfigId{to_int(one(), line, key)};
            else if (key == "allow_overload") s.allow_overload = to_bool(one(), line);
            else if (key == "link") {
                if (w.size() != 4) throw ScenarioError(line, "link expects 'SRC DST LO HI' with * as a wildcard");
                LinkRule r;
                if (w[0] != "*") r.src = to_pid(w[0], line);
                if (w[1] != "*") r.dst = to_pid(w[1], line);
                r.lo = to_uint(w[2], line, key);
                r.hi = to_uint(w[3], line, key);
                s.sim.links.push_back(r);
            } else throw ScenarioError(line, "unknown [sim] key '" + key + "'");
        } else if (section == "config") {
            auto& d = *draft;
            if (key == "flavor") {
                d.flavor = parse_flavor(one());
                if (!d.flavor) throw ScenarioError(line, "unknown flavor '" + w[0] + "'");
            } else if (key == "servers") d.servers = to_pids(w, 0, line);
            else if (key == "code") {
                if (w.size() != 2) throw ScenarioError(line, "code expects 'N K'");
                d.code = std::make_pair(to_uint(w[0], line, key), to_uint(w[1], line, key));
            } else if (key == "delta") d.delta = to_uint(one(), line, key);
            else if (key == "quorums") {
                if (one() != "majority") throw ScenarioError(line, "quorums is 'majority'; list explicit quorums with 'quorum:' lines");
            } else if (key == "quorum") d.quorums.push_back(to_pids(w, 0, line));
            else if (key == "directories") d.directories = to_pids(w, 0, line);
            else if (key == "replicas") d.replicas = to_pids(w, 0, line);
            else if (key == "f") d.f = to_uint(one(), line, key);
            else throw ScenarioError(line, "unknown [config] key '" + key + "'");
        } else if (section == "client") {
            if (key != "op") throw ScenarioError(line, "[client] sections hold 'op:' lines");
            client->ops.push_back(parse_op(w, line));
        } else if (section == "crash") {
            if (key != "crash") throw ScenarioError(line, "[crash] holds 'crash:' lines");
            s.crashes.push_back(CrashSpec{parse_crash(w, line), line});
        } else if (section == "checks") {
            if (key != "checks") throw ScenarioError(line, "[checks] holds 'checks:' lines");
            for (const auto& c : w) {
                if (!known_checks().count(c)) throw ScenarioError(line, "unknown check '" + c + "'");
                s.checks.push_back(c);
            }
        } else if (section == "fuzz") {
            auto& f = *s.fuzz;
            if (key == "writers") f.writers = to_range(w, line, key);
            else if (key == "readers") f.readers = to_range(w, line, key);
            else if (key == "reconfigurers") f.reconfigurers = to_range(w, line, key);
            else if (key == "ops") f.ops = to_range(w, line, key);
            else if (key == "gap") f.gap = to_range(w, line, key);
            else if (key == "start") f.start = to_range(w, line, key);
            else if (key == "crashes") f.crashes = to_range(w, line, key);
            else if (key == "crash_window") f.crash_window = to_range(w, line, key);
            else if (key == "client_crashes") f.client_crashes = to_range(w, line, key);
            else if (key == "pool") f.pool = static_cast<std::uint32_t>(to_uint(one(), line, key));
            else if (key == "generated_configs") f.generated_configs = to_range(w, line, key);
            else if (key == "flavors") {
                f.flavors.clear();
                for (const auto& x : w) {
                    auto fl = parse_flavor(x);
                    if (!fl) throw ScenarioError(line, "unknown flavor '" + x + "'");
                    f.flavors.push_back(*fl);
                }
                if (f.flavors.empty()) throw ScenarioError(line, "flavors needs at least one flavor");
            } else if (key == "transfers") {
                f.transfers.clear();
                for (const auto& x : w) {
                    if (x == "client") f.transfers.push_back(TransferMode::client);
                    else if (x == "direct") f.transfers.push_back(TransferMode::direct);
                    else throw ScenarioError(line, "unknown transfer '" + x + "'");
                }
                if (f.transfers.empty()) throw ScenarioError(line, "transfers needs at least one mode");
            } else throw ScenarioError(line, "unknown [fuzz] key '" + key + "'");
        }
    }
    close();
    (void)section_line;
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ScenarioError(0, "cannot open " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_scenario(buf.str());
    } catch (const ScenarioError& e) {
        throw ScenarioError(e.line(), path + ": " + (e.line() > 0 ? std::string(e.what()).substr(std::string(e.what()).find(": ") + 2) : e.what()));
    }
}

std::string serialize_scenario(const Scenario& s) {
    std::ostringstream out;
    out << "[sim]\n";
    out << "seed: " << s.sim.seed << "\n";
    out << "d_min: " << s.sim.d_min << "\n";
    out << "d_max: " << s.sim.d_max << "\n";
    out << "consensus_delay: " << s.sim.consensus_delay << "\n";
    out << "policy: " << to_string(s.sim.policy) << "\n";
    out << "budget: " << s.sim.budget << "\n";
    out << "mode: " << to_string(s.mode) << "\n";
    out << "template: " << to_string(s.tmpl) << "\n";
    out << "transfer: " << to_string(s.transfer) << "\n";
    if (s.mutation != Mutation::none) out << "mutation: " << to_string(s.mutation) << "\n";
    out << "value_size: " << s.value_size << "\n";
    if (s.initial_value) out << "initial_value: " << to_hex(*s.initial_value) << "\n";
    if (s.initial_config) out << "initial_config: " << s.initial_config->value << "\n";
    if (s.allow_overload) out << "allow_overload: true\n";
    for (const auto& l : s.sim.links)
        out << "link: " << (l.src ? to_string(*l.src) : "*") << ' ' << (l.dst ? to_string(*l.dst) : "*") << ' '
            << l.lo << ' ' << l.hi << "\n";

    for (const auto& c : s.configs) {
        out << "\n[config " << c.id.value << "]\n";
        out << "flavor: " << to_string(c.flavor) << "\n";
        out << "servers: " << join(c.servers) << "\n";
        if (c.quorums.is_explicit())
            for (const auto& q : c.quorums.quorums()) out << "quorum: " << join(q) << "\n";
        if (c.treas) {
            out << "code: " << c.treas->n << ' ' << c.treas->k << "\n";
            out << "delta: " << c.treas->delta << "\n";
        }
        if (c.ldr) {
            out << "directories: " << join(c.ldr->directories) << "\n";
            out << "replicas: " << join(c.ldr->replicas) << "\n";
            out << "f: " << c.ldr->f << "\n";
        }
    }
    for (const auto& c : s.clients) {
        out << "\n[client " << to_string(c.id) << "]\n";
        for (const auto& op : c.ops) out << "op: " << op_text(op) << "\n";
    }
    if (!s.crashes.empty()) {
        out << "\n[crash]\n";
        for (const auto& c : s.crashes) out << "crash: " << crash_text(c.trigger) << "\n";
    }
    if (!s.checks.empty()) {
        out << "\n[checks]\nchecks:";
        for (const auto& c : s.checks) out << ' ' << c;
        out << "\n";
    }
    if (s.fuzz) {
        const auto& f = *s.fuzz;
        out << "\n[fuzz]\n";
        out << "writers: " << range_text(f.writers) << "\n";
        out << "readers: " << range_text(f.readers) << "\n";
        out << "reconfigurers: " << range_text(f.reconfigurers) << "\n";
        out << "ops: " << range_text(f.ops) << "\n";
        out << "gap: " << range_text(f.gap) << "\n";
        out << "start: " << range_text(f.start) << "\n";
        out << "crashes: " << range_text(f.crashes) << "\n";
        out << "crash_window: " << range_text(f.crash_window) << "\n";
        out << "client_crashes: " << range_text(f.client_crashes) << "\n";
        out << "pool: " << f.pool << "\n";
        out << "generated_configs: " << range_text(f.generated_configs) << "\n";
        out << "flavors:";
        for (auto fl : f.flavors) out << ' ' << to_string(fl);
        out << "\ntransfers:";
        for (auto t : f.transfers) out << ' ' << to_string(t);
        out << "\n";
    }
    return out.str();
}

std::vector<std::string> validate_scenario(const Scenario& s) {
    std::vector<std::string> warnings;
    if (s.configs.empty()) throw ScenarioError(0, "scenario defines no configuration");
    try {
        s.sim.validate();
    } catch (const ScenarioError&) {
        throw;
    } catch (const ConfigError& e) {
        throw ScenarioError(0, e.what());
    }
    if (s.value_size == 0 && !s.initial_value) throw ScenarioError(0, "value_size must be positive");

    std::set<ProcessId> servers;
    for (const auto& c : s.configs) {
        if (c.id.value < 0) throw ScenarioError(0, "configuration ids must be non-negative");
        for (auto id : c.servers) {
            if (id.role != Role::server) throw ScenarioError(0, to_string(id) + " is not a server id");
            servers.insert(id);
        }
        if (c.treas) {
            if (3 * c.treas->k <= c.treas->n)
                throw ScenarioError(0, "configuration " + to_string(c.id) + " needs k > n/3");
            if (3 * c.treas->k < 2 * c.treas->n)
                warnings.push_back("configuration " + to_string(c.id) + " has k < 2n/3");
        }
    }
    auto initial = s.initial();
    const auto& init_cfg = s.config(initial);

    if (s.tmpl == Template::a2) {
        if (s.mode != RunMode::single) throw ScenarioError(0, "template a2 runs only in static mode");
        if (init_cfg.flavor != DapFlavor::ldr)
            throw ScenarioError(0, "template a2 needs a DAP whose get-data is monotone (ldr)");
    }

    std::set<ProcessId> clients;
    std::map<std::string, const OpSpec*> labels;
    std::set<ConfigId> targeted;
    bool generated_writes = false;
    for (const auto& c : s.clients) {
        clients.insert(c.id);
        if (!is_client(c.id)) throw ScenarioError(c.line, to_string(c.id) + " is not a client id");
        for (const auto& op : c.ops) {
            auto bad_role = [&](std::string_view what) {
                throw ScenarioError(op.line, to_string(c.id) + " cannot " + std::string(what));
            };
            switch (op.kind) {
                case OpSpec::Kind::read:
                    if (c.id.role != Role::reader) bad_role("read");
                    break;
                case OpSpec::Kind::write:
                    if (c.id.role != Role::writer) bad_role("write");
                    if (!op.value) generated_writes = true;
                    break;
                case OpSpec::Kind::reconfig:
                    if (c.id.role != Role::reconfigurer) bad_role("reconfig");
                    if (s.mode != RunMode::ares) throw ScenarioError(op.line, "reconfig needs mode ares");
                    if (*op.target == initial) throw ScenarioError(op.line, "cannot reconfigure to the initial configuration");
                    s.config(*op.target);
                    if (!targeted.insert(*op.target).second)
                        throw ScenarioError(op.line, "configuration " + to_string(*op.target) + " is proposed twice");
                    break;
            }
            if (op.label) {
                if (op.label->find(':') != std::string::npos) throw ScenarioError(op.line, "labels cannot contain ':'");
                if (!labels.emplace(*op.label, &op).second) throw ScenarioError(op.line, "label '" + *op.label + "' used twice");
            }
        }
    }
    for (const auto& c : s.clients)
        for (const auto& op : c.ops)
            for (const auto& a : op.after) {
                auto base = a;
                bool added = false;
                if (auto colon = a.find(':'); colon != std::string::npos) {
                    if (a.substr(colon) != ":added") throw ScenarioError(op.line, "unknown label suffix in '" + a + "'");
                    base = a.substr(0, colon);
                    added = true;
                }
                auto it = labels.find(base);
                if (it == labels.end()) throw ScenarioError(op.line, "unknown label '" + base + "'");
                if (added && it->second->kind != OpSpec::Kind::reconfig)
                    throw ScenarioError(op.line, "':added' applies only to reconfig labels");
                if (it->second == &op) throw ScenarioError(op.line, "op waits on itself");
            }
    if (generated_writes && s.value_size < 8) throw ScenarioError(0, "generated writes need value_size >= 8");

    for (const auto& l : s.sim.links)
        for (auto p : {l.src, l.dst})
            if (p && !servers.count(*p) && !clients.count(*p) && p->role != Role::consensus)
                throw ScenarioError(0, "link names unknown process " + to_string(*p));

    std::vector<ProcessId> down;
    for (const auto& c : s.crashes) {
        auto who = c.trigger.who;
        if (!servers.count(who) && !clients.count(who)) throw ScenarioError(c.line, "crash names unknown process " + to_string(who));
        if (who.role == Role::server && std::find(down.begin(), down.end(), who) == down.end()) down.push_back(who);
    }
    for (const auto& c : s.configs) {
        if (c.tolerates(down)) continue;
        auto msg = "crashes exceed what configuration " + to_string(c.id) + " tolerates";
        if (!s.allow_overload) throw ScenarioError(0, msg + " (set allow_overload to run anyway)");
        warnings.push_back(msg);
    }
    return warnings;
}

}  // namespace ares
