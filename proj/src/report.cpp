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

#include "ares/report.hpp"

#include <algorithm>
#include <set>

namespace ares {

namespace {

const std::vector<std::string> kSafety = {
    "well-formed", "atomicity",     "linearizability",     "C1",        "C2",
    "C3",          "uniqueness",    "prefix",              "progress",  "nextC-stability",
    "status-monotonic", "finalize-jump", "agreement",      "validity",  "server-tag-monotonic",
    "replica-holds-value", "client-errors"};
const std::vector<std::string> kExtra = {"termination", "liveness", "completion", "storage", "comm", "latency"};

std::string units_text(Units u) { return to_string(u); }

}  // namespace

const std::vector<std::string>& check_names() {
    static const std::vector<std::string> names = [] {
        std::vector<std::string> n{"safety", "all"};
        n.insert(n.end(), kSafety.begin(), kSafety.end());
        n.insert(n.end(), kExtra.begin(), kExtra.end());
        return n;
    }();
    return names;
}

std::vector<std::string> expand_checks(const std::vector<std::string>& names) {
    std::vector<std::string> out;
    auto add = [&](const std::string& n) {
        if (std::find(out.begin(), out.end(), n) == out.end()) out.push_back(n);
    };
    for (const auto& n : names) {
        if (n == "safety" || n == "all") {
            for (const auto& x : kSafety) add(x);
            if (n == "all")
                for (const auto& x : kExtra) add(x);
        } else if (std::find(check_names().begin(), check_names().end(), n) != check_names().end()) {
            add(n);
        } else {
            throw Error("unknown check '" + n + "'");
        }
    }
    return out;
}

CheckReport cost_verdicts(const Scenario& s, const CostReport& costs) {
    CheckReport r;
    Verdict storage{"storage", true, ""};
    for (const auto& c : s.configs) {
        auto it = costs.storage.per_config.find(c.id);
        if (it == costs.storage.per_config.end()) continue;
        std::optional<Units> bound;
        if (c.treas)
            bound = Units(static_cast<std::int64_t>((c.treas->delta + 1) * c.treas->n), static_cast<std::int64_t>(c.treas->k));
        else if (c.flavor == DapFlavor::abd)
            bound = Units(static_cast<std::int64_t>(c.servers.size()));
        if (!storage.detail.empty()) storage.detail += "; ";
        storage.detail += to_string(c.id) + " peak " + units_text(it->second.max_units);
        if (!bound) continue;
        storage.detail += " bound " + units_text(*bound);
        if (it->second.max_units > *bound) storage.pass = false;
    }
    r.add(storage);

    Verdict comm{"comm", true, ""};
    const auto& home = s.config(s.initial());
    if (s.mode != RunMode::single || !home.treas) {
        comm.detail = "not applicable: bounds cover single erasure-coded configurations";
    } else {
        auto n = static_cast<std::int64_t>(home.treas->n), k = static_cast<std::int64_t>(home.treas->k);
        Units write_bound(n, k), read_bound(static_cast<std::int64_t>(home.treas->delta + 2) * n, k);
        Units worst_w{0}, worst_r{0};
        double eps = 0;
        for (const auto& op : costs.ops) {
            if (!op.complete) continue;
            eps = std::max(eps, op.epsilon_bytes);
            if (op.kind == "write") {
                worst_w = std::max(worst_w, op.units);
                if (op.units > write_bound) comm.pass = false;
            } else if (op.kind == "read") {
                worst_r = std::max(worst_r, op.units);
                if (op.units > read_bound) comm.pass = false;
            }
        }
        comm.detail = "max write " + units_text(worst_w) + " (bound " + units_text(write_bound) + "), max read " +
                      units_text(worst_r) + " (bound " + units_text(read_bound) + "), max header bytes " +
                      std::to_string(static_cast<long long>(eps));
    }
    r.add(comm);

    Verdict latency{"latency", true, ""};
    for (const auto& c : costs.latency.checks)
        if (!c.pass) {
            latency.pass = false;
            latency.detail = c.action + " op " + std::to_string(c.op_id) + " by " + to_string(c.client) + " took " +
                             std::to_string(c.measured) + " ticks, outside [" + std::to_string(c.lo) + ", " +
                             (c.hi ? std::to_string(*c.hi) : std::string("inf")) + "]";
            break;
        }
    if (latency.pass) latency.detail = std::to_string(costs.latency.checks.size()) + " measurements";
    r.add(latency);
    return r;
}

Evaluation evaluate(const Scenario& s, const RunOutput& out, const std::vector<std::string>& checks) {
    Evaluation ev;
    ev.quiescent = out.result.reason == StopReason::quiescent;
    ev.all = check_all(out.trace, ev.quiescent);
    ev.all.add(Verdict{"client-errors", out.failures.empty(),
                       out.failures.empty() ? "" : out.failures.front()});
    ev.all.add(Verdict{"completion", ev.quiescent && out.pending_ops == 0,
                       std::to_string(out.pending_ops) + " pending operations" +
                           (ev.quiescent ? "" : ", event budget exhausted")});
    ev.costs = cost_report(out.trace);
    ev.all.append(cost_verdicts(s, ev.costs));
    for (const auto& name : expand_checks(checks))
        if (const auto* v = ev.all.find(name)) ev.requested.add(*v);
    return ev;
}

nlohmann::ordered_json report_json(const Scenario& s, const RunOutput& out, const Evaluation& ev) {
    using json = nlohmann::ordered_json;
    json j;
    j["seed"] = s.sim.seed;
    j["mode"] = std::string(to_string(s.mode));
    j["pass"] = ev.pass();
    j["run"] = {{"stop", out.result.reason == StopReason::quiescent ? "quiescent" : "budget-exhausted"},
                {"events", out.result.events},
                {"end_time", out.result.end_time},
                {"pending_ops", out.pending_ops},
                {"warnings", out.warnings},
                {"client_errors", out.failures}};
    auto verdicts = [](const CheckReport& r) {
        json a = json::array();
        for (const auto& v : r.verdicts) a.push_back({{"name", v.name}, {"pass", v.pass}, {"detail", v.detail}});
        return a;
    };
    j["requested"] = verdicts(ev.requested);
    j["verdicts"] = verdicts(ev.all);

    json storage;
    storage["value_size"] = ev.costs.storage.value_size;
    storage["max_total_units"] = to_string(ev.costs.storage.max_total);
    storage["bytes_at_max_total"] = ev.costs.storage.bytes_at_max_total;
    json per = json::object();
    for (const auto& [cfg, c] : ev.costs.storage.per_config)
        per[to_string(cfg)] = {{"max_units", to_string(c.max_units)},
                               {"max_units_decimal", to_double(c.max_units)},
                               {"bytes_at_max", c.bytes_at_max},
                               {"at", c.at}};
    storage["per_config"] = per;
    j["storage"] = storage;

    json ops = json::array();
    for (const auto& op : ev.costs.ops)
        ops.push_back({{"op", op.op_id},
                       {"client", to_string(op.client)},
                       {"kind", op.kind},
                       {"complete", op.complete},
                       {"units", to_string(op.units)},
                       {"units_decimal", to_double(op.units)},
                       {"payload_bytes", op.payload_bytes},
                       {"header_bytes", op.epsilon_bytes}});
    j["communication"] = ops;

    json lat;
    json tally = json::object();
    for (const auto& [name, t] : ev.costs.latency.tally()) tally[name] = {{"pass", t.first}, {"fail", t.second}};
    lat["tally"] = tally;
    if (ev.costs.latency.install_time) lat["install_time"] = *ev.costs.latency.install_time;
    json bad = json::array();
    for (const auto& c : ev.costs.latency.checks)
        if (!c.pass)
            bad.push_back({{"action", c.action},
                           {"op", c.op_id},
                           {"client", to_string(c.client)},
                           {"measured", c.measured},
                           {"lo", c.lo},
                           {"hi", c.hi ? json(*c.hi) : json(nullptr)},
                           {"note", c.note}});
    lat["violations"] = bad;
    j["latency"] = lat;

    json reads = json::array();
    for (const auto& r : read_concurrency(out.trace, read_context(out.trace)))
        reads.push_back({{"read", r.read_id}, {"valid", r.valid}, {"completed", r.completed}, {"requeried", r.requeried}, {"lambda", r.lambda}, {"delta", r.delta}});
    j["reads"] = reads;
    return j;
}

}  // namespace ares
