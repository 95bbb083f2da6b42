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

#include "ares/metrics.hpp"

#include <algorithm>
#include <set>

namespace ares {

double to_double(Units u) { return static_cast<double>(u.numerator()) / static_cast<double>(u.denominator()); }

std::map<std::string, std::pair<std::size_t, std::size_t>> LatencyReport::tally() const {
    std::map<std::string, std::pair<std::size_t, std::size_t>> out;
    for (const auto& c : checks) (c.pass ? out[c.action].first : out[c.action].second)++;
    return out;
}

StorageReport storage_cost(const Trace& trace) {
    StorageReport r;
    r.value_size = read_context(trace).initial_value.size();
    std::map<std::pair<ProcessId, ConfigId>, std::pair<Units, std::uint64_t>> latest;
    std::map<ConfigId, std::pair<Units, std::uint64_t>> per;
    Units total{0};
    std::uint64_t total_bytes = 0;
    for (const auto& e : trace) {
        if (e.kind != EventKind::state_change || e.name != "storage" || !e.cfg || !e.units) continue;
        auto& slot = latest[{e.subject, *e.cfg}];
        auto bytes = e.payload_bytes.value_or(0);
        auto& cfg = per[*e.cfg];
        cfg.first += *e.units - slot.first;
        cfg.second = cfg.second + bytes - slot.second;
        total += *e.units - slot.first;
        total_bytes = total_bytes + bytes - slot.second;
        slot = {*e.units, bytes};
        auto& peak = r.per_config[*e.cfg];
        if (cfg.first > peak.max_units) peak = ConfigStorage{cfg.first, cfg.second, e.time};
        if (total > r.max_total) {
            r.max_total = total;
            r.bytes_at_max_total = total_bytes;
        }
    }
    return r;
}

std::vector<OpCost> comm_costs(const Trace& trace) {
    auto vsize = read_context(trace).initial_value.size();
    std::vector<OpCost> ops;
    std::map<std::uint64_t, std::size_t> index;
    for (const auto& e : trace) {
        if ((e.kind == EventKind::invoke || e.kind == EventKind::respond) && !e.parent_op && e.op_id &&
            (e.name == "read" || e.name == "write" || e.name == "reconfig")) {
            if (e.kind == EventKind::invoke) {
                index[*e.op_id] = ops.size();
                ops.push_back(OpCost{*e.op_id, e.subject, e.name});
            } else if (index.count(*e.op_id)) {
                ops[index[*e.op_id]].complete = true;
            }
        } else if (e.kind == EventKind::send && e.op_id) {
            auto it = index.find(*e.op_id);
            if (it == index.end()) continue;
            auto& op = ops[it->second];
            if (e.units) op.units += *e.units;
            op.payload_bytes += e.payload_bytes.value_or(0);
        }
    }
    for (auto& op : ops)
        op.epsilon_bytes = static_cast<double>(op.payload_bytes) - to_double(op.units) * static_cast<double>(vsize);
    return ops;
}

OpCost comm_cost(const Trace& trace, std::uint64_t op_id) {
    for (auto& op : comm_costs(trace)) {
        if (op.op_id != op_id) continue;
        if (!op.complete) throw Error("operation " + std::to_string(op_id) + " did not complete");
        return op;
    }
    throw Error("no top-level operation " + std::to_string(op_id));
}

Tick install_lower_bound(std::size_t k, Tick d, Tick consensus_delay) {
    return 4 * d * (k * (k + 1) / 2) + k * (consensus_delay + 2 * d);
}

namespace {

struct Span {
    std::uint64_t id;
    std::string name;
    ProcessId client;
    std::optional<std::uint64_t> parent;
    const TraceEvent* in = nullptr;
    const TraceEvent* out = nullptr;
};

}  // namespace

LatencyReport latency_audit(const Trace& trace) {
    auto ctx = read_context(trace);
    if (!ctx.d_min || !ctx.d_max) throw Error("trace has no delay parameters in its preamble");
    const Tick d = *ctx.d_min, D = *ctx.d_max, cn = ctx.consensus_delay.value_or(0);

    std::vector<Span> spans;
    std::map<std::uint64_t, std::size_t> index;
    std::map<std::uint64_t, std::size_t> requeries;
    for (const auto& e : trace) {
        if (e.kind == EventKind::invoke && e.op_id) {
            index[*e.op_id] = spans.size();
            spans.push_back(Span{*e.op_id, e.name, e.subject, e.parent_op, &e, nullptr});
        } else if (e.kind == EventKind::respond && e.op_id && index.count(*e.op_id)) {
            spans[index[*e.op_id]].out = &e;
        } else if (e.kind == EventKind::state_change && e.name == "undecodable-max-tag" && e.op_id) {
            ++requeries[*e.op_id];
            if (e.parent_op) ++requeries[*e.parent_op];
        }
    }
    // Top-level ops that touched a configuration with multi-round primitives.
    std::set<std::uint64_t> touches_ldr;
    std::map<std::uint64_t, std::uint64_t> top_of;
    for (const auto& s : spans) {
        auto top = s.parent ? top_of[*s.parent] : s.id;
        top_of[s.id] = top;
        if (s.in->cfg && ctx.flavors.count(*s.in->cfg) && ctx.flavors.at(*s.in->cfg) == "ldr" &&
            (s.name == "get-tag" || s.name == "get-data" || s.name == "put-data"))
            touches_ldr.insert(top);
    }

    LatencyReport r;
    std::optional<Tick> first_reconfig, last_added;
    for (const auto& s : spans) {
        if (s.name == "reconfig" && !s.parent) {
            ++r.reconfigs;
            first_reconfig = std::min(first_reconfig.value_or(s.in->time), s.in->time);
        }
        if (!s.out) continue;
        if (s.name == "add-config") last_added = std::max(last_added.value_or(0), s.out->time);

        LatencyCheck c{s.name, s.id, s.client, s.out->time - s.in->time};
        Tick rounds = 0;
        if (s.name == "put-config" || s.name == "read-next-config") {
            rounds = 1;
        } else if (s.name == "get-tag" || s.name == "get-data" || s.name == "put-data") {
            auto flavor = s.in->cfg && ctx.flavors.count(*s.in->cfg) ? ctx.flavors.at(*s.in->cfg) : "";
            if (flavor == "ldr")
                rounds = s.name == "get-tag" ? 1 : s.name == "put-data" ? 2 : 3;
            else
                rounds = 1 + (requeries.count(s.id) ? requeries.at(s.id) : 0);
            c.note = flavor + ", " + std::to_string(rounds) + " round(s)";
        } else if (s.name == "read-config") {
            auto span = s.out->seq->nu() - *s.in->mu + 1;
            c.lo = 4 * d * span;
            c.hi = 4 * D * span;
            c.note = "nu-mu+1 = " + std::to_string(span);
        } else if (s.name == "propose") {
            c.lo = cn + 2 * d;
            c.hi = cn + 2 * D;
        } else if ((s.name == "read" || s.name == "write") && !s.parent && s.in->mu && s.out->index) {
            if (touches_ldr.count(s.id) || requeries.count(s.id)) continue;
            c.lo = 0;
            c.hi = 6 * D * (*s.out->index - *s.in->mu + 2);
            c.note = "nu " + std::to_string(*s.out->index) + ", mu " + std::to_string(*s.in->mu);
        } else {
            continue;
        }
        if (rounds) {
            c.lo = 2 * d * rounds;
            c.hi = 2 * D * rounds;
        }
        c.pass = c.measured >= c.lo && (!c.hi || c.measured <= *c.hi);
        r.checks.push_back(std::move(c));
    }
    if (first_reconfig && last_added) r.install_time = *last_added - *first_reconfig;
    return r;
}

CostReport cost_report(const Trace& trace) {
    CostReport r;
    r.storage = storage_cost(trace);
    r.ops = comm_costs(trace);
    r.latency = latency_audit(trace);
    return r;
}

}  // namespace ares
