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

#include "ares/harness.hpp"

#include <set>

#include "ares/ares_client.hpp"
#include "ares/consensus.hpp"
#include "ares/dap.hpp"
#include "ares/recon.hpp"
#include "ares/server.hpp"

namespace ares {

namespace {

Task<void> client_script(ClientProcess& c, const ClientSpec& spec, const Scenario& s, Signals& signals) {
    const auto& world = c.world();
    const auto& home = world.config(world.initial);
    std::uint32_t writes = 0;
    for (const auto& op : spec.ops) {
        for (const auto& label : op.after) co_await signals.wait(c.id(), label);
        if (op.at) co_await c.sleep_until(*op.at);

        TraceEvent in;
        Bytes value;
        if (op.kind == OpSpec::Kind::write) {
            ++writes;
            value = op.value ? *op.value : generated_value(s.sim.seed, c.id(), writes, s.value_size);
            in.value = value;
        }
        if (op.kind == OpSpec::Kind::reconfig) in.cfg = op.target;
        if (s.mode == RunMode::ares) in.mu = c.cseq.mu();
        const char* name = op.kind == OpSpec::Kind::read ? "read" : op.kind == OpSpec::Kind::write ? "write" : "reconfig";
        auto id = c.invoke(name, std::move(in));

        TraceEvent out;
        if (s.mode == RunMode::single) {
            out.cfg = home.id;
            if (op.kind == OpSpec::Kind::write) {
                Tag t;
                if (s.tmpl == Template::a2)
                    t = co_await a2_write(c, home, std::move(value));
                else
                    t = co_await a1_write(c, home, std::move(value));
                out.tag = t;
            } else {
                TaggedValue tv;
                if (s.tmpl == Template::a2)
                    tv = co_await a2_read(c, home);
                else
                    tv = co_await a1_read(c, home);
                out.tag = tv.tag;
                out.value = std::move(tv.value);
            }
        } else {
            if (op.kind == OpSpec::Kind::write) {
                out.tag = co_await ares_write(c, std::move(value));
            } else if (op.kind == OpSpec::Kind::read) {
                auto tv = co_await ares_read(c);
                out.tag = tv.tag;
                out.value = std::move(tv.value);
            } else {
                auto label = op.label;
                out.cfg = co_await reconfig(c, *op.target, [&signals, label] {
                    if (label) signals.fire(*label + ":added");
                });
            }
            out.index = c.cseq.nu();
            out.mu = c.cseq.mu();
        }
        c.respond(id, std::move(out));
        if (op.label) signals.fire(*op.label);
    }
}

void emit_preamble(Simulator& sim, const Scenario& s, const World& world) {
    auto base = [] {
        TraceEvent e;
        e.kind = EventKind::state_change;
        e.subject = kBottomWriter;
        return e;
    };
    auto e = base();
    e.name = "initial-value";
    e.cfg = world.initial;
    e.value = world.initial_value;
    sim.emit(std::move(e));

    e = base();
    e.name = "sim";
    e.note = "seed=" + std::to_string(s.sim.seed) + " d_min=" + std::to_string(s.sim.d_min) +
             " d_max=" + std::to_string(s.sim.d_max) + " consensus_delay=" + std::to_string(s.sim.consensus_delay) +
             " policy=" + std::string(to_string(s.sim.policy)) + " mode=" + std::string(to_string(s.mode));
    sim.emit(std::move(e));

    for (const auto& [id, c] : world.configs) {
        e = base();
        e.name = "config";
        e.cfg = id;
        e.note = std::string(to_string(c.flavor));
        if (c.treas) e.index = c.treas->delta;
        sim.emit(std::move(e));
    }
}

}  // namespace

RunOutput run_scenario(const Scenario& s) { return run_scenario(s, {}); }

RunOutput run_scenario(const Scenario& s, const std::function<void(const Simulator&)>& inspect) {
    RunOutput out;
    out.warnings = validate_scenario(s);

    World world;
    for (const auto& c : s.configs) world.configs.emplace(c.id, c);
    world.initial = s.initial();
    world.initial_value = s.v0();
    world.mutation = s.mutation;
    world.transfer = s.transfer;

    Simulator sim(s.sim);
    Signals signals(sim);
    emit_preamble(sim, s, world);

    std::set<ProcessId> servers;
    for (const auto& c : s.configs) servers.insert(c.servers.begin(), c.servers.end());
    for (auto id : servers) sim.add_process(std::make_unique<ServerProcess>(sim, id, world));
    for (const auto& c : s.configs) sim.add_process(std::make_unique<ConsensusProcess>(sim, c.id));

    // Initial storage is visible from time zero.
    for (auto id : world.config(world.initial).servers) static_cast<ServerProcess*>(sim.find(id))->slot(world.initial);

    std::vector<ClientProcess*> clients;
    for (const auto& spec : s.clients) {
        auto& c = static_cast<ClientProcess&>(sim.add_process(std::make_unique<ClientProcess>(sim, spec.id, world)));
        c.set_script(client_script(c, spec, s, signals));
        clients.push_back(&c);
    }
    for (const auto& c : s.crashes) sim.add_crash_trigger(c.trigger);

    out.result = sim.run();
    for (auto* c : clients) {
        if (!c->failure()) continue;
        try {
            std::rethrow_exception(c->failure());
        } catch (const std::exception& e) {
            out.failures.push_back(to_string(c->id()) + ": " + e.what());
        }
    }
    if (inspect) inspect(sim);
    out.trace = sim.take_trace();

    std::map<std::uint64_t, ProcessId> open;
    for (const auto& e : out.trace) {
        if (e.parent_op || !e.op_id || !is_client(e.subject)) continue;
        if (e.kind == EventKind::invoke) open[*e.op_id] = e.subject;
        if (e.kind == EventKind::respond) open.erase(*e.op_id);
    }
    for (const auto& [op, who] : open)
        if (!sim.crashed(who)) ++out.pending_ops;
    return out;
}

}  // namespace ares
