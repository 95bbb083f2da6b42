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

#include "ares/consensus.hpp"

namespace ares {

ConfigId ConsensusInstance::propose(ProcessId proposer, ConfigId value) {
    proposals_.emplace_back(proposer, value);
    if (!decided_) decided_ = value;
    return *decided_;
}

ConsensusProcess::ConsensusProcess(Simulator& sim, ConfigId cfg)
    : Process(sim, consensus_process(cfg)), instance_(cfg) {}

void ConsensusProcess::on_message(const Envelope& env) {
    const auto* p = std::get_if<msg::Propose>(&env.payload);
    if (!p) return;
    bool fresh = !instance_.decided();
    auto d = instance_.propose(env.src, p->value);
    if (fresh) {
        TraceEvent e;
        e.kind = EventKind::consensus_decide;
        e.subject = id_;
        e.name = "decide";
        e.cfg = instance_.cfg();
        e.entry = ConfigEntry{d, Status::pending};
        sim_.emit(std::move(e));
    }
    Envelope out;
    out.src = id_;
    out.dst = env.src;
    out.cfg = env.cfg;
    out.round = env.round;
    out.op = env.op;
    out.action = env.action;
    out.payload = msg::Decide{d};
    sim_.schedule(sim_.now() + sim_.config().consensus_delay, id_,
                  [this, out = std::move(out)]() mutable { sim_.send(std::move(out)); });
}

Task<ConfigId> propose(ClientProcess& c, ConfigId instance, ConfigId value) {
    TraceEvent in;
    in.cfg = instance;
    in.entry = ConfigEntry{value, Status::pending};
    auto id = c.invoke("propose", std::move(in));
    auto replies = co_await c.request(
        instance, {consensus_process(instance)}, [value](ProcessId) -> Payload { return msg::Propose{value}; },
        at_least(1));
    auto d = std::get<msg::Decide>(replies.front().payload).value;
    TraceEvent out;
    out.cfg = instance;
    out.entry = ConfigEntry{d, Status::pending};
    c.respond(id, std::move(out));
    co_return d;
}

}  // namespace ares
