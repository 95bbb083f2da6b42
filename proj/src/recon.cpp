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

#include "ares/recon.hpp"

#include "ares/consensus.hpp"
#include "ares/dap.hpp"
#include "ares/transfer.hpp"

namespace ares {

std::optional<ConfigEntry> choose_next(const std::vector<std::optional<ConfigEntry>>& replies,
                                       bool prefer_finalized) {
    auto first_with = [&](Status s) -> std::optional<ConfigEntry> {
        for (const auto& r : replies)
            if (r && r->status == s) return r;
        return std::nullopt;
    };
    auto preferred = prefer_finalized ? Status::finalized : Status::pending;
    auto other = prefer_finalized ? Status::pending : Status::finalized;
    if (auto e = first_with(preferred)) return e;
    return first_with(other);
}

Task<std::optional<ConfigEntry>> read_next_config(ClientProcess& c, const Configuration& cfg) {
    auto id = c.invoke("read-next-config", TraceEvent{.cfg = cfg.id});
    auto replies = co_await c.request(
        cfg.id, cfg.servers, [](ProcessId) -> Payload { return msg::ReadConfig{}; }, has_quorum(cfg.quorums));
    std::vector<std::optional<ConfigEntry>> nexts;
    for (const auto& r : replies) nexts.push_back(std::get<msg::NextConfig>(r.payload).next);
    auto next = choose_next(nexts, c.world().mutation != Mutation::no_f_preference);
    TraceEvent out;
    out.cfg = cfg.id;
    out.entry = next;
    c.respond(id, std::move(out));
    co_return next;
}

Task<void> put_config(ClientProcess& c, const Configuration& cfg, ConfigEntry entry) {
    auto id = c.invoke("put-config", TraceEvent{.cfg = cfg.id, .entry = entry});
    co_await c.request(
        cfg.id, cfg.servers, [entry](ProcessId) -> Payload { return msg::WriteConfig{entry}; },
        has_quorum(cfg.quorums));
    c.respond(id, TraceEvent{.cfg = cfg.id, .entry = entry});
}

Task<ConfigSequence> read_config(ClientProcess& c, ConfigSequence seq) {
    auto mu = seq.mu();
    auto id = c.invoke("read-config", TraceEvent{.mu = mu, .seq = seq});
    const auto& world = c.world();
    auto next = co_await read_next_config(c, world.config(seq[mu].cfg));
    while (next) {
        ++mu;
        seq.set(mu, *next);
        co_await put_config(c, world.config(seq[mu - 1].cfg), seq[mu]);
        next = co_await read_next_config(c, world.config(seq[mu].cfg));
    }
    c.respond(id, TraceEvent{.mu = seq.mu(), .seq = seq});
    co_return seq;
}

Task<ConfigSequence> add_config(ClientProcess& c, ConfigSequence seq, ConfigId proposal) {
    auto nu = seq.nu();
    auto id = c.invoke("add-config", TraceEvent{.cfg = proposal, .seq = seq});
    const auto& last = c.world().config(seq[nu].cfg);
    auto d = co_await propose(c, last.id, proposal);
    seq.set(nu + 1, ConfigEntry{d, Status::pending});
    co_await put_config(c, last, seq[nu + 1]);
    c.respond(id, TraceEvent{.index = nu + 1, .entry = seq[nu + 1], .seq = seq});
    co_return seq;
}

Task<void> update_config(ClientProcess& c, const ConfigSequence& seq) {
    auto id = c.invoke("update-config", TraceEvent{.mu = seq.mu(), .seq = seq});
    Tag moved;
    if (c.world().transfer == TransferMode::direct) {
        moved = co_await update_config_direct(c, seq);
    } else {
        moved = co_await update_config_through_client(c, seq);
    }
    c.respond(id, TraceEvent{.cfg = seq[seq.nu()].cfg, .tag = moved});
}

Task<ConfigSequence> finalize_config(ClientProcess& c, ConfigSequence seq) {
    auto nu = seq.nu();
    auto id = c.invoke("finalize-config", TraceEvent{.index = nu, .seq = seq});
    seq.set(nu, ConfigEntry{seq[nu].cfg, Status::finalized});
    co_await put_config(c, c.world().config(seq[nu - 1].cfg), seq[nu]);
    c.respond(id, TraceEvent{.index = nu, .entry = seq[nu], .seq = seq});
    co_return seq;
}

Task<ConfigId> reconfig(ClientProcess& c, ConfigId proposal, std::function<void()> on_added) {
    c.cseq = co_await read_config(c, c.cseq);
    c.cseq = co_await add_config(c, c.cseq, proposal);
    if (on_added) on_added();
    co_await update_config(c, c.cseq);
    c.cseq = co_await finalize_config(c, c.cseq);
    co_return c.cseq[c.cseq.nu()].cfg;
}

}  // namespace ares
