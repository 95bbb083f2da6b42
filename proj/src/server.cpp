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

#include "ares/server.hpp"

#include <algorithm>

namespace ares {

std::size_t TreasList::stored() const {
    return static_cast<std::size_t>(
        std::count_if(entries.begin(), entries.end(), [](const auto& kv) { return kv.second.has_value(); }));
}

bool TreasList::insert(const Tag& t, CodedElement e, std::size_t delta) {
    if (entries.count(t)) return false;
    entries.emplace(t, std::move(e));
    // Counting only entries that still hold an element; a tag-only entry is
    // metadata and never trimmed.
    while (stored() > delta + 1) {
        auto victim = std::find_if(entries.begin(), entries.end(), [](const auto& kv) { return kv.second.has_value(); });
        victim->second.reset();
    }
    return true;
}

ServerProcess::ServerProcess(Simulator& sim, ProcessId id, const World& world) : Process(sim, id), world_(world) {}

const ServerSlot* ServerProcess::find_slot(ConfigId cfg) const {
    auto it = slots_.find(cfg);
    return it == slots_.end() ? nullptr : &it->second;
}

ServerSlot& ServerProcess::slot(ConfigId cfg) {
    auto it = slots_.find(cfg);
    if (it != slots_.end()) return it->second;
    const auto& c = world_.config(cfg);
    auto& s = slots_[cfg];
    const auto& v0 = world_.initial_value;
    switch (c.flavor) {
        case DapFlavor::abd:
            s.tag = kInitialTag;
            s.value = v0;
            break;
        case DapFlavor::ldr:
            s.tag = kInitialTag;
            s.loc = c.ldr->replicas;
            if (std::find(c.ldr->replicas.begin(), c.ldr->replicas.end(), id_) != c.ldr->replicas.end())
                s.versions.emplace(kInitialTag, v0);
            break;
        case DapFlavor::treas: {
            auto elems = encode(CodeParams{c.treas->n, c.treas->k}, v0);
            s.list.entries.emplace(kInitialTag, std::move(elems[c.index_of(id_)]));
            break;
        }
    }
    note_storage(c, s);
    return s;
}

void ServerProcess::reply(const Envelope& to, Payload payload) {
    Envelope env;
    env.src = id_;
    env.dst = to.src;
    env.cfg = to.cfg;
    env.round = to.round;
    env.op = to.op;
    env.action = to.action;
    env.payload = std::move(payload);
    sim_.send(std::move(env));
}

void ServerProcess::note_storage(const Configuration& c, const ServerSlot& s) {
    TraceEvent e;
    e.kind = EventKind::state_change;
    e.subject = id_;
    e.name = "storage";
    e.cfg = c.id;
    Units units(0);
    std::uint64_t bytes = 0;
    switch (c.flavor) {
        case DapFlavor::abd:
            units = 1;
            bytes = s.value.size();
            break;
        case DapFlavor::ldr:
            for (const auto& [t, v] : s.versions) {
                units += 1;
                bytes += v.size();
            }
            break;
        case DapFlavor::treas:
            for (const auto& [t, el] : s.list.entries)
                if (el) {
                    units += Units(1, static_cast<std::int64_t>(el->k));
                    bytes += el->payload.size();
                }
            break;
    }
    e.units = units;
    e.payload_bytes = bytes;
    sim_.emit(std::move(e));
}

void ServerProcess::note_tag(const Configuration& c, const Tag& t, std::string role) {
    TraceEvent e;
    e.kind = EventKind::state_change;
    e.subject = id_;
    e.name = "tag";
    e.cfg = c.id;
    e.tag = t;
    e.note = std::move(role);
    sim_.emit(std::move(e));
}

void ServerProcess::on_message(const Envelope& env) {
    const auto& c = world_.config(env.cfg);
    auto& s = slot(env.cfg);
    const bool compare = world_.mutation != Mutation::no_tag_compare;

    std::visit(
        [&](const auto& m) {
            using M = std::decay_t<decltype(m)>;
            if constexpr (std::is_same_v<M, msg::QueryTag>) {
                reply(env, msg::TagReply{c.flavor == DapFlavor::treas ? s.list.max_tag() : s.tag});
            } else if constexpr (std::is_same_v<M, msg::Query>) {
                reply(env, msg::DataReply{TaggedValue{s.tag, s.value}});
            } else if constexpr (std::is_same_v<M, msg::Write>) {
                if (!compare || m.tv.tag > s.tag) {
                    s.tag = m.tv.tag;
                    s.value = m.tv.value;
                    note_tag(c, s.tag, "abd");
                    note_storage(c, s);
                }
                reply(env, msg::Ack{});
            } else if constexpr (std::is_same_v<M, msg::QueryTagLocation>) {
                reply(env, msg::TagLocation{s.tag, s.loc});
            } else if constexpr (std::is_same_v<M, msg::PutMetadata>) {
                if (!compare || m.tag > s.tag) {
                    s.tag = m.tag;
                    s.loc = m.loc;
                    note_tag(c, s.tag, "directory");
                }
                reply(env, msg::Ack{});
            } else if constexpr (std::is_same_v<M, msg::PutData>) {
                if (s.versions.emplace(m.tv.tag, m.tv.value).second) note_storage(c, s);
                reply(env, msg::Ack{});
            } else if constexpr (std::is_same_v<M, msg::GetData>) {
                auto it = s.versions.find(m.tag);
                TraceEvent e;
                e.kind = EventKind::state_change;
                e.subject = id_;
                e.name = "replica-serve";
                e.cfg = c.id;
                e.tag = m.tag;
                e.note = it == s.versions.end() ? "miss" : "hit";
                sim_.emit(std::move(e));
                reply(env, msg::ReplicaData{m.tag, it == s.versions.end() ? std::nullopt : std::optional(it->second)});
            } else if constexpr (std::is_same_v<M, msg::QueryList>) {
                msg::ListReply r;
                r.list.assign(s.list.entries.begin(), s.list.entries.end());
                reply(env, std::move(r));
            } else if constexpr (std::is_same_v<M, msg::WriteElement>) {
                if (s.list.insert(m.tag, m.element, c.treas->delta)) note_storage(c, s);
                reply(env, msg::Ack{});
            } else if constexpr (std::is_same_v<M, msg::ReadConfig>) {
                reply(env, msg::NextConfig{s.next});
            } else if constexpr (std::is_same_v<M, msg::WriteConfig>) {
                if (!s.next || s.next->status == Status::pending) {
                    if (s.next != m.entry) {
                        s.next = m.entry;
                        TraceEvent e;
                        e.kind = EventKind::state_change;
                        e.subject = id_;
                        e.name = "nextC";
                        e.cfg = c.id;
                        e.entry = m.entry;
                        sim_.emit(std::move(e));
                    }
                }
                reply(env, msg::Ack{});
            } else if constexpr (std::is_same_v<M, msg::ReqFwCodeElem>) {
                auto it = s.list.entries.find(m.tag);
                if (it == s.list.entries.end() || !it->second) return;
                const auto& target = world_.config(m.target);
                Envelope fwd;
                fwd.src = id_;
                fwd.cfg = m.target;
                fwd.round = env.round;
                fwd.op = env.op;
                fwd.action = env.action;
                fwd.payload = msg::FwdCodeElem{m.tag, *it->second, c.id, env.src};
                sim_.multicast(fwd, target.servers);
            } else if constexpr (std::is_same_v<M, msg::FwdCodeElem>) {
                on_forwarded(c, s, env, m);
            }
            // Replies to clients and consensus messages never reach servers.
        },
        env.payload);
}

void ServerProcess::on_forwarded(const Configuration& c, ServerSlot& s, const Envelope& env,
                                 const msg::FwdCodeElem& m) {
    if (s.recons.count(m.rc)) return;
    if (!s.list.entries.count(m.tag)) {
        auto& staged = s.staged[m.tag];
        staged.emplace(m.element.index, m.element);
        if (staged.size() >= m.element.k) {
            const auto& source = world_.config(m.source);
            std::vector<CodedElement> elems;
            for (const auto& [i, e] : staged) elems.push_back(e);
            auto value = decode(CodeParams{source.treas->n, m.element.k}, elems);
            auto mine = encode(CodeParams{c.treas->n, c.treas->k}, value);
            s.list.insert(m.tag, std::move(mine[c.index_of(id_)]), c.treas->delta);
            s.staged.erase(m.tag);
            note_storage(c, s);
        }
    }
    if (s.list.entries.count(m.tag)) {
        s.recons.insert(m.rc);
        Envelope ack;
        ack.src = id_;
        ack.dst = m.rc;
        ack.cfg = env.cfg;
        ack.round = env.round;
        ack.op = env.op;
        ack.action = env.action;
        ack.payload = msg::Ack{};
        sim_.send(std::move(ack));
    }
}

}  // namespace ares
