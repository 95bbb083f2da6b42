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

#include "ares/runtime.hpp"

namespace ares {

std::string_view to_string(Mutation m) {
    switch (m) {
        case Mutation::none: return "none";
        case Mutation::no_tag_compare: return "no-tag-compare";
        case Mutation::no_f_preference: return "no-f-preference";
    }
    return "?";
}

std::optional<Mutation> parse_mutation(std::string_view text) {
    if (text == "none") return Mutation::none;
    if (text == "no-tag-compare") return Mutation::no_tag_compare;
    if (text == "no-f-preference") return Mutation::no_f_preference;
    return std::nullopt;
}

const Configuration& World::config(ConfigId id) const {
    auto it = configs.find(id);
    if (it == configs.end()) throw ConfigError("unknown configuration " + to_string(id));
    return it->second;
}

ClientProcess::ClientProcess(Simulator& sim, ProcessId id, const World& world)
    : Process(sim, id), cseq(world.initial), world_(world) {}

void ClientProcess::RequestAwaiter::await_suspend(std::coroutine_handle<> h) { c_.open(*this, h); }

void ClientProcess::SleepAwaiter::await_suspend(std::coroutine_handle<> h) {
    c.sim().schedule(at, c.id(), [h] { h.resume(); });
}

ClientProcess::RequestAwaiter ClientProcess::request(ConfigId cfg, std::vector<ProcessId> targets, Maker make,
                                                     Until until) {
    return RequestAwaiter(*this, cfg, std::move(targets), std::move(make), std::move(until), false);
}

ClientProcess::RequestAwaiter ClientProcess::request_all_or_none(ConfigId cfg, std::vector<ProcessId> targets,
                                                                 Payload payload, Until until) {
    return RequestAwaiter(
        *this, cfg, std::move(targets), [payload = std::move(payload)](ProcessId) { return payload; },
        std::move(until), true);
}

void ClientProcess::open(RequestAwaiter& a, std::coroutine_handle<> h) {
    // A crashed client stays suspended forever.
    if (crashed()) return;
    auto round = sim_.next_round_id();
    a.handle_ = h;
    rounds_[round] = &a;
    Envelope proto;
    proto.src = id_;
    proto.cfg = a.cfg_;
    proto.round = round;
    proto.op = current_op();
    proto.action = current_action();
    if (a.all_or_none_) {
        proto.payload = a.make_(id_);
        sim_.multicast(proto, a.targets_);
        return;
    }
    for (auto t : a.targets_) {
        auto env = proto;
        env.dst = t;
        env.payload = a.make_(t);
        sim_.send(std::move(env));
        if (crashed()) return;
    }
}

void ClientProcess::on_message(const Envelope& env) {
    auto it = rounds_.find(env.round);
    if (it == rounds_.end()) return;  // late reply to a finished round
    auto* a = it->second;
    a->replies_.push_back(Reply{env.src, env.payload});
    if (!a->until_(a->replies_)) return;
    rounds_.erase(it);
    a->handle_.resume();
}

std::uint64_t ClientProcess::invoke(std::string name, TraceEvent fields) {
    sim_.before_action(id_, name);
    auto id = sim_.next_op_id();
    auto parent = current_action();
    fields.kind = EventKind::invoke;
    fields.subject = id_;
    fields.name = name;
    fields.op_id = id;
    if (parent) fields.parent_op = parent;
    scopes_.push_back(Scope{id, parent, std::move(name)});
    sim_.emit(std::move(fields));
    return id;
}

void ClientProcess::respond(std::uint64_t id, TraceEvent fields) {
    if (scopes_.empty() || scopes_.back().id != id) throw Error("unbalanced respond for op " + std::to_string(id));
    auto scope = std::move(scopes_.back());
    scopes_.pop_back();
    fields.kind = EventKind::respond;
    fields.subject = id_;
    fields.name = scope.name;
    fields.op_id = id;
    if (scope.parent) fields.parent_op = scope.parent;
    sim_.emit(std::move(fields));
}

void ClientProcess::note(std::string name, TraceEvent fields) {
    fields.kind = EventKind::state_change;
    fields.subject = id_;
    fields.name = std::move(name);
    if (auto a = current_action()) fields.op_id = a;
    if (auto op = current_op(); op && op != current_action()) fields.parent_op = op;
    sim_.emit(std::move(fields));
}

Task<void> ClientProcess::guarded(Task<void> inner) {
    try {
        co_await std::move(inner);
    } catch (...) {
        failure_ = std::current_exception();
    }
}

void ClientProcess::set_script(Task<void> script) {
    script_ = guarded(std::move(script));
    sim_.schedule(0, id_, [this] { script_.start(); });
}

void Signals::fire(const std::string& name) {
    if (!fired_.insert(name).second) return;
    auto it = waiters_.find(name);
    if (it == waiters_.end()) return;
    for (const auto& w : it->second) sim_.schedule(sim_.now(), w.first, [h = w.second] { h.resume(); });
    waiters_.erase(it);
}

ClientProcess::Until at_least(std::size_t n) {
    return [n](const ClientProcess::Replies& r) { return r.size() >= n; };
}

ClientProcess::Until has_quorum(const QuorumSystem& q) {
    return [&q](const ClientProcess::Replies& r) {
        std::vector<ProcessId> from;
        from.reserve(r.size());
        for (const auto& x : r) from.push_back(x.from);
        return q.contains_quorum(from);
    };
}

}  // namespace ares
