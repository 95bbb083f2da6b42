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

#include "ares/netsim.hpp"

#include <algorithm>

namespace ares {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::string_view to_string(DelayPolicy p) {
    switch (p) {
        case DelayPolicy::uniform: return "uniform";
        case DelayPolicy::fast_recon_slow_client: return "fast-recon-slow-client";
        case DelayPolicy::fifo: return "fifo";
    }
    return "?";
}

std::optional<DelayPolicy> parse_policy(std::string_view text) {
    if (text == "uniform") return DelayPolicy::uniform;
    if (text == "fast-recon-slow-client") return DelayPolicy::fast_recon_slow_client;
    if (text == "fifo") return DelayPolicy::fifo;
    return std::nullopt;
}

void SimConfig::validate() const {
    if (d_min == 0 || d_min > d_max) throw ConfigError("need 0 < d_min <= d_max");
    for (const auto& l : links)
        if (l.lo < d_min || l.hi > d_max || l.lo > l.hi)
            throw ConfigError("link delay range must lie within [d_min, d_max]");
}

Simulator::Simulator(SimConfig config) : config_(std::move(config)) { config_.validate(); }

Simulator::~Simulator() {
    // Coroutine frames owned by processes must go before the queue that may
    // still reference their handles.
    processes_.clear();
}

Process& Simulator::add_process(std::unique_ptr<Process> p) {
    auto id = p->id();
    if (processes_.count(id)) throw ConfigError("duplicate process " + to_string(id));
    auto& slot = processes_[id];
    slot = std::move(p);
    return *slot;
}

Process* Simulator::find(ProcessId id) const {
    auto it = processes_.find(id);
    return it == processes_.end() ? nullptr : it->second.get();
}

void Simulator::schedule(Tick at, ProcessId owner, std::function<void()> fn) {
    queue_.push(Event{std::max(at, now_), ++seq_, [this, owner, fn = std::move(fn)] {
                          if (!crashed(owner)) fn();
                      }});
}

Tick Simulator::draw_delay(const Envelope& env) {
    Tick lo = config_.d_min, hi = config_.d_max;
    auto rule = std::find_if(config_.links.begin(), config_.links.end(), [&](const LinkRule& r) {
        return (!r.src || *r.src == env.src) && (!r.dst || *r.dst == env.dst);
    });
    if (rule != config_.links.end()) {
        lo = rule->lo;
        hi = rule->hi;
    } else if (config_.policy == DelayPolicy::fast_recon_slow_client) {
        bool recon = env.src.role == Role::reconfigurer || env.dst.role == Role::reconfigurer;
        lo = hi = recon ? config_.d_min : config_.d_max;
    }
    // Keyed on the message id so unrelated sends do not shift this draw.
    auto r = splitmix64(config_.seed ^ splitmix64(env.msg_id));
    Tick delay = lo + r % (hi - lo + 1);
    if (config_.policy == DelayPolicy::fifo) {
        auto& last = last_delivery_[{env.src, env.dst}];
        auto at = std::max(now_ + delay, last);
        last = at;
        delay = at - now_;
    }
    return delay;
}

std::uint64_t Simulator::enqueue(Envelope env) {
    if (!known(env.dst)) throw ConfigError("send to unknown process " + to_string(env.dst));
    env.msg_id = ++msg_counter_;
    env.send_time = now_;
    env.deliver_time = now_ + draw_delay(env);

    TraceEvent e;
    e.kind = EventKind::send;
    e.subject = env.src;
    e.name = std::string(message_name(env.payload));
    e.peer = env.dst;
    e.msg_id = env.msg_id;
    if (env.op) e.op_id = env.op;
    if (env.action) e.parent_op = env.action;
    e.cfg = env.cfg;
    auto units = message_units(env.payload);
    if (units != Units(0)) e.units = units;
    if (auto bytes = message_payload_bytes(env.payload)) e.payload_bytes = bytes;
    emit(std::move(e));

    auto id = env.msg_id;
    auto at = env.deliver_time;
    queue_.push(Event{at, ++seq_, [this, env = std::move(env)] { deliver(env); }});
    return id;
}

std::uint64_t Simulator::send(Envelope env) {
    if (crashed(env.src)) return 0;
    auto src = env.src;
    auto id = enqueue(std::move(env));
    count_send(src);
    return id;
}

void Simulator::multicast(const Envelope& proto, const std::vector<ProcessId>& targets) {
    if (crashed(proto.src)) return;
    for (auto t : targets) {
        auto env = proto;
        env.dst = t;
        enqueue(std::move(env));
    }
    count_send(proto.src);
}

void Simulator::count_send(ProcessId src) {
    auto n = ++sends_[src];
    for (const auto& t : triggers_)
        if (t.who == src && t.kind == CrashTrigger::Kind::after_sends && t.sends == n)
            crash(src, "after_sends " + std::to_string(n));
}

void Simulator::deliver(const Envelope& env) {
    if (crashed(env.dst)) return;
    TraceEvent e;
    e.kind = EventKind::deliver;
    e.subject = env.dst;
    e.name = std::string(message_name(env.payload));
    e.peer = env.src;
    e.msg_id = env.msg_id;
    e.cfg = env.cfg;
    emit(std::move(e));
    processes_.at(env.dst)->on_message(env);
}

void Simulator::add_crash_trigger(const CrashTrigger& t) {
    triggers_.push_back(t);
    if (t.kind == CrashTrigger::Kind::at_time)
        schedule(t.time, t.who, [this, who = t.who, time = t.time] { crash(who, "at " + std::to_string(time)); });
}

void Simulator::crash(ProcessId id, std::string note) {
    if (crashed(id)) return;
    TraceEvent e;
    e.kind = EventKind::crash;
    e.subject = id;
    e.name = "crash";
    e.note = std::move(note);
    emit(std::move(e));
    crashed_.insert(id);
}

bool Simulator::before_action(ProcessId id, std::string_view action) {
    for (const auto& t : triggers_)
        if (t.who == id && t.kind == CrashTrigger::Kind::on_action && t.action == action)
            crash(id, "on " + t.action);
    return crashed(id);
}

void Simulator::emit(TraceEvent e) {
    if (crashed(e.subject)) return;
    e.time = now_;
    trace_.push_back(std::move(e));
}

RunResult Simulator::run() {
    RunResult result;
    while (!queue_.empty()) {
        if (result.events >= config_.budget) {
            result.reason = StopReason::budget_exhausted;
            break;
        }
        // priority_queue::top is const; the event is consumed right away.
        auto ev = std::move(const_cast<Event&>(queue_.top()));
        queue_.pop();
        now_ = ev.time;
        ev.fn();
        ++result.events;
    }
    result.end_time = now_;
    return result;
}

}  // namespace ares
