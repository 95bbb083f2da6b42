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

#pragma once

#include <coroutine>
#include <exception>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "ares/netsim.hpp"
#include "ares/task.hpp"

namespace ares {

enum class Mutation { none, no_tag_compare, no_f_preference };
std::string_view to_string(Mutation m);
std::optional<Mutation> parse_mutation(std::string_view text);

enum class TransferMode { client, direct };

/// Static facts every process may consult: configuration definitions,
/// the initial value and run-wide switches.
struct World {
    std::map<ConfigId, Configuration> configs;
    ConfigId initial;
    Bytes initial_value;
    Mutation mutation = Mutation::none;
    TransferMode transfer = TransferMode::client;

    const Configuration& config(ConfigId id) const;
};

inline ProcessId consensus_process(ConfigId c) {
    return ProcessId{Role::consensus, static_cast<std::uint32_t>(c.value)};
}

/// A writer, reader or reconfigurer. Protocol code runs as coroutines that
/// suspend on request rounds; replies resume them from the event loop.
class ClientProcess : public Process {
public:
    struct Reply {
        ProcessId from;
        Payload payload;
    };
    using Replies = std::vector<Reply>;
    using Until = std::function<bool(const Replies&)>;
    using Maker = std::function<Payload(ProcessId)>;

    class RequestAwaiter {
    public:
        RequestAwaiter(ClientProcess& c, ConfigId cfg, std::vector<ProcessId> targets, Maker make, Until until,
                       bool all_or_none)
            : c_(c), cfg_(cfg), targets_(std::move(targets)), make_(std::move(make)), until_(std::move(until)),
              all_or_none_(all_or_none) {}
        bool await_ready() const noexcept { return false; }
        void await_suspend(std::coroutine_handle<> h);
        Replies await_resume() { return std::move(replies_); }

    private:
        friend class ClientProcess;
        ClientProcess& c_;
        ConfigId cfg_;
        std::vector<ProcessId> targets_;
        Maker make_;
        Until until_;
        bool all_or_none_;
        Replies replies_;
        std::coroutine_handle<> handle_;
    };

    struct SleepAwaiter {
        ClientProcess& c;
        Tick at;
        bool await_ready() const noexcept { return c.sim().now() >= at; }
        void await_suspend(std::coroutine_handle<> h);
        void await_resume() const noexcept {}
    };

    ClientProcess(Simulator& sim, ProcessId id, const World& world);

    const World& world() const { return world_; }

    /// Sends `make(t)` to each target and resumes once `until` holds for the replies.
    RequestAwaiter request(ConfigId cfg, std::vector<ProcessId> targets, Maker make, Until until);
    /// As `request` with one payload delivered all-or-none to the targets.
    RequestAwaiter request_all_or_none(ConfigId cfg, std::vector<ProcessId> targets, Payload payload, Until until);
    SleepAwaiter sleep_until(Tick at) { return SleepAwaiter{*this, at}; }

    /// Emits an invoke event and opens a nested scope; returns its op id.
    std::uint64_t invoke(std::string name, TraceEvent fields = {});
    /// Emits the matching respond event and closes the innermost scope.
    void respond(std::uint64_t id, TraceEvent fields = {});
    /// Emits a state-change event attributed to the innermost scope.
    void note(std::string name, TraceEvent fields = {});
    std::uint64_t current_op() const { return scopes_.empty() ? 0 : scopes_.front().id; }
    std::uint64_t current_action() const { return scopes_.empty() ? 0 : scopes_.back().id; }
    bool crashed() const { return sim_.crashed(id_); }

    void set_script(Task<void> script);
    bool script_done() const { return script_.done(); }
    std::exception_ptr failure() const { return failure_; }

    void on_message(const Envelope& env) override;

    ConfigSequence cseq;

private:
    struct Scope {
        std::uint64_t id;
        std::uint64_t parent;
        std::string name;
    };

    Task<void> guarded(Task<void> inner);
    void open(RequestAwaiter& a, std::coroutine_handle<> h);

    const World& world_;
    std::map<std::uint64_t, RequestAwaiter*> rounds_;
    std::vector<Scope> scopes_;
    Task<void> script_;
    std::exception_ptr failure_;
};

/// Named completion events that client scripts can wait on.
class Signals {
public:
    explicit Signals(Simulator& sim) : sim_(sim) {}

    struct Awaiter {
        Signals& s;
        ProcessId who;
        std::string name;
        bool await_ready() const { return s.fired(name); }
        void await_suspend(std::coroutine_handle<> h) { s.waiters_[name].push_back({who, h}); }
        void await_resume() const noexcept {}
    };

    void fire(const std::string& name);
    bool fired(const std::string& name) const { return fired_.count(name) > 0; }
    Awaiter wait(ProcessId who, std::string name) { return Awaiter{*this, who, std::move(name)}; }

private:
    Simulator& sim_;
    std::set<std::string> fired_;
    std::map<std::string, std::vector<std::pair<ProcessId, std::coroutine_handle<>>>> waiters_;
};

/// Reply-count predicate: at least `n` replies.
ClientProcess::Until at_least(std::size_t n);
/// Quorum predicate over the repliers.
ClientProcess::Until has_quorum(const QuorumSystem& q);

}  // namespace ares
