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

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "ares/common.hpp"
#include "ares/messages.hpp"
#include "ares/trace.hpp"

namespace ares {

enum class DelayPolicy { uniform, fast_recon_slow_client, fifo };

std::string_view to_string(DelayPolicy p);
std::optional<DelayPolicy> parse_policy(std::string_view text);

/// Pins the delay range of messages from `src` to `dst`; nullopt matches anyone.
struct LinkRule {
    std::optional<ProcessId> src;
    std::optional<ProcessId> dst;
    Tick lo = 1;
    Tick hi = 1;

    bool operator==(const LinkRule&) const = default;
};

struct SimConfig {
    std::uint64_t seed = 1;
    Tick d_min = 1;
    Tick d_max = 1;
    Tick consensus_delay = 0;
    DelayPolicy policy = DelayPolicy::uniform;
    std::uint64_t budget = 1'000'000;
    std::vector<LinkRule> links;

    /// Throws ConfigError if delays are not 0 < d_min <= d_max or a link rule leaves that range.
    void validate() const;
};

struct CrashTrigger {
    enum class Kind { at_time, after_sends, on_action };

    ProcessId who;
    Kind kind = Kind::at_time;
    Tick time = 0;
    std::uint64_t sends = 0;
    std::string action;

    bool operator==(const CrashTrigger&) const = default;
};

class Simulator;

class Process {
public:
    Process(Simulator& sim, ProcessId id) : sim_(sim), id_(id) {}
    virtual ~Process() = default;
    Process(const Process&) = delete;
    Process& operator=(const Process&) = delete;

    ProcessId id() const { return id_; }
    Simulator& sim() { return sim_; }
    virtual void on_message(const Envelope& env) = 0;

protected:
    Simulator& sim_;
    ProcessId id_;
};

enum class StopReason { quiescent, budget_exhausted };

struct RunResult {
    StopReason reason = StopReason::quiescent;
    std::uint64_t events = 0;
    Tick end_time = 0;
};

/// Single-threaded discrete-event loop over reliable asynchronous channels.
class Simulator {
public:
    explicit Simulator(SimConfig config);
    ~Simulator();

    const SimConfig& config() const { return config_; }
    Tick now() const { return now_; }

    Process& add_process(std::unique_ptr<Process> p);
    Process* find(ProcessId id) const;
    bool known(ProcessId id) const { return find(id) != nullptr; }

    /// Runs `fn` at `at` unless `owner` has crashed by then.
    void schedule(Tick at, ProcessId owner, std::function<void()> fn);

    /// Enqueues one envelope; fills id and times. Returns 0 if the sender is crashed.
    std::uint64_t send(Envelope env);
    /// Sends to every target atomically, counted as one send event for crash triggers.
    void multicast(const Envelope& proto, const std::vector<ProcessId>& targets);

    void add_crash_trigger(const CrashTrigger& t);
    void crash(ProcessId id, std::string note = {});
    bool crashed(ProcessId id) const { return crashed_.count(id) > 0; }
    const std::set<ProcessId>& crashed_set() const { return crashed_; }
    /// Fires on-action triggers; true if `id` is (now) crashed.
    bool before_action(ProcessId id, std::string_view action);

    /// Appends with the current time unless the subject is crashed.
    void emit(TraceEvent e);

    std::uint64_t next_op_id() { return ++op_counter_; }
    std::uint64_t next_round_id() { return ++round_counter_; }

    RunResult run();
    const Trace& trace() const { return trace_; }
    Trace take_trace() { return std::move(trace_); }

private:
    struct Event {
        Tick time;
        std::uint64_t seq;
        std::function<void()> fn;
    };
    struct Later {
        bool operator()(const Event& a, const Event& b) const {
            return a.time != b.time ? a.time > b.time : a.seq > b.seq;
        }
    };

    Tick draw_delay(const Envelope& env);
    std::uint64_t enqueue(Envelope env);
    void count_send(ProcessId src);
    void deliver(const Envelope& env);

    SimConfig config_;
    Tick now_ = 0;
    std::uint64_t seq_ = 0;
    std::uint64_t msg_counter_ = 0;
    std::uint64_t op_counter_ = 0;
    std::uint64_t round_counter_ = 0;
    std::priority_queue<Event, std::vector<Event>, Later> queue_;
    std::map<ProcessId, std::unique_ptr<Process>> processes_;
    std::set<ProcessId> crashed_;
    std::map<ProcessId, std::uint64_t> sends_;
    std::map<std::pair<ProcessId, ProcessId>, Tick> last_delivery_;
    std::vector<CrashTrigger> triggers_;
    Trace trace_;
};

/// Deterministic 64-bit mix used for delay draws and generated values.
std::uint64_t splitmix64(std::uint64_t x);

}  // namespace ares
