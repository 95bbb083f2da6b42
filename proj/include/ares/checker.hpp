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
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ares/trace.hpp"

namespace ares {

struct Verdict {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct CheckReport {
    std::vector<Verdict> verdicts;

    bool all_pass() const;
    const Verdict* find(std::string_view name) const;
    void add(Verdict v) { verdicts.push_back(std::move(v)); }
    void append(const CheckReport& other);
};

enum class OpKind { read, write, reconfig };

/// One top-level client operation. Times are trace positions so that
/// same-tick events keep their execution order.
struct Operation {
    std::uint64_t id = 0;
    ProcessId client;
    OpKind kind = OpKind::read;
    std::size_t invoke = 0;
    std::optional<std::size_t> respond;
    std::optional<Tag> tag;
    std::optional<Bytes> value;  // written value, or the value a read returned

    bool complete() const { return respond.has_value(); }
};

struct History {
    std::vector<Operation> ops;
    Bytes initial_value;
};

/// Facts about the run recorded in the trace preamble.
struct TraceContext {
    Bytes initial_value;
    std::map<ConfigId, std::string> flavors;
    std::map<ConfigId, std::uint64_t> delta;
    // Delay parameters of the run, when the preamble records them.
    std::optional<Tick> d_min, d_max, consensus_delay;
};

TraceContext read_context(const Trace& trace);
History extract_history(const Trace& trace);

/// Tag-based check of the atomicity properties. A pass implies the history
/// is linearizable; the witness names the offending pair on failure.
Verdict check_atomicity(const History& h);

/// Exhaustive search for a legal sequential order. Returns nullopt when the
/// history has more than `limit` operations.
std::optional<bool> brute_force_linearizable(const History& h, std::size_t limit = 10);

Verdict check_well_formed(const Trace& trace);
/// C1, C2 and, for configurations listed in `c3_configs`, C3.
CheckReport check_dap_properties(const Trace& trace, const TraceContext& ctx);
CheckReport check_recon_lemmas(const Trace& trace);
CheckReport check_consensus(const Trace& trace, bool run_quiescent);
/// ABD server and LDR directory tags never decrease; LDR replicas hold what they are asked for.
CheckReport check_server_state(const Trace& trace);

struct ReadConcurrency {
    std::uint64_t read_id = 0;
    bool valid = false;
    bool completed = false;
    bool requeried = false;  // its first round found the max tag undecodable
    std::size_t lambda = 0;
    std::uint64_t delta = 0;
};

/// |Lambda| for one read; throws Error if the read is not valid.
std::size_t compute_read_concurrency(const Trace& trace, std::uint64_t read_op);
/// Per-read concurrency of every read whose get-data runs on an erasure-coded configuration.
std::vector<ReadConcurrency> read_concurrency(const Trace& trace, const TraceContext& ctx);
/// Every valid read with |Lambda| <= delta completed, decoding in its first round.
Verdict check_liveness(const Trace& trace, const TraceContext& ctx);

/// Runs every safety checker.
CheckReport check_all(const Trace& trace, bool run_quiescent);

}  // namespace ares
