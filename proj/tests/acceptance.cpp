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

// Acceptance run: one PASS/FAIL line per criterion, then a non-zero exit if any failed.

#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>

#include "ares/codec.hpp"
#include "ares/server.hpp"
#include "helpers.hpp"

using namespace ares;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += (ok ? "" : "FAILED ") + what;
    }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x, int prec = 2) {
    std::ostringstream out;
    out.setf(std::ios::fixed);
    out.precision(prec);
    out << x;
    return out.str();
}

std::string units(Units u) { return to_string(u); }

// Per-verdict failure counts over a fuzz corpus, plus cross-check figures.
struct Corpus {
    std::size_t runs = 0;
    std::size_t cross_checked = 0;
    std::size_t cross_mismatch = 0;
    std::map<std::string, std::size_t> failures;
    std::map<DapFlavor, std::size_t> get_data_by_flavor;
    std::size_t reconfigs_done = 0;
    double seconds = 0;
};

Corpus run_corpus(const std::string& name, std::size_t count) {
    Corpus c;
    auto tmpl = testing::load(name);
    auto t0 = Clock::now();
    for (std::uint64_t seed = 1; seed <= count; ++seed) {
        auto s = generate_scenario(tmpl, seed);
        auto out = run_scenario(s);
        auto report = check_all(out.trace, out.result.reason == StopReason::quiescent);
        for (const auto& v : report.verdicts)
            if (!v.pass) ++c.failures[v.name];
        auto h = extract_history(out.trace);
        if (auto lin = brute_force_linearizable(h)) {
            ++c.cross_checked;
            if (*lin != check_atomicity(h).pass) ++c.cross_mismatch;
        }
        for (const auto& e : out.trace) {
            if (e.kind == EventKind::respond && e.name == "get-data" && e.cfg) ++c.get_data_by_flavor[s.config(*e.cfg).flavor];
            if (e.kind == EventKind::respond && e.name == "reconfig") ++c.reconfigs_done;
        }
        ++c.runs;
    }
    c.seconds = seconds_since(t0);
    return c;
}

template <typename K>
std::size_t count_of(const std::map<K, std::size_t>& m, const K& key) {
    auto it = m.find(key);
    return it == m.end() ? 0 : it->second;
}

std::size_t failures_of(const Corpus& c, const std::string& verdict) { return count_of(c.failures, verdict); }

const Corpus& mixed_corpus() {
    static const Corpus c = run_corpus("fuzz_mixed.scn", 1000);
    return c;
}

const Corpus& recon_corpus() {
    static const Corpus c = run_corpus("fuzz_recon.scn", 1000);
    return c;
}

Outcome storage_bound() {
    Outcome o;
    auto s = testing::load("treas_storage.scn");
    auto t0 = Clock::now();
    auto out = run_scenario(s);
    auto st = storage_cost(out.trace);
    auto secs = seconds_since(t0);
    const auto& c = s.config(ConfigId{0});
    std::size_t writes = 0;
    for (const auto& cl : s.clients)
        for (const auto& op : cl.ops) writes += op.kind == OpSpec::Kind::write;
    o.require(c.treas->n == 6 && c.treas->k == 4 && c.treas->delta == 2 && writes == 20 && s.crashes.size() == 1,
              "scenario n=6 k=4 delta=2, " + std::to_string(writes) + " writes, " + std::to_string(s.crashes.size()) +
                  " crash");
    auto peak = st.per_config[ConfigId{0}].max_units;
    Units bound(static_cast<std::int64_t>((c.treas->delta + 1) * c.treas->n), static_cast<std::int64_t>(c.treas->k));
    o.require(peak <= bound, "peak storage " + units(peak) + " <= " + units(bound));
    auto header = static_cast<double>(st.per_config[ConfigId{0}].bytes_at_max) - to_double(peak) * static_cast<double>(s.value_size);
    o.detail += " (header bytes at peak " + fmt(header, 0) + ")";
    o.require(secs < 1.0, "runtime " + fmt(secs, 3) + " s < 1 s");
    return o;
}

Outcome comm_bounds() {
    Outcome o;
    auto s = testing::load("treas_storage.scn");
    auto out = run_scenario(s);
    const auto& t = *s.config(ConfigId{0}).treas;
    auto n = static_cast<std::int64_t>(t.n), k = static_cast<std::int64_t>(t.k);
    Units wb(n, k), rb(static_cast<std::int64_t>(t.delta + 2) * n, k);
    auto elem = element_size(t.k, s.value_size);
    Units worst_w{0}, worst_r{0};
    std::uint64_t worst_wb = 0, worst_rb = 0;
    double eps = 0;
    std::size_t reads = 0, writes = 0;
    for (const auto& op : comm_costs(out.trace)) {
        if (!op.complete) continue;
        eps = std::max(eps, op.epsilon_bytes);
        if (op.kind == "write") {
            ++writes;
            worst_w = std::max(worst_w, op.units);
            worst_wb = std::max(worst_wb, op.payload_bytes);
        } else if (op.kind == "read") {
            ++reads;
            worst_r = std::max(worst_r, op.units);
            worst_rb = std::max(worst_rb, op.payload_bytes);
        }
    }
    o.require(writes == 20 && reads > 0, std::to_string(writes) + " writes, " + std::to_string(reads) + " reads measured");
    o.require(worst_w <= wb, "max write " + units(worst_w) + " <= " + units(wb));
    o.require(worst_r <= rb, "max read " + units(worst_r) + " <= " + units(rb));
    // In bytes: each unit of 1/k is one element of the value plus its framing share.
    o.require(worst_wb <= t.n * elem && worst_rb <= (t.delta + 2) * t.n * elem,
              "payload bytes write " + std::to_string(worst_wb) + " <= " + std::to_string(t.n * elem) + ", read " +
                  std::to_string(worst_rb) + " <= " + std::to_string((t.delta + 2) * t.n * elem));
    o.detail += " (header epsilon <= " + fmt(eps, 0) + " bytes per op)";
    return o;
}

Outcome atomicity_fuzz() {
    Outcome o;
    const auto& c = mixed_corpus();
    o.require(c.runs == 1000, std::to_string(c.runs) + " runs");
    o.require(c.get_data_by_flavor.size() == 3 && c.reconfigs_done > 0,
              "abd/ldr/treas get-data " + std::to_string(count_of(c.get_data_by_flavor, DapFlavor::abd)) + "/" +
                  std::to_string(count_of(c.get_data_by_flavor, DapFlavor::ldr)) + "/" +
                  std::to_string(count_of(c.get_data_by_flavor, DapFlavor::treas)) + ", " + std::to_string(c.reconfigs_done) +
                  " reconfigs completed");
    o.require(failures_of(c, "atomicity") == 0, std::to_string(failures_of(c, "atomicity")) + " atomicity failures");
    o.require(c.cross_mismatch == 0 && c.cross_checked > 0,
              std::to_string(c.cross_checked) + " histories of <= 10 ops cross-checked, " +
                  std::to_string(c.cross_mismatch) + " disagreements");
    o.require(c.seconds < 120, "runtime " + fmt(c.seconds) + " s");
    return o;
}

Outcome dap_consistency() {
    Outcome o;
    const auto& c = mixed_corpus();
    for (const char* v : {"C1", "C2", "C3"})
        o.require(failures_of(c, v) == 0, std::string(v) + " failures " + std::to_string(failures_of(c, v)));
    return o;
}

Outcome recon_lemmas() {
    Outcome o;
    for (const auto* c : {&mixed_corpus(), &recon_corpus()})
        for (const char* v : {"uniqueness", "prefix", "progress", "nextC-stability"})
            o.require(failures_of(*c, v) == 0, std::string(v) + " " + std::to_string(failures_of(*c, v)));
    o.detail = "mixed and reconfiguration-heavy corpora, 1000 runs each: " + o.detail;
    return o;
}

Outcome liveness_boundary() {
    Outcome o;
    auto s = testing::load("treas_storage.scn");
    std::map<std::size_t, std::size_t> histogram;
    std::size_t bad = 0;
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        s.sim.seed = seed;
        auto out = run_scenario(s);
        for (const auto& r : read_concurrency(out.trace, read_context(out.trace))) {
            if (!r.valid) continue;
            ++histogram[r.lambda];
            if (r.lambda <= r.delta && (!r.completed || r.requeried)) ++bad;
        }
    }
    std::string h;
    for (const auto& [l, n] : histogram) h += (h.empty() ? "" : " ") + std::to_string(l) + ":" + std::to_string(n);
    o.require(histogram.count(0) && histogram.count(1) && histogram.count(2), "delta=2 family, |Lambda| histogram " + h);
    o.require(bad == 0, std::to_string(bad) + " reads with |Lambda| <= delta failed to decode in their first round");

    auto over = testing::load("treas_overload.scn");
    std::vector<std::uint64_t> seeds;
    std::size_t below = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        over.sim.seed = seed;
        auto out = run_scenario(over);
        bool hit = false;
        for (const auto& r : read_concurrency(out.trace, read_context(out.trace)))
            if (r.requeried) {
                hit = true;
                below += r.lambda <= r.delta;
            }
        if (hit) seeds.push_back(seed);
    }
    std::string list;
    for (auto x : seeds) list += (list.empty() ? "" : ",") + std::to_string(x);
    o.require(!seeds.empty(), "delta=1 companion: undecodable max tag on seeds {" + list + "}");
    o.require(below == 0, "every such read had |Lambda| > delta");
    return o;
}

Outcome latency_bounds() {
    Outcome o;
    auto chain = testing::load("latency_chain.scn");
    auto report = latency_audit(run_scenario(chain).trace);
    std::size_t put_ok = 0, put_all = 0;
    std::size_t rc_ok = 0, rc_all = 0, rw_ok = 0, rw_all = 0;
    std::string rc_example, rw_example;
    for (const auto& c : report.checks) {
        if (c.action == "put-config") {
            ++put_all;
            put_ok += c.measured == 2;
        } else if (c.action == "read-config") {
            ++rc_all;
            rc_ok += c.pass;
            if (!c.pass && rc_example.empty())
                rc_example = " (e.g. " + c.note + ": " + std::to_string(c.measured) + " < " + std::to_string(c.lo) + ")";
        } else if (c.action == "read" || c.action == "write") {
            ++rw_all;
            rw_ok += c.pass;
            if (!c.pass && rw_example.empty())
                rw_example = " (e.g. " + c.action + " " + c.note + ": " + std::to_string(c.measured) + " > " +
                             std::to_string(*c.hi) + ")";
        }
    }
    o.require(put_all > 0 && put_ok == put_all, "put-config exactly 2 ticks " + std::to_string(put_ok) + "/" + std::to_string(put_all));
    o.require(rc_all > 0 && rc_ok == rc_all,
              "read-config within [4d(l+1), 4D(l+1)] " + std::to_string(rc_ok) + "/" + std::to_string(rc_all) + rc_example);
    o.require(rw_all > 0 && rw_ok == rw_all,
              "read/write <= 6D(nu-mu+2) " + std::to_string(rw_ok) + "/" + std::to_string(rw_all) + rw_example);
    auto bound = install_lower_bound(3, 1, 2);
    o.require(report.install_time && *report.install_time >= bound,
              "install time for 3 chained reconfigs " + (report.install_time ? std::to_string(*report.install_time) : "n/a") +
                  " >= " + std::to_string(bound));

    auto term = testing::load("latency_termination.scn");
    const std::size_t k = 4;
    auto D = static_cast<double>(term.sim.d_max), cn = static_cast<double>(term.sim.consensus_delay);
    auto d_needed = static_cast<Tick>(std::ceil(3 * D / k - cn / (2.0 * (k + 2))));
    std::size_t done = 0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        term.sim.seed = seed;
        auto out = run_scenario(term);
        auto ev = evaluate(term, out, {"safety", "termination", "completion"});
        done += ev.pass();
    }
    o.require(term.sim.d_min == d_needed && done == 20,
              "k=4 D=" + std::to_string(term.sim.d_max) + " T(CN)=" + std::to_string(term.sim.consensus_delay) +
                  " d=" + std::to_string(term.sim.d_min) + ": " + std::to_string(done) + "/20 seeds terminate");
    return o;
}

Outcome treas_transfer() {
    Outcome o;
    auto base = testing::load("transfer_treas.scn");
    Bytes written;
    for (const auto& c : base.clients)
        for (const auto& op : c.ops)
            if (op.value) written = *op.value;

    // Reader after the transfer, source server crashed.
    std::size_t identical = 0, only_new = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto s = base;
        s.sim.seed = seed;
        auto out = run_scenario(s);
        for (const auto& e : out.trace) {
            if (e.kind == EventKind::respond && e.name == "read" && !e.parent_op) identical += e.value == written;
        }
        bool touched_old = false;
        for (const auto& e : out.trace)
            if (e.kind == EventKind::invoke && e.name == "get-data" && e.subject == reader(1)) touched_old |= e.cfg != ConfigId{1};
        only_new += !touched_old;
    }
    o.require(identical == 50 && only_new == 50,
              "read in C' returned the written bytes " + std::to_string(identical) + "/50, served by C' alone " +
                  std::to_string(only_new) + "/50");

    // A target server also crashes mid-transfer, after answering the tag query
    // but before storing its forwarded element. The reconfigurer then waits for
    // an ACK quorum that cannot form; the live targets must still decode.
    std::size_t decoded = 0, stuck = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto s = base;
        s.sim.seed = seed;
        s.allow_overload = true;
        s.crashes.push_back(CrashSpec{CrashTrigger{server(10), CrashTrigger::Kind::after_sends, 0, 1}});
        std::vector<CodedElement> elems;
        auto out = run_scenario(s, [&](const Simulator& sim) {
            auto h = extract_history(sim.trace());
            std::optional<Tag> tau;
            for (const auto& op : h.ops)
                if (op.kind == OpKind::write) tau = op.tag;
            if (!tau) return;
            for (std::uint32_t i = 7; i <= 10; ++i) {
                if (sim.crashed(server(i))) continue;
                const auto* slot = static_cast<const ServerProcess*>(sim.find(server(i)))->find_slot(ConfigId{1});
                if (!slot) continue;
                auto it = slot->list.entries.find(*tau);
                if (it != slot->list.entries.end() && it->second) elems.push_back(*it->second);
            }
        });
        stuck += out.pending_ops > 0;
        try {
            decoded += elems.size() == 3 && decode(CodeParams{4, 3}, elems) == written && evaluate(s, out, {"safety"}).pass();
        } catch (const CodecError&) {
        }
    }
    o.require(decoded == 50, "with s10 crashing mid-transfer, the 3 live targets decode the value " +
                                 std::to_string(decoded) + "/50 (reconfig blocked on ACKs in " + std::to_string(stuck) + ")");

    // Duplicate forwards: every copy after the first leaves one stored element and one ACK.
    std::size_t dup_ok = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto s = base;
        s.sim.seed = seed;
        auto out = run_scenario(s);
        std::map<ProcessId, std::size_t> copies, acks, stores;
        for (const auto& e : out.trace) {
            if (e.kind == EventKind::deliver && e.name == "FWD-CODE-ELEM") ++copies[e.subject];
            if (e.kind == EventKind::send && e.name == "ACK" && e.peer == reconfigurer(1) && e.subject.index >= 7) ++acks[e.subject];
            if (e.kind == EventKind::state_change && e.name == "storage" && e.cfg == ConfigId{1}) ++stores[e.subject];
        }
        bool ok = true;
        for (std::uint32_t i = 7; i <= 10; ++i) ok &= copies[server(i)] > 3 && acks[server(i)] == 1 && stores[server(i)] <= 2;
        dup_ok += ok;
    }
    o.require(dup_ok == 50, "duplicate forwards stored and acknowledged once " + std::to_string(dup_ok) + "/50");

    // Reconfigurer crashes before the forward request: nothing reaches C'.
    std::size_t clean = 0;
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        auto s = base;
        s.sim.seed = seed;
        s.crashes.push_back(CrashSpec{CrashTrigger{reconfigurer(1), CrashTrigger::Kind::on_action, 0, 0, "forward-code-element"}});
        auto out = run_scenario(s);
        auto fwd = testing::count_events(out.trace, [](const TraceEvent& e) {
            return e.name == "REQ-FW-CODE-ELEM" || e.name == "FWD-CODE-ELEM";
        });
        clean += fwd == 0 && evaluate(s, out, {"safety"}).pass();
    }
    o.require(clean == 50, "reconfigurer crash before the forward leaves no fragments and stays safe " + std::to_string(clean) + "/50");
    return o;
}

Outcome codec_mds() {
    Outcome o;
    std::mt19937_64 rng(2024);
    std::size_t ok = 0, total = 0;
    for (std::size_t n = 1; n <= 8; ++n)
        for (std::size_t k = 1; k <= n; ++k)
            for (int v = 0; v < 100; ++v) {
                Bytes value(rng() % 64);
                for (auto& b : value) b = static_cast<std::uint8_t>(rng());
                auto elems = encode(CodeParams{n, k}, value);
                for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
                    if (static_cast<std::size_t>(std::popcount(mask)) != k) continue;
                    std::vector<CodedElement> pick;
                    for (std::size_t i = 0; i < n; ++i)
                        if (mask & (1u << i)) pick.push_back(elems[i]);
                    ++total;
                    ok += decode(CodeParams{n, k}, pick) == value;
                }
            }
    o.require(ok == total, std::to_string(ok) + "/" + std::to_string(total) + " k-subset decodes identical");
    return o;
}

Outcome mutation_sensitivity() {
    Outcome o;
    FuzzOptions opts;
    opts.minimize = false;
    opts.cross_check = false;
    opts.count = 300;
    opts.mutation = Mutation::no_tag_compare;
    auto a = fuzz(testing::load("fuzz_mixed.scn"), opts);
    opts.count = 1000;
    opts.mutation = Mutation::no_f_preference;
    auto b = fuzz(testing::load("fuzz_recon.scn"), opts);
    auto names = [](const FuzzResult& r) {
        std::string s;
        for (const auto& [v, n] : r.by_verdict) s += (s.empty() ? "" : ",") + v + "=" + std::to_string(n);
        return s;
    };
    o.require(!a.pass(), "no-tag-compare: " + std::to_string(a.failures.size()) + "/" + std::to_string(a.runs) + " runs fail {" + names(a) + "}");
    o.require(!b.pass(), "no-f-preference: " + std::to_string(b.failures.size()) + "/" + std::to_string(b.runs) + " runs fail {" + names(b) + "}");
    return o;
}

}  // namespace

int main() {
    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
        {"erasure-coded storage bound", storage_bound},
        {"erasure-coded communication bounds", comm_bounds},
        {"atomicity under reconfiguration", atomicity_fuzz},
        {"DAP consistency", dap_consistency},
        {"reconfiguration lemmas", recon_lemmas},
        {"liveness boundary", liveness_boundary},
        {"latency bounds", latency_bounds},
        {"cross-parameter transfer", treas_transfer},
        {"codec MDS property", codec_mds},
        {"mutation sensitivity", mutation_sensitivity},
    };
    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        failed += !o.pass;
        std::cout << "criterion " << (i + 1) << " " << (o.pass ? "PASS" : "FAIL") << " " << criteria[i].first << ": "
                  << o.detail << std::endl;
    }
    std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria pass\n";
    return failed ? 1 : 0;
}
