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

#include <doctest.h>

#include "ares/recon.hpp"
#include "ares/server.hpp"
#include "helpers.hpp"

using namespace ares;

namespace {

std::optional<ConfigEntry> P(std::int64_t c) { return ConfigEntry{ConfigId{c}, Status::pending}; }
std::optional<ConfigEntry> F(std::int64_t c) { return ConfigEntry{ConfigId{c}, Status::finalized}; }

const char* kChain = R"(
[sim]
seed: 1
d_min: 1
d_max: 10
consensus_delay: 3
mode: ares

[config 0]
flavor: abd
servers: s1 s2 s3

[config 1]
flavor: abd
servers: s2 s3 s4

[config 2]
flavor: abd
servers: s4 s5 s6

[config 3]
flavor: abd
servers: s1 s5 s6

[client rc1]
op: reconfig 1 at 0
op: reconfig 2

[client rc2]
op: reconfig 3 at 4

[client r1]
op: read at 0
op: read
op: read

[client w1]
op: write at 1
op: write
)";

// Events of the named action, in trace order.
std::vector<const TraceEvent*> responds(const Trace& t, const std::string& name) {
    std::vector<const TraceEvent*> out;
    for (const auto& e : t)
        if (e.kind == EventKind::respond && e.name == name) out.push_back(&e);
    return out;
}

}  // namespace

TEST_CASE("read-next-config prefers a finalized reply") {
    CHECK(choose_next({std::nullopt, P(2), F(2)}) == F(2));
    CHECK(choose_next({P(2), std::nullopt}) == P(2));
    CHECK(choose_next({std::nullopt, std::nullopt}) == std::nullopt);
    CHECK(choose_next({}) == std::nullopt);
    // Without the preference the first non-empty reply wins.
    CHECK(choose_next({P(2), F(2)}, false) == P(2));
}

TEST_CASE("reconfiguration lemmas hold across seeds") {
    auto base = parse_scenario(kChain);
    for (std::uint64_t seed = 1; seed <= 80; ++seed) {
        auto s = base;
        s.sim.seed = seed;
        auto out = run_scenario(s);
        auto ev = evaluate(s, out, {"safety", "termination", "completion"});
        INFO("seed " << seed << "\n" << testing::failing(ev.requested));
        CHECK(ev.pass());
    }
}

TEST_CASE("finalize writes the entry one past read-config's last index") {
    auto s = parse_scenario(kChain);
    for (std::uint64_t seed = 1; seed <= 30; ++seed) {
        s.sim.seed = seed;
        auto out = run_scenario(s);
        // Per reconfig: nu of its read-config plus one equals the finalized index.
        std::map<std::uint64_t, std::size_t> rc_nu;
        for (const auto& e : out.trace) {
            if (e.kind != EventKind::respond || !e.parent_op || !e.seq) continue;
            if (e.name == "read-config" && e.subject.role == Role::reconfigurer && !rc_nu.count(*e.parent_op))
                rc_nu[*e.parent_op] = e.seq->nu();
            if (e.name == "finalize-config") {
                REQUIRE(rc_nu.count(*e.parent_op));
                CHECK(*e.index == rc_nu[*e.parent_op] + 1);
                CHECK(e.seq->mu() == e.seq->nu());
            }
        }
    }
}

TEST_CASE("servers end with a consistent global sequence") {
    auto s = parse_scenario(kChain);
    s.sim.seed = 12;
    std::map<std::int64_t, std::optional<ConfigEntry>> next_of;
    bool agree = true;
    auto out = run_scenario(s, [&](const Simulator& sim) {
        for (std::uint32_t i = 1; i <= 6; ++i) {
            auto* sp = static_cast<const ServerProcess*>(sim.find(server(i)));
            for (std::int64_t c = 0; c <= 3; ++c) {
                const auto* slot = sp->find_slot(ConfigId{c});
                if (!slot || !slot->next) continue;
                auto [it, fresh] = next_of.emplace(c, slot->next);
                if (!fresh && it->second->cfg != slot->next->cfg) agree = false;
            }
        }
    });
    CHECK(agree);
    // One link per distinct configuration the reconfigs installed.
    std::set<ConfigId> installed;
    for (const auto* e : responds(out.trace, "reconfig")) installed.insert(*e->cfg);
    std::size_t links = 0;
    std::int64_t at = 0;
    while (next_of.count(at)) {
        at = next_of[at]->cfg.value;
        ++links;
    }
    CHECK(links == installed.size());
    CHECK(links >= 2);
}

TEST_CASE("a client reading after a reconfig completes starts from the new configuration") {
    auto s = parse_scenario(R"(
[sim]
d_min: 1
d_max: 5
consensus_delay: 1
mode: ares

[config 0]
flavor: abd
servers: s1 s2 s3

[config 1]
flavor: abd
servers: s4 s5 s6

[client w1]
op: write cafe at 0 as w

[client rc1]
op: reconfig 1 after w as rc

[client r1]
op: read after rc
)");
    RunOutput out;
    auto ev = testing::run_all(s, &out);
    CHECK(ev.all.find("atomicity")->pass);
    auto reads = responds(out.trace, "read");
    REQUIRE(reads.size() == 1);
    CHECK(reads[0]->value == testing::bytes("cafe"));
    CHECK(reads[0]->mu == 1u);
    // The read touched only configuration 1.
    for (const auto& e : out.trace)
        if (e.kind == EventKind::invoke && e.name == "get-data" && e.subject == reader(1)) CHECK(e.cfg == ConfigId{1});
}

TEST_CASE("recon checker catches a prefix violation") {
    Trace t;
    auto rc = [&](ProcessId who, std::uint64_t id, std::vector<ConfigEntry> seq) {
        TraceEvent in;
        in.kind = EventKind::invoke;
        in.subject = who;
        in.name = "read-config";
        in.op_id = id;
        in.parent_op = id + 100;
        in.seq = ConfigSequence(std::vector<ConfigEntry>{{ConfigId{0}, Status::finalized}});
        t.push_back(in);
        TraceEvent out = in;
        out.kind = EventKind::respond;
        out.seq = ConfigSequence(std::move(seq));
        t.push_back(out);
    };
    rc(reader(1), 1, {{ConfigId{0}, Status::finalized}, {ConfigId{1}, Status::pending}});
    rc(reader(2), 2, {{ConfigId{0}, Status::finalized}, {ConfigId{2}, Status::pending}});
    auto r = check_recon_lemmas(t);
    CHECK(!r.all_pass());
    CHECK(!r.find("uniqueness")->pass);
}

TEST_CASE("recon checker catches a finalized pointer that moves") {
    Trace t;
    auto next = [&](std::int64_t to, Status st) {
        TraceEvent e;
        e.kind = EventKind::state_change;
        e.subject = server(1);
        e.name = "nextC";
        e.cfg = ConfigId{0};
        e.entry = ConfigEntry{ConfigId{to}, st};
        t.push_back(e);
    };
    next(1, Status::pending);
    next(1, Status::finalized);
    CHECK(check_recon_lemmas(t).find("nextC-stability")->pass);
    next(1, Status::pending);
    auto r = check_recon_lemmas(t);
    CHECK(!r.all_pass());
}
