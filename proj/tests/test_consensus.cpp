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

#include "ares/consensus.hpp"
#include "helpers.hpp"

using namespace ares;

TEST_CASE("first proposal is decided and sticks") {
    ConsensusInstance con(ConfigId{0});
    CHECK(!con.decided());
    CHECK(con.propose(reconfigurer(1), ConfigId{5}) == ConfigId{5});
    CHECK(con.propose(reconfigurer(2), ConfigId{7}) == ConfigId{5});
    CHECK(con.propose(reconfigurer(1), ConfigId{9}) == ConfigId{5});
    CHECK(con.decided() == ConfigId{5});
    CHECK(con.proposals().size() == 3);
}

namespace {

// Three reconfigurers race to extend configuration 0 with different proposals.
const char* kRace = R"(
[sim]
seed: 1
d_min: 1
d_max: 9
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
servers: s3 s4 s5

[config 3]
flavor: abd
servers: s1 s4 s5

[client rc1]
op: reconfig 1 at 0

[client rc2]
op: reconfig 2 at 0

[client rc3]
op: reconfig 3 at 1

[client w1]
op: write at 0
op: write

[client r1]
op: read at 2
op: read
)";

}  // namespace

TEST_CASE("racing reconfigurers agree on every index") {
    auto base = parse_scenario(kRace);
    std::set<std::int64_t> winners;
    for (std::uint64_t seed = 1; seed <= 60; ++seed) {
        auto s = base;
        s.sim.seed = seed;
        auto out = run_scenario(s);
        auto ev = evaluate(s, out, {"safety", "termination", "completion"});
        INFO("seed " << seed << "\n" << testing::failing(ev.requested));
        CHECK(ev.pass());
        // The decision for configuration 0 names exactly one successor.
        std::set<std::int64_t> decided;
        for (const auto& e : out.trace)
            if (e.kind == EventKind::consensus_decide && e.cfg == ConfigId{0} && e.entry)
                decided.insert(e.entry->cfg.value);
        CHECK(decided.size() <= 1);
        winners.insert(decided.begin(), decided.end());
    }
    // Different seeds let different proposals win.
    CHECK(winners.size() >= 2);
}

TEST_CASE("consensus checker flags disagreement") {
    Trace t;
    auto decide = [&](ProcessId who, std::int64_t v) {
        TraceEvent e;
        e.kind = EventKind::consensus_decide;
        e.subject = who;
        e.name = "decide";
        e.cfg = ConfigId{0};
        e.entry = ConfigEntry{ConfigId{v}, Status::pending};
        t.push_back(e);
    };
    decide(reconfigurer(1), 1);
    decide(reconfigurer(2), 2);
    auto r = check_consensus(t, true);
    const auto* agreement = r.find("agreement");
    REQUIRE(agreement);
    CHECK(!agreement->pass);
}
