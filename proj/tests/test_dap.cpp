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

#include <random>

#include "ares/dap.hpp"
#include "ares/server.hpp"
#include "helpers.hpp"

using namespace ares;

namespace {

std::string single(const std::string& config, const std::string& extra = "") {
    return R"(
[sim]
seed: 1
d_min: 1
d_max: 8
value_size: 24
)" + extra + "\n" + config + R"(
[client w1]
op: write at 0
op: write
op: write

[client w2]
op: write at 3
op: write

[client r1]
op: read at 1
op: read
op: read
op: read

[client r2]
op: read at 5
op: read
)";
}

const std::string kAbd = R"(
[config 0]
flavor: abd
servers: s1 s2 s3 s4 s5
)";

const std::string kLdr = R"(
[config 0]
flavor: ldr
directories: s1 s2 s3
replicas: s3 s4 s5
f: 1
)";

const std::string kTreas = R"(
[config 0]
flavor: treas
servers: s1 s2 s3 s4 s5 s6
code: 6 4
delta: 3
)";

void sweep(const Scenario& base, const std::vector<std::string>& checks, std::uint64_t seeds = 40) {
    for (std::uint64_t seed = 1; seed <= seeds; ++seed) {
        auto s = base;
        s.sim.seed = seed;
        auto out = run_scenario(s);
        auto ev = evaluate(s, out, checks);
        INFO("seed " << seed << "\n" << testing::failing(ev.requested));
        CHECK(ev.pass());
    }
}

}  // namespace

TEST_CASE("template A1 is atomic over each DAP") {
    const std::vector<std::string> checks{"safety", "completion"};
    SUBCASE("abd") { sweep(parse_scenario(single(kAbd)), checks); }
    SUBCASE("ldr") { sweep(parse_scenario(single(kLdr)), checks); }
    SUBCASE("treas") { sweep(parse_scenario(single(kTreas)), checks); }
}

TEST_CASE("template A1 stays atomic with a crash inside tolerance") {
    const std::vector<std::string> checks{"safety", "completion"};
    SUBCASE("abd") { sweep(parse_scenario(single(kAbd + "\n[crash]\ncrash: s2 at 4\ncrash: s5 at 9\n")), checks); }
    SUBCASE("ldr replica") { sweep(parse_scenario(single(kLdr + "\n[crash]\ncrash: s4 at 6\n")), checks); }
    SUBCASE("ldr directory") { sweep(parse_scenario(single(kLdr + "\n[crash]\ncrash: s1 at 2\n")), checks); }
    SUBCASE("treas") { sweep(parse_scenario(single(kTreas + "\n[crash]\ncrash: s3 at 7\n")), checks); }
}

TEST_CASE("template A2 over LDR, whose sequential reads never go back") {
    auto s = parse_scenario(single(kLdr, "template: a2"));
    CHECK(s.tmpl == Template::a2);
    sweep(s, {"safety", "completion"});
}

TEST_CASE("template A2 is refused for DAPs without the sequential-read property") {
    CHECK_THROWS_AS(require_a2_compatible(DapFlavor::abd), ConfigError);
    CHECK_THROWS_AS(require_a2_compatible(DapFlavor::treas), ConfigError);
    CHECK_NOTHROW(require_a2_compatible(DapFlavor::ldr));
    auto s = parse_scenario(single(kAbd, "template: a2"));
    CHECK_THROWS_AS(run_scenario(s), ConfigError);
}

TEST_CASE("a sequential write then read returns the written value") {
    for (const auto& cfg : {kAbd, kLdr, kTreas}) {
        auto s = parse_scenario(R"(
[sim]
d_min: 1
d_max: 6
)" + cfg + R"(
[client w1]
op: write 0badc0ffee at 0 as w

[client r1]
op: read after w
)");
        RunOutput out;
        auto ev = testing::run_all(s, &out);
        auto h = extract_history(out.trace);
        REQUIRE(h.ops.size() == 2);
        CHECK(h.ops[1].value == testing::bytes("0badc0ffee"));
        CHECK(h.ops[1].tag == h.ops[0].tag);
    }
}

TEST_CASE("reading a fresh register returns the initial pair") {
    for (const auto& cfg : {kAbd, kLdr, kTreas}) {
        auto s = parse_scenario("[sim]\ninitial_value: 5151\n" + cfg + "[client r1]\nop: read at 0\n");
        RunOutput out;
        testing::run_all(s, &out);
        auto h = extract_history(out.trace);
        REQUIRE(h.ops.size() == 1);
        CHECK(h.ops[0].tag == kInitialTag);
        CHECK(h.ops[0].value == testing::bytes("5151"));
    }
}

TEST_CASE("treas write cost is exactly n/k, read cost at most (delta+2) n/k") {
    auto s = parse_scenario(single(kTreas));
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        s.sim.seed = seed;
        auto out = run_scenario(s);
        for (const auto& op : comm_costs(out.trace)) {
            if (!op.complete) continue;
            if (op.kind == "write") CHECK(op.units == Units(6, 4));
            if (op.kind == "read") CHECK(op.units <= Units(5 * 6, 4));
        }
    }
}

TEST_CASE("treas list keeps at most delta+1 coded elements, dropping the oldest") {
    std::mt19937_64 rng(2);
    for (std::size_t delta = 0; delta <= 4; ++delta) {
        TreasList list;
        list.entries.emplace(kInitialTag, CodedElement{});
        std::set<Tag> inserted{kInitialTag};
        for (int i = 0; i < 60; ++i) {
            Tag t{rng() % 30 + 1, writer(static_cast<std::uint32_t>(rng() % 3 + 1))};
            bool fresh = inserted.insert(t).second;
            CHECK(list.insert(t, CodedElement{}, delta) == fresh);
            CHECK(list.stored() <= delta + 1);
            // Elements survive on the highest tags only.
            bool seen_element = false;
            for (const auto& [tag, e] : list.entries) {
                if (e) seen_element = true;
                else CHECK(!seen_element);
            }
            CHECK(list.entries.rbegin()->second.has_value());
        }
        CHECK(list.entries.size() == inserted.size());
    }
}

TEST_CASE("ldr replicas keep every version a directory can point to") {
    auto s = parse_scenario(single(kLdr));
    std::size_t versions = 0;
    auto out = run_scenario(s, [&](const Simulator& sim) {
        for (auto id : testing::servers({3, 4, 5}))
            if (const auto* slot = static_cast<const ServerProcess*>(sim.find(id))->find_slot(ConfigId{0}))
                versions = std::max(versions, slot->versions.size());
    });
    // Five writes plus the initial version.
    CHECK(versions == 6);
    CHECK(check_server_state(out.trace).all_pass());
}
