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

#include "helpers.hpp"

using namespace ares;

TEST_CASE("generated scenarios are deterministic and valid") {
    for (const char* name : {"fuzz_mixed.scn", "fuzz_recon.scn"}) {
        auto tmpl = testing::load(name);
        for (std::uint64_t seed = 1; seed <= 50; ++seed) {
            auto a = generate_scenario(tmpl, seed);
            CHECK(serialize_scenario(a) == serialize_scenario(generate_scenario(tmpl, seed)));
            CHECK_NOTHROW(validate_scenario(a));
            CHECK(!a.fuzz);
        }
        CHECK(serialize_scenario(generate_scenario(tmpl, 1)) != serialize_scenario(generate_scenario(tmpl, 2)));
    }
}

TEST_CASE("generated scenarios draw every flavor") {
    auto tmpl = testing::load("fuzz_mixed.scn");
    std::set<DapFlavor> flavors;
    std::size_t reconfigs = 0;
    for (std::uint64_t seed = 1; seed <= 40; ++seed) {
        auto s = generate_scenario(tmpl, seed);
        for (const auto& c : s.configs) flavors.insert(c.flavor);
        for (const auto& c : s.clients)
            for (const auto& op : c.ops) reconfigs += op.kind == OpSpec::Kind::reconfig;
    }
    CHECK(flavors.size() == 3);
    CHECK(reconfigs > 20);
}

TEST_CASE("unmutated protocol survives a short fuzz") {
    FuzzOptions o;
    o.count = 60;
    auto r = fuzz(testing::load("fuzz_mixed.scn"), o);
    CHECK(r.pass());
    CHECK(r.runs == 60);
    CHECK(r.small_histories > 0);
}

TEST_CASE("dropping the server tag comparison is caught and minimized") {
    FuzzOptions o;
    o.count = 100;
    o.mutation = Mutation::no_tag_compare;
    o.stop_on_failure = true;
    auto r = fuzz(testing::load("fuzz_mixed.scn"), o);
    REQUIRE(!r.pass());
    const auto& f = r.failures.front();
    auto small = parse_scenario(f.minimized);
    auto big = parse_scenario(f.scenario);
    std::size_t small_ops = 0, big_ops = 0;
    for (const auto& c : small.clients) small_ops += c.ops.size();
    for (const auto& c : big.clients) big_ops += c.ops.size();
    CHECK(small_ops <= big_ops);
    auto again = first_safety_failure(small);
    REQUIRE(again);
    CHECK(again->name == f.verdict);
}

TEST_CASE("mutation names") {
    CHECK(parse_mutation("no-tag-compare") == Mutation::no_tag_compare);
    CHECK(parse_mutation("no-f-preference") == Mutation::no_f_preference);
    CHECK(parse_mutation("none") == Mutation::none);
    CHECK(!parse_mutation("bogus"));
}
