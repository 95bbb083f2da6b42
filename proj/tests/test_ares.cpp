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

#include "ares/server.hpp"
#include "helpers.hpp"

using namespace ares;

namespace {

bool is(const TraceEvent& e, EventKind k, std::string_view name) { return e.kind == k && e.name == name; }

}  // namespace

TEST_CASE("bundled ARES scenarios pass every safety check across seeds") {
    for (const char* name : {"ares_mixed.scn", "transfer_treas.scn"}) {
        auto base = testing::load(name);
        for (std::uint64_t seed = 1; seed <= 30; ++seed) {
            auto s = base;
            s.sim.seed = seed;
            auto out = run_scenario(s);
            auto ev = evaluate(s, out, {"safety", "termination", "completion"});
            INFO(name << " seed " << seed << "\n" << testing::failing(ev.requested));
            CHECK(ev.pass());
        }
    }
}

TEST_CASE("writes chase new configurations until read-config finds none") {
    auto s = testing::load("latency_chain.scn");
    auto out = run_scenario(s);
    // Every write's last put-data lands in the configuration its response reports as last.
    std::map<std::uint64_t, ConfigId> last_put;
    std::map<std::uint64_t, std::size_t> puts;
    for (const auto& e : out.trace)
        if (is(e, EventKind::invoke, "put-data") && e.subject == writer(1)) {
            last_put[*e.parent_op] = *e.cfg;
            ++puts[*e.parent_op];
        }
    std::size_t multi = 0;
    for (const auto& e : out.trace) {
        if (!is(e, EventKind::respond, "write") || e.parent_op) continue;
        REQUIRE(last_put.count(*e.op_id));
        CHECK(last_put[*e.op_id] == ConfigId{static_cast<std::int64_t>(*e.index)});
        multi += puts[*e.op_id] > 1;
    }
    CHECK(multi > 0);
}

TEST_CASE("direct transfer forwards coded elements without the value reaching the reconfigurer") {
    auto s = testing::load("transfer_treas.scn");
    auto out = run_scenario(s);
    auto fwd = testing::count_events(out.trace, [](const TraceEvent& e) { return is(e, EventKind::send, "FWD-CODE-ELEM"); });
    CHECK(fwd > 0);
    for (const auto& e : out.trace)
        if (e.subject == reconfigurer(1) && e.kind == EventKind::invoke) CHECK(e.name != "get-data");
}

TEST_CASE("direct transfer falls back to the client path between non-coded configurations") {
    auto s = testing::load("ares_mixed.scn");
    s.transfer = TransferMode::direct;
    auto out = run_scenario(s);
    auto ev = evaluate(s, out, {"safety", "completion"});
    CHECK(ev.pass());
    CHECK(testing::count_events(out.trace, [](const TraceEvent& e) { return e.name == "transfer-fallback"; }) > 0);
}

TEST_CASE("each target acknowledges a forwarded tag once, however many copies arrive") {
    auto s = testing::load("transfer_treas.scn");
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        s.sim.seed = seed;
        auto out = run_scenario(s);
        std::map<ProcessId, std::size_t> copies, acks;
        for (const auto& e : out.trace) {
            if (is(e, EventKind::deliver, "FWD-CODE-ELEM")) ++copies[e.subject];
            if (is(e, EventKind::send, "ACK") && e.peer == reconfigurer(1) && e.subject.index >= 7) ++acks[e.subject];
        }
        for (std::uint32_t i = 7; i <= 10; ++i) {
            CHECK(copies[server(i)] > 3);
            CHECK(acks[server(i)] == 1);
        }
    }
}

TEST_CASE("a reconfigurer crashing before the forward request leaves no fragments behind") {
    auto s = testing::load("transfer_treas.scn");
    s.crashes.push_back(CrashSpec{CrashTrigger{reconfigurer(1), CrashTrigger::Kind::on_action, 0, 0, "forward-code-element"}});
    s.allow_overload = true;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        s.sim.seed = seed;
        std::size_t staged = 0, target_tags = 0;
        auto out = run_scenario(s, [&](const Simulator& sim) {
            for (std::uint32_t i = 7; i <= 10; ++i)
                if (const auto* slot = static_cast<const ServerProcess*>(sim.find(server(i)))->find_slot(ConfigId{1})) {
                    staged += slot->staged.size();
                    target_tags += slot->list.entries.size() - 1;
                }
        });
        CHECK(testing::count_events(out.trace, [](const TraceEvent& e) { return e.name == "REQ-FW-CODE-ELEM"; }) == 0);
        CHECK(testing::count_events(out.trace, [](const TraceEvent& e) { return e.name == "FWD-CODE-ELEM"; }) == 0);
        CHECK(staged == 0);
        CHECK(target_tags == 0);
        auto ev = evaluate(s, out, {"safety"});
        CHECK(ev.pass());
    }
}

TEST_CASE("forward requests reach all live sources or none, wherever the reconfigurer crashes") {
    auto base = testing::load("transfer_treas.scn");
    base.allow_overload = true;
    std::set<std::size_t> outcomes;
    for (std::uint64_t n = 1; n <= 40; ++n) {
        auto s = base;
        s.crashes.push_back(CrashSpec{CrashTrigger{reconfigurer(1), CrashTrigger::Kind::after_sends, 0, n}});
        auto out = run_scenario(s);
        std::set<ProcessId> got;
        for (const auto& e : out.trace)
            if (is(e, EventKind::deliver, "REQ-FW-CODE-ELEM")) got.insert(e.subject);
        std::size_t live = 0;
        for (std::uint32_t i = 1; i <= 6; ++i) {
            bool crashed = false;
            for (const auto& e : out.trace)
                if (e.kind == EventKind::crash && e.subject == server(i) && e.time <= out.result.end_time) crashed = true;
            live += !crashed;
        }
        INFO("crash after " << n << " sends");
        CHECK((got.empty() || got.size() >= live));
        outcomes.insert(got.size());
        CHECK(evaluate(s, out, {"safety"}).pass());
    }
    // Both sides of the all-or-none boundary occur in the sweep.
    CHECK(outcomes.count(0) == 1);
    CHECK(outcomes.size() >= 2);
}
