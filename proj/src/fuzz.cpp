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

#include "ares/fuzz.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

namespace ares {

namespace {

class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}
    std::uint64_t in(std::uint64_t lo, std::uint64_t hi) { return std::uniform_int_distribution<std::uint64_t>(lo, hi)(rng_); }
    std::uint64_t in(const Range& r) { return in(r.lo, r.hi); }
    template <typename T>
    const T& pick(const std::vector<T>& v) { return v[in(0, v.size() - 1)]; }
    template <typename T>
    void shuffle(std::vector<T>& v) { std::shuffle(v.begin(), v.end(), rng_); }

private:
    std::mt19937_64 rng_;
};

std::vector<ProcessId> sample(Draw& d, std::uint32_t pool, std::size_t size) {
    std::vector<ProcessId> all;
    for (std::uint32_t i = 1; i <= pool; ++i) all.push_back(server(i));
    d.shuffle(all);
    all.resize(std::min<std::size_t>(size, all.size()));
    std::sort(all.begin(), all.end());
    return all;
}

Configuration make_config(Draw& d, ConfigId id, DapFlavor flavor, std::uint32_t pool) {
    Configuration c;
    c.id = id;
    if (flavor == DapFlavor::treas && pool >= 4) {
        auto n = d.in(4, std::min<std::uint64_t>(7, pool));
        auto k = d.in(n / 3 + 1, n - 2);
        c.flavor = DapFlavor::treas;
        c.servers = sample(d, pool, n);
        c.treas = TreasParams{n, k, d.in(1, 3)};
    } else if (flavor == DapFlavor::ldr && pool >= 3) {
        c.flavor = DapFlavor::ldr;
        LdrRoles roles{sample(d, pool, 3), sample(d, pool, 3), 1};
        c.servers = roles.directories;
        for (auto r : roles.replicas)
            if (std::find(c.servers.begin(), c.servers.end(), r) == c.servers.end()) c.servers.push_back(r);
        c.ldr = roles;
    } else {
        c.flavor = DapFlavor::abd;
        c.servers = sample(d, pool, d.in(3, std::max<std::uint64_t>(3, std::min<std::uint64_t>(5, pool))));
    }
    c.quorums = QuorumSystem::majority(c.servers);
    c.validate();
    return c;
}

}  // namespace

Scenario generate_scenario(const Scenario& tmpl, std::uint64_t seed) {
    if (!tmpl.fuzz) throw ScenarioError(0, "template has no [fuzz] section");
    const auto& f = *tmpl.fuzz;
    Draw d(seed);
    Scenario s = tmpl;
    s.fuzz.reset();
    s.sim.seed = seed;
    s.clients.clear();
    s.crashes.clear();
    s.checks = {"safety"};
    s.transfer = d.pick(f.transfers);

    std::int64_t next_id = 0;
    for (const auto& c : s.configs) next_id = std::max(next_id, c.id.value + 1);
    auto generated = d.in(f.generated_configs);
    for (std::uint64_t i = 0; i < generated && f.pool >= 3; ++i)
        s.configs.push_back(make_config(d, ConfigId{next_id++}, d.pick(f.flavors), f.pool));

    std::vector<ConfigId> targets;
    for (const auto& c : s.configs)
        if (c.id != s.initial()) targets.push_back(c.id);
    if (!targets.empty()) s.mode = RunMode::ares;

    auto schedule = [&](ClientSpec& c, std::size_t ops, auto make) {
        Tick t = d.in(f.start);
        for (std::size_t i = 0; i < ops; ++i) {
            OpSpec op = make();
            op.at = t;
            c.ops.push_back(std::move(op));
            t += d.in(f.gap);
        }
    };
    auto writers = d.in(f.writers), readers = d.in(f.readers);
    auto recons = std::min<std::uint64_t>(d.in(f.reconfigurers), targets.size());
    for (std::uint32_t i = 1; i <= writers; ++i) {
        ClientSpec c{writer(i)};
        schedule(c, d.in(f.ops), [] { return OpSpec{OpSpec::Kind::write}; });
        s.clients.push_back(std::move(c));
    }
    for (std::uint32_t i = 1; i <= readers; ++i) {
        ClientSpec c{reader(i)};
        schedule(c, d.in(f.ops), [] { return OpSpec{OpSpec::Kind::read}; });
        s.clients.push_back(std::move(c));
    }
    d.shuffle(targets);
    std::size_t next_target = 0;
    for (std::uint32_t i = 1; i <= recons; ++i) {
        ClientSpec c{reconfigurer(i)};
        auto ops = std::max<std::uint64_t>(1, d.in(f.ops));
        // Spread the remaining targets over the reconfigurers left.
        ops = std::min<std::uint64_t>(ops, targets.size() - next_target - (recons - i));
        schedule(c, ops, [&] {
            OpSpec op{OpSpec::Kind::reconfig};
            op.target = targets[next_target++];
            return op;
        });
        s.clients.push_back(std::move(c));
    }

    std::set<ProcessId> pool;
    for (const auto& c : s.configs) pool.insert(c.servers.begin(), c.servers.end());
    std::vector<ProcessId> candidates(pool.begin(), pool.end());
    d.shuffle(candidates);
    std::vector<ProcessId> down;
    auto crashes = d.in(f.crashes);
    for (auto who : candidates) {
        if (down.size() >= crashes) break;
        auto trial = down;
        trial.push_back(who);
        bool ok = std::all_of(s.configs.begin(), s.configs.end(), [&](const auto& c) { return c.tolerates(trial); });
        if (!ok) continue;
        down = trial;
        CrashTrigger t{who, CrashTrigger::Kind::at_time, d.in(f.crash_window)};
        s.crashes.push_back(CrashSpec{t});
    }
    std::vector<ProcessId> clients;
    for (const auto& c : s.clients) clients.push_back(c.id);
    d.shuffle(clients);
    auto client_crashes = std::min<std::uint64_t>(d.in(f.client_crashes), clients.size());
    for (std::uint64_t i = 0; i < client_crashes; ++i)
        s.crashes.push_back(CrashSpec{CrashTrigger{clients[i], CrashTrigger::Kind::at_time, d.in(f.crash_window)}});
    validate_scenario(s);
    return s;
}

std::optional<Verdict> first_safety_failure(const Scenario& s, RunOutput* keep) {
    auto out = run_scenario(s);
    auto ev = evaluate(s, out, {"safety"});
    std::optional<Verdict> bad;
    for (const auto& v : ev.requested.verdicts)
        if (!v.pass) {
            bad = v;
            break;
        }
    if (keep) *keep = std::move(out);
    return bad;
}

Scenario minimize_scenario(const Scenario& failing, const std::string& verdict, std::size_t max_runs) {
    Scenario best = failing;
    std::size_t runs = 0;
    auto still_fails = [&](const Scenario& s) {
        if (runs >= max_runs) return false;
        try {
            validate_scenario(s);
        } catch (const ConfigError&) {
            return false;
        }
        ++runs;
        auto v = first_safety_failure(s);
        return v && v->name == verdict;
    };
    for (bool progress = true; progress && runs < max_runs;) {
        progress = false;
        for (std::size_t i = 0; i < best.crashes.size(); ++i) {
            auto t = best;
            t.crashes.erase(t.crashes.begin() + static_cast<std::ptrdiff_t>(i));
            if (still_fails(t)) {
                best = std::move(t);
                progress = true;
                --i;
            }
        }
        for (std::size_t i = 0; i < best.clients.size(); ++i) {
            auto t = best;
            auto who = t.clients[i].id;
            t.clients.erase(t.clients.begin() + static_cast<std::ptrdiff_t>(i));
            std::erase_if(t.crashes, [&](const CrashSpec& c) { return c.trigger.who == who; });
            if (still_fails(t)) {
                best = std::move(t);
                progress = true;
                --i;
            }
        }
        for (std::size_t i = 0; i < best.clients.size(); ++i)
            for (std::size_t j = 0; j < best.clients[i].ops.size(); ++j) {
                auto t = best;
                auto& ops = t.clients[i].ops;
                ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(j));
                if (still_fails(t)) {
                    best = std::move(t);
                    progress = true;
                    --j;
                }
            }
    }
    return best;
}

FuzzResult fuzz(const Scenario& tmpl, const FuzzOptions& opts) {
    FuzzResult r;
    for (std::size_t i = 0; i < opts.count; ++i) {
        auto seed = opts.seed + i;
        auto s = generate_scenario(tmpl, seed);
        if (opts.mutation) s.mutation = *opts.mutation;
        RunOutput out;
        auto bad = first_safety_failure(s, &out);
        ++r.runs;
        if (out.result.reason == StopReason::quiescent) ++r.quiescent;
        if (opts.cross_check && !bad) {
            auto h = extract_history(out.trace);
            if (brute_force_linearizable(h)) ++r.small_histories;
        }
        if (!bad) continue;
        ++r.by_verdict[bad->name];
        FuzzFailure fail{seed, bad->name, bad->detail, serialize_scenario(s), {}};
        if (opts.minimize) fail.minimized = serialize_scenario(minimize_scenario(s, bad->name));
        if (opts.out_dir) {
            std::filesystem::create_directories(*opts.out_dir);
            auto base = std::filesystem::path(*opts.out_dir) / ("fail-" + std::to_string(seed));
            auto header = "# seed " + std::to_string(seed) + " fails " + fail.verdict + ": " + fail.detail + "\n";
            std::ofstream(base.string() + ".scn") << header << fail.scenario;
            if (opts.minimize) std::ofstream(base.string() + ".min.scn") << header << fail.minimized;
        }
        r.failures.push_back(std::move(fail));
        if (opts.stop_on_failure) break;
    }
    return r;
}

}  // namespace ares
