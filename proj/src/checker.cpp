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

#include "ares/checker.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>

namespace ares {

bool CheckReport::all_pass() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const Verdict& v) { return v.pass; });
}

const Verdict* CheckReport::find(std::string_view name) const {
    for (const auto& v : verdicts)
        if (v.name == name) return &v;
    return nullptr;
}

void CheckReport::append(const CheckReport& other) {
    verdicts.insert(verdicts.end(), other.verdicts.begin(), other.verdicts.end());
}

namespace {

std::string describe(const Operation& op) {
    std::ostringstream out;
    out << to_string(op.client) << (op.kind == OpKind::write ? " write#" : op.kind == OpKind::read ? " read#" : " reconfig#")
        << op.id;
    if (op.tag) out << " tag " << to_string(*op.tag);
    return out.str();
}

Verdict fail(std::string name, std::string detail) { return Verdict{std::move(name), false, std::move(detail)}; }
Verdict pass(std::string name, std::string detail = {}) { return Verdict{std::move(name), true, std::move(detail)}; }

bool is_top_level(const TraceEvent& e) {
    return !e.parent_op && (e.name == "read" || e.name == "write" || e.name == "reconfig");
}

// An invoke/respond pair of a client action, with trace positions.
struct Action {
    std::uint64_t id = 0;
    std::string name;
    ProcessId client;
    std::optional<std::uint64_t> parent;
    std::size_t invoke = 0;
    std::optional<std::size_t> respond;
    const TraceEvent* in = nullptr;
    const TraceEvent* out = nullptr;
};

std::vector<Action> collect_actions(const Trace& trace) {
    std::vector<Action> actions;
    std::map<std::uint64_t, std::size_t> by_id;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& e = trace[i];
        if (!e.op_id) continue;
        if (e.kind == EventKind::invoke) {
            by_id[*e.op_id] = actions.size();
            actions.push_back(Action{*e.op_id, e.name, e.subject, e.parent_op, i, std::nullopt, &e, nullptr});
        } else if (e.kind == EventKind::respond) {
            auto it = by_id.find(*e.op_id);
            if (it == by_id.end()) continue;
            actions[it->second].respond = i;
            actions[it->second].out = &e;
        }
    }
    return actions;
}

// For each query position, the element of `items` with the largest key among
// those completed before it. Items are (completion position, key, payload index).
template <typename Key>
class PrefixMax {
public:
    void add(std::size_t done_at, Key key, std::size_t who) { items_.push_back({done_at, key, who}); }
    void build() {
        std::sort(items_.begin(), items_.end(), [](const auto& a, const auto& b) { return a.done < b.done; });
        best_.clear();
        for (std::size_t i = 0; i < items_.size(); ++i) {
            if (i == 0 || items_[best_.back()].key < items_[i].key)
                best_.push_back(i);
            else
                best_.push_back(best_.back());
        }
    }
    /// Best item completed strictly before `pos`.
    std::optional<std::pair<Key, std::size_t>> before(std::size_t pos) const {
        auto it = std::lower_bound(items_.begin(), items_.end(), pos,
                                   [](const auto& item, std::size_t p) { return item.done < p; });
        if (it == items_.begin()) return std::nullopt;
        auto i = best_[static_cast<std::size_t>(it - items_.begin()) - 1];
        return std::make_pair(items_[i].key, items_[i].who);
    }

private:
    struct Item {
        std::size_t done;
        Key key;
        std::size_t who;
    };
    std::vector<Item> items_;
    std::vector<std::size_t> best_;
};

}  // namespace

TraceContext read_context(const Trace& trace) {
    TraceContext ctx;
    for (const auto& e : trace) {
        if (e.kind != EventKind::state_change || e.subject.role != Role::bottom) continue;
        if (e.name == "initial-value" && e.value) ctx.initial_value = *e.value;
        if (e.name == "sim") {
            std::istringstream in(e.note);
            std::string item;
            while (in >> item) {
                auto eq = item.find('=');
                if (eq == std::string::npos) continue;
                auto key = item.substr(0, eq);
                auto text = item.substr(eq + 1);
                std::optional<Tick>* slot = key == "d_min"             ? &ctx.d_min
                                            : key == "d_max"           ? &ctx.d_max
                                            : key == "consensus_delay" ? &ctx.consensus_delay
                                                                       : nullptr;
                if (!slot) continue;
                try {
                    *slot = static_cast<Tick>(std::stoull(text));
                } catch (const std::exception&) {
                    throw Error("bad " + key + " in trace preamble: " + text);
                }
            }
        }
        if (e.name == "config" && e.cfg) {
            ctx.flavors[*e.cfg] = e.note;
            if (e.index) ctx.delta[*e.cfg] = *e.index;
        }
    }
    return ctx;
}

History extract_history(const Trace& trace) {
    History h;
    h.initial_value = read_context(trace).initial_value;
    std::map<std::uint64_t, std::size_t> index;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& e = trace[i];
        if (e.kind == EventKind::invoke && is_top_level(e) && e.op_id) {
            Operation op;
            op.id = *e.op_id;
            op.client = e.subject;
            op.kind = e.name == "read" ? OpKind::read : e.name == "write" ? OpKind::write : OpKind::reconfig;
            op.invoke = i;
            if (op.kind == OpKind::write) op.value = e.value;
            index[op.id] = h.ops.size();
            h.ops.push_back(std::move(op));
        } else if (e.kind == EventKind::state_change && e.name == "write-tag" && e.op_id) {
            auto it = index.find(*e.op_id);
            if (it != index.end()) h.ops[it->second].tag = e.tag;
        } else if (e.kind == EventKind::respond && e.op_id) {
            auto it = index.find(*e.op_id);
            if (it == index.end() || !is_top_level(e)) continue;
            auto& op = h.ops[it->second];
            op.respond = i;
            if (op.kind != OpKind::reconfig) {
                op.tag = e.tag;
                if (op.kind == OpKind::read) op.value = e.value;
            }
        }
    }
    return h;
}

Verdict check_atomicity(const History& h) {
    const std::string name = "atomicity";
    std::map<Tag, const Operation*> writes;
    for (const auto& op : h.ops) {
        if (op.kind != OpKind::write || !op.tag) continue;
        if (op.tag == kInitialTag) return fail(name, describe(op) + " uses the initial tag");
        auto [it, fresh] = writes.emplace(*op.tag, &op);
        if (!fresh) return fail(name, "writes share a tag: " + describe(*it->second) + " and " + describe(op));
    }

    std::set<Tag> read_tags;
    for (const auto& op : h.ops) {
        if (op.kind != OpKind::read || !op.complete()) continue;
        if (!op.tag || !op.value) return fail(name, describe(op) + " completed without a result");
        read_tags.insert(*op.tag);
        if (*op.tag == kInitialTag) {
            if (*op.value != h.initial_value) return fail(name, describe(op) + " returned a foreign value with the initial tag");
            continue;
        }
        auto w = writes.find(*op.tag);
        if (w == writes.end()) return fail(name, describe(op) + " returned a tag no write produced");
        if (w->second->value != op.value) return fail(name, describe(op) + " returned a value that differs from " + describe(*w->second));
        if (w->second->invoke > *op.respond) return fail(name, describe(op) + " returned the value of the later " + describe(*w->second));
    }

    // Operations that must appear in any linearization.
    std::vector<const Operation*> pi;
    for (const auto& op : h.ops) {
        if (op.kind == OpKind::reconfig) continue;
        if (op.complete() || (op.kind == OpKind::write && op.tag && read_tags.count(*op.tag))) pi.push_back(&op);
    }
    PrefixMax<Tag> done;
    for (std::size_t i = 0; i < pi.size(); ++i)
        if (pi[i]->complete()) done.add(*pi[i]->respond, *pi[i]->tag, i);
    done.build();
    for (const auto* op : pi) {
        if (!op->tag) continue;
        auto prior = done.before(op->invoke);
        if (!prior) continue;
        const auto& [tag, who] = *prior;
        bool ok = op->kind == OpKind::write ? *op->tag > tag : *op->tag >= tag;
        if (!ok) return fail(name, describe(*pi[who]) + " precedes " + describe(*op) + " but the tags are out of order");
    }
    return pass(name, std::to_string(pi.size()) + " operations");
}

std::optional<bool> brute_force_linearizable(const History& h, std::size_t limit) {
    std::vector<const Operation*> ops;
    for (const auto& op : h.ops) {
        if (op.kind == OpKind::reconfig) continue;
        if (op.kind == OpKind::read && !op.complete()) continue;
        if (op.kind == OpKind::write && !op.value) continue;
        ops.push_back(&op);
    }
    if (ops.size() > limit) return std::nullopt;
    const auto n = ops.size();

    std::vector<Bytes> values{h.initial_value};
    auto value_id = [&](const Bytes& v) {
        auto it = std::find(values.begin(), values.end(), v);
        if (it != values.end()) return static_cast<std::size_t>(it - values.begin());
        values.push_back(v);
        return values.size() - 1;
    };
    std::vector<std::size_t> val(n);
    std::uint32_t complete_mask = 0;
    for (std::size_t i = 0; i < n; ++i) {
        val[i] = value_id(*ops[i]->value);
        if (ops[i]->complete()) complete_mask |= 1u << i;
    }

    std::set<std::pair<std::uint32_t, std::size_t>> dead;
    std::function<bool(std::uint32_t, std::size_t)> search = [&](std::uint32_t mask, std::size_t cur) -> bool {
        if ((mask & complete_mask) == complete_mask) return true;
        if (dead.count({mask, cur})) return false;
        for (std::size_t x = 0; x < n; ++x) {
            if (mask & (1u << x)) continue;
            bool minimal = true;
            for (std::size_t y = 0; y < n && minimal; ++y) {
                if (y == x || (mask & (1u << y)) || !ops[y]->complete()) continue;
                if (*ops[y]->respond < ops[x]->invoke) minimal = false;
            }
            if (!minimal) continue;
            if (ops[x]->kind == OpKind::write) {
                if (search(mask | (1u << x), val[x])) return true;
            } else if (val[x] == cur) {
                if (search(mask | (1u << x), cur)) return true;
            }
        }
        dead.insert({mask, cur});
        return false;
    };
    return search(0, 0);
}

Verdict check_well_formed(const Trace& trace) {
    const std::string name = "well-formed";
    std::map<ProcessId, std::optional<std::uint64_t>> open_top;
    std::map<ProcessId, std::set<std::uint64_t>> open;
    Tick last = 0;
    for (const auto& e : trace) {
        if (e.time < last) return fail(name, "time goes backwards at " + std::to_string(e.time));
        last = e.time;
        if (e.kind == EventKind::invoke && e.op_id) {
            open[e.subject].insert(*e.op_id);
            if (is_top_level(e)) {
                auto& top = open_top[e.subject];
                if (top) return fail(name, to_string(e.subject) + " invoked op " + std::to_string(*e.op_id) + " while op " + std::to_string(*top) + " is pending");
                top = *e.op_id;
            }
        } else if (e.kind == EventKind::respond && e.op_id) {
            if (!open[e.subject].erase(*e.op_id))
                return fail(name, to_string(e.subject) + " responded to op " + std::to_string(*e.op_id) + " without an invocation");
            if (is_top_level(e)) open_top[e.subject].reset();
        }
    }
    return pass(name);
}

CheckReport check_dap_properties(const Trace& trace, const TraceContext& ctx) {
    CheckReport report;
    auto actions = collect_actions(trace);

    std::map<Tag, Bytes> value_of;
    value_of[kInitialTag] = ctx.initial_value;
    for (const auto& e : trace)
        if ((e.name == "write-tag" || (e.name == "put-data" && e.kind == EventKind::invoke)) && e.tag && e.value)
            value_of.emplace(*e.tag, *e.value);

    struct PerConfig {
        PrefixMax<Tag> puts;
        std::map<Tag, std::size_t> first_put;  // earliest put invocation per tag
        std::vector<const Action*> gets;
        PrefixMax<Tag> reads;                  // completed get-data, for C3
    };
    std::map<ConfigId, PerConfig> per;
    for (const auto& a : actions) {
        if (!a.in || !a.in->cfg) continue;
        auto cfg = *a.in->cfg;
        if (a.name == "put-data" || a.name == "forward-code-element") {
            auto& p = per[cfg];
            auto tag = *a.in->tag;
            auto [it, fresh] = p.first_put.emplace(tag, a.invoke);
            if (!fresh) it->second = std::min(it->second, a.invoke);
            if (a.respond) p.puts.add(*a.respond, tag, 0);
        } else if (a.name == "get-tag" || a.name == "get-data") {
            auto& p = per[cfg];
            if (!a.respond) continue;
            p.gets.push_back(&a);
            if (a.name == "get-data") p.reads.add(*a.respond, *a.out->tag, 0);
        }
    }

    Verdict c1 = pass("C1"), c2 = pass("C2"), c3 = pass("C3");
    std::size_t c3_configs = 0;
    for (auto& [cfg, p] : per) {
        p.puts.build();
        p.reads.build();
        bool claims_c3 = ctx.flavors.count(cfg) && ctx.flavors.at(cfg) == "ldr";
        c3_configs += claims_c3;
        for (const auto* g : p.gets) {
            auto tag = *g->out->tag;
            if (c1.pass) {
                if (auto prior = p.puts.before(g->invoke); prior && tag < prior->first)
                    c1 = fail("C1", g->name + " op " + std::to_string(g->id) + " by " + to_string(g->client) + " in " +
                                        to_string(cfg) + " returned " + to_string(tag) + " after a put-data of " +
                                        to_string(prior->first) + " completed");
            }
            if (g->name != "get-data") continue;
            if (c2.pass) {
                const auto& value = *g->out->value;
                auto known = value_of.find(tag);
                if (tag == kInitialTag) {
                    if (value != ctx.initial_value) c2 = fail("C2", "get-data op " + std::to_string(g->id) + " returned the initial tag with another value");
                } else {
                    auto put = p.first_put.find(tag);
                    if (put == p.first_put.end() || put->second > *g->respond)
                        c2 = fail("C2", "get-data op " + std::to_string(g->id) + " in " + to_string(cfg) + " returned " + to_string(tag) + " which no earlier put-data wrote there");
                    else if (known == value_of.end() || known->second != value)
                        c2 = fail("C2", "get-data op " + std::to_string(g->id) + " returned a value that differs from the one written with " + to_string(tag));
                }
            }
            if (claims_c3 && c3.pass) {
                if (auto prior = p.reads.before(g->invoke); prior && tag < prior->first)
                    c3 = fail("C3", "get-data op " + std::to_string(g->id) + " in " + to_string(cfg) + " returned " + to_string(tag) + " after an earlier get-data returned " + to_string(prior->first));
            }
        }
    }
    if (c3.pass) c3.detail = std::to_string(c3_configs) + " configurations claim it";
    report.add(c1);
    report.add(c2);
    report.add(c3);
    return report;
}

CheckReport check_recon_lemmas(const Trace& trace) {
    CheckReport report;
    auto actions = collect_actions(trace);

    Verdict unique = pass("uniqueness");
    std::map<std::size_t, std::pair<ConfigId, std::string>> at_index;
    std::map<ConfigId, std::pair<ConfigId, std::string>> successor;
    auto record_successor = [&](ConfigId c, ConfigId next, const std::string& who) {
        auto [it, fresh] = successor.emplace(c, std::make_pair(next, who));
        if (!fresh && it->second.first != next && unique.pass)
            unique = fail("uniqueness", who + " links " + to_string(c) + " to " + to_string(next) + " but " +
                                            it->second.second + " links it to " + to_string(it->second.first));
    };

    Verdict no_revert = pass("status-monotonic");
    std::map<ProcessId, std::set<std::size_t>> finalized_seen;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& e = trace[i];
        if (e.seq && is_client(e.subject)) {
            auto who = to_string(e.subject) + " at event " + std::to_string(i);
            const auto& s = *e.seq;
            for (std::size_t j = 0; j < s.size(); ++j) {
                auto [it, fresh] = at_index.emplace(j, std::make_pair(s[j].cfg, who));
                if (!fresh && it->second.first != s[j].cfg && unique.pass)
                    unique = fail("uniqueness", who + " has " + to_string(s[j].cfg) + " at index " + std::to_string(j) +
                                                    " but " + it->second.second + " has " + to_string(it->second.first));
                if (j + 1 < s.size()) record_successor(s[j].cfg, s[j + 1].cfg, who);
                auto& fin = finalized_seen[e.subject];
                if (s[j].status == Status::finalized)
                    fin.insert(j);
                else if (fin.count(j) && no_revert.pass)
                    no_revert = fail("status-monotonic", who + " turned index " + std::to_string(j) + " from F back to P");
            }
        }
        if (e.kind == EventKind::state_change && e.name == "nextC" && e.cfg && e.entry)
            record_successor(*e.cfg, e.entry->cfg, to_string(e.subject) + " nextC");
    }
    report.add(unique);

    // Prefix and progress across sequential read-config actions.
    std::vector<const Action*> rcs;
    for (const auto& a : actions)
        if (a.name == "read-config" && a.respond && a.out->seq) rcs.push_back(&a);
    PrefixMax<std::size_t> longest, most_final;
    for (std::size_t i = 0; i < rcs.size(); ++i) {
        longest.add(*rcs[i]->respond, rcs[i]->out->seq->size(), i);
        most_final.add(*rcs[i]->respond, rcs[i]->out->seq->mu(), i);
    }
    longest.build();
    most_final.build();
    Verdict prefix = pass("prefix", std::to_string(rcs.size()) + " read-config actions");
    Verdict progress = pass("progress");
    for (const auto* a : rcs) {
        const auto& s2 = *a->out->seq;
        if (auto p = longest.before(a->invoke); p && prefix.pass && !seq_prefix_of(*rcs[p->second]->out->seq, s2))
            prefix = fail("prefix", "read-config op " + std::to_string(rcs[p->second]->id) + " by " +
                                        to_string(rcs[p->second]->client) + " is not a prefix of the later op " +
                                        std::to_string(a->id) + " by " + to_string(a->client));
        if (auto p = most_final.before(a->invoke); p && progress.pass && p->first > s2.mu())
            progress = fail("progress", "read-config op " + std::to_string(a->id) + " by " + to_string(a->client) +
                                            " ended with mu " + std::to_string(s2.mu()) + " after op " +
                                            std::to_string(rcs[p->second]->id) + " reached mu " + std::to_string(p->first));
    }
    // A completed finalize-config has put F into a quorum, so later traversals reach it.
    PrefixMax<std::size_t> finalized;
    for (std::size_t i = 0; i < actions.size(); ++i)
        if (actions[i].name == "finalize-config" && actions[i].respond)
            finalized.add(*actions[i].respond, *actions[i].out->index, i);
    finalized.build();
    for (const auto* a : rcs) {
        auto p = finalized.before(a->invoke);
        if (!p || !progress.pass || p->first <= a->out->seq->mu()) continue;
        progress = fail("progress", "read-config op " + std::to_string(a->id) + " by " + to_string(a->client) +
                                        " ended with mu " + std::to_string(a->out->seq->mu()) + " after " +
                                        to_string(actions[p->second].client) + " finalized index " +
                                        std::to_string(p->first));
    }
    report.add(prefix);
    report.add(progress);

    Verdict stable = pass("nextC-stability");
    std::map<std::pair<ProcessId, ConfigId>, ConfigEntry> next_of;
    for (const auto& e : trace) {
        if (e.kind != EventKind::state_change || e.name != "nextC" || !e.cfg || !e.entry) continue;
        auto key = std::make_pair(e.subject, *e.cfg);
        auto it = next_of.find(key);
        if (it != next_of.end() && stable.pass) {
            if (it->second.status == Status::finalized)
                stable = fail("nextC-stability", to_string(e.subject) + " changed a finalized nextC in " + to_string(*e.cfg));
            else if (it->second.cfg != e.entry->cfg)
                stable = fail("nextC-stability", to_string(e.subject) + " replaced nextC " + to_string(it->second.cfg) +
                                                     " with " + to_string(e.entry->cfg) + " in " + to_string(*e.cfg));
        }
        next_of[key] = *e.entry;
    }
    report.add(stable);
    report.add(no_revert);

    // Each finalized index is one past what that reconfig's read-config saw.
    Verdict jump = pass("finalize-jump");
    std::map<std::uint64_t, const Action*> first_read_config;
    for (const auto& a : actions)
        if (a.name == "read-config" && a.parent && a.respond && !first_read_config.count(*a.parent))
            first_read_config[*a.parent] = &a;
    for (const auto& a : actions) {
        if (a.name != "finalize-config" || !a.respond || !a.parent || !jump.pass) continue;
        auto rc = first_read_config.find(*a.parent);
        if (rc == first_read_config.end()) continue;
        const auto& seen = *rc->second->out->seq;
        auto j = *a.out->index;
        if (!(seen.mu() < j && j == seen.nu() + 1))
            jump = fail("finalize-jump", to_string(a.client) + " finalized index " + std::to_string(j) +
                                             " after its read-config saw mu " + std::to_string(seen.mu()) + " and nu " +
                                             std::to_string(seen.nu()));
    }
    report.add(jump);
    return report;
}

CheckReport check_consensus(const Trace& trace, bool run_quiescent) {
    CheckReport report;
    std::map<ConfigId, ConfigId> decided;
    std::map<ConfigId, std::set<ConfigId>> proposed;
    Verdict agreement = pass("agreement");
    for (const auto& e : trace) {
        if (e.kind != EventKind::consensus_decide || !e.cfg || !e.entry) continue;
        auto [it, fresh] = decided.emplace(*e.cfg, e.entry->cfg);
        if (!fresh && it->second != e.entry->cfg && agreement.pass)
            agreement = fail("agreement", "Con(" + to_string(*e.cfg) + ") decided twice");
    }
    auto actions = collect_actions(trace);
    std::set<ProcessId> crashed;
    for (const auto& e : trace)
        if (e.kind == EventKind::crash) crashed.insert(e.subject);
    Verdict termination = pass("termination");
    for (const auto& a : actions) {
        if (a.name != "propose") continue;
        proposed[*a.in->cfg].insert(a.in->entry->cfg);
        if (a.respond) {
            auto d = decided.find(*a.out->cfg);
            if (agreement.pass && (d == decided.end() || d->second != a.out->entry->cfg))
                agreement = fail("agreement", to_string(a.client) + " learned " + to_string(a.out->entry->cfg) +
                                                  " from Con(" + to_string(*a.out->cfg) + ")");
        } else if (run_quiescent && !crashed.count(a.client) && termination.pass) {
            termination = fail("termination", "propose by " + to_string(a.client) + " never returned");
        }
    }
    Verdict validity = pass("validity", std::to_string(decided.size()) + " instances decided");
    for (const auto& [cfg, d] : decided)
        if (!proposed[cfg].count(d) && validity.pass)
            validity = fail("validity", "Con(" + to_string(cfg) + ") decided " + to_string(d) + " which nobody proposed");
    if (!run_quiescent) termination.detail = "not evaluated: run did not quiesce";
    report.add(agreement);
    report.add(validity);
    report.add(termination);
    return report;
}

CheckReport check_server_state(const Trace& trace) {
    CheckReport report;
    Verdict mono = pass("server-tag-monotonic");
    Verdict replica = pass("replica-holds-value");
    std::map<std::tuple<ProcessId, ConfigId, std::string>, Tag> last;
    for (const auto& e : trace) {
        if (e.kind != EventKind::state_change || !e.cfg) continue;
        if (e.name == "tag" && e.tag) {
            auto key = std::make_tuple(e.subject, *e.cfg, e.note);
            auto it = last.find(key);
            if (it != last.end() && *e.tag < it->second && mono.pass)
                mono = fail("server-tag-monotonic", to_string(e.subject) + " " + e.note + " tag in " + to_string(*e.cfg) +
                                                        " went from " + to_string(it->second) + " to " + to_string(*e.tag));
            last[key] = *e.tag;
        } else if (e.name == "replica-serve" && e.note != "hit" && replica.pass) {
            replica = fail("replica-holds-value", to_string(e.subject) + " lacked the value of " + to_string(*e.tag));
        }
    }
    report.add(mono);
    report.add(replica);
    return report;
}

namespace {

struct ReadScan {
    std::vector<ReadConcurrency> reads;
    bool applicable = true;
};

ReadScan scan_reads(const Trace& trace, const TraceContext& ctx) {
    ReadScan scan;
    auto history = extract_history(trace);
    if (std::any_of(history.ops.begin(), history.ops.end(), [](const Operation& o) { return o.kind == OpKind::reconfig; }))
        scan.applicable = false;

    auto actions = collect_actions(trace);
    std::map<std::uint64_t, const Action*> first_get;
    for (const auto& a : actions) {
        if (a.name != "get-data" || !a.parent || !a.in->cfg) continue;
        auto f = ctx.flavors.find(*a.in->cfg);
        if (f == ctx.flavors.end() || f->second != "treas") continue;
        first_get.emplace(*a.parent, &a);
    }
    std::map<std::uint64_t, std::size_t> quorum_at;
    std::set<std::uint64_t> requeried;
    for (std::size_t i = 0; i < trace.size(); ++i) {
        const auto& e = trace[i];
        if (e.kind != EventKind::state_change || !e.op_id) continue;
        if (e.name == "get-data-quorum") quorum_at.emplace(*e.op_id, i);
        if (e.name == "undecodable-max-tag") requeried.insert(*e.op_id);
    }

    PrefixMax<Tag> completed_writes;
    for (std::size_t i = 0; i < history.ops.size(); ++i) {
        const auto& w = history.ops[i];
        if (w.kind == OpKind::write && w.complete() && w.tag) completed_writes.add(*w.respond, *w.tag, i);
    }
    completed_writes.build();

    for (const auto& r : history.ops) {
        if (r.kind != OpKind::read) continue;
        auto g = first_get.find(r.id);
        if (g == first_get.end()) continue;
        ReadConcurrency rc;
        rc.read_id = r.id;
        rc.completed = r.complete();
        rc.requeried = requeried.count(g->second->id) > 0;
        rc.delta = ctx.delta.count(*g->second->in->cfg) ? ctx.delta.at(*g->second->in->cfg) : 0;
        auto q = quorum_at.find(g->second->id);
        if (q != quorum_at.end()) {
            rc.valid = true;
            auto sigma = completed_writes.before(r.invoke);
            Tag floor = sigma ? sigma->first : kInitialTag;
            for (const auto& w : history.ops)
                if (w.kind == OpKind::write && w.tag && w.invoke < q->second && *w.tag > floor) ++rc.lambda;
        }
        scan.reads.push_back(rc);
    }
    return scan;
}

}  // namespace

std::size_t compute_read_concurrency(const Trace& trace, std::uint64_t read_op) {
    auto ctx = read_context(trace);
    for (const auto& r : scan_reads(trace, ctx).reads) {
        if (r.read_id != read_op) continue;
        if (!r.valid) throw Error("read " + std::to_string(read_op) + " is not valid: its reader never gathered a quorum of lists");
        return r.lambda;
    }
    throw Error("read " + std::to_string(read_op) + " has no get-data on an erasure-coded configuration");
}

std::vector<ReadConcurrency> read_concurrency(const Trace& trace, const TraceContext& ctx) {
    return scan_reads(trace, ctx).reads;
}

Verdict check_liveness(const Trace& trace, const TraceContext& ctx) {
    auto scan = scan_reads(trace, ctx);
    if (!scan.applicable) return pass("liveness", "not applicable: reconfigurations present");
    std::size_t valid = 0;
    for (const auto& r : scan.reads) {
        if (!r.valid) continue;
        ++valid;
        if (r.lambda > r.delta) continue;
        if (!r.completed || r.requeried)
            return fail("liveness", "read " + std::to_string(r.read_id) + " had " + std::to_string(r.lambda) +
                                        " concurrent writes (delta " + std::to_string(r.delta) + ") yet " +
                                        (r.completed ? "could not decode in its first round" : "never completed"));
    }
    return pass("liveness", std::to_string(valid) + " valid reads");
}

CheckReport check_all(const Trace& trace, bool run_quiescent) {
    CheckReport report;
    auto ctx = read_context(trace);
    report.add(check_well_formed(trace));
    auto history = extract_history(trace);
    auto atom = check_atomicity(history);
    report.add(atom);
    if (auto lin = brute_force_linearizable(history)) {
        if (atom.pass && !*lin)
            report.add(fail("linearizability", "tag order passed but no linearization exists"));
        else
            report.add(Verdict{"linearizability", *lin, *lin ? "exhaustive search found an order" : "no linearization exists"});
    } else {
        report.add(pass("linearizability", "skipped: more than 10 operations"));
    }
    report.append(check_dap_properties(trace, ctx));
    report.append(check_recon_lemmas(trace));
    report.append(check_consensus(trace, run_quiescent));
    report.append(check_server_state(trace));
    report.add(check_liveness(trace, ctx));
    return report;
}

}  // namespace ares
