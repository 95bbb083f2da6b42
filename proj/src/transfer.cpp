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

#include "ares/transfer.hpp"

#include "ares/dap.hpp"

namespace ares {

Task<Tag> update_config_through_client(ClientProcess& c, const ConfigSequence& seq) {
    const auto& world = c.world();
    TaggedValue best{kInitialTag, world.initial_value};
    // Sequential, in index order.
    for (auto i = seq.mu(); i <= seq.nu(); ++i) {
        auto tv = co_await get_data(c, world.config(seq[i].cfg));
        if (tv.tag > best.tag) best = std::move(tv);
    }
    auto tag = best.tag;
    co_await put_data(c, world.config(seq[seq.nu()].cfg), std::move(best));
    co_return tag;
}

Task<Tag> update_config_direct(ClientProcess& c, const ConfigSequence& seq) {
    const auto& world = c.world();
    Tag best = kInitialTag;
    auto source = seq[seq.mu()].cfg;
    for (auto i = seq.mu(); i <= seq.nu(); ++i) {
        auto t = co_await get_tag(c, world.config(seq[i].cfg));
        if (t > best) {
            best = t;
            source = seq[i].cfg;
        }
    }
    const auto& from = world.config(source);
    const auto& to = world.config(seq[seq.nu()].cfg);
    if (from.flavor != DapFlavor::treas || to.flavor != DapFlavor::treas) {
        c.note("transfer-fallback", TraceEvent{.cfg = source, .tag = best});
        co_return co_await update_config_through_client(c, seq);
    }
    co_await forward_code_element(c, best, from, to);
    co_return best;
}

Task<void> forward_code_element(ClientProcess& c, const Tag& tag, const Configuration& source,
                                const Configuration& target) {
    auto id = c.invoke("forward-code-element", TraceEvent{.cfg = target.id, .tag = tag,
                                                          .note = "from " + to_string(source.id)});
    auto quorum = treas_quorum(target.treas->n, target.treas->k);
    co_await c.request_all_or_none(source.id, source.servers, msg::ReqFwCodeElem{tag, target.id},
                                   at_least(quorum));
    c.respond(id, TraceEvent{.cfg = target.id, .tag = tag});
}

}  // namespace ares
