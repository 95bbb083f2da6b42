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

#include "ares/ares_client.hpp"

#include "ares/dap.hpp"
#include "ares/recon.hpp"

namespace ares {

namespace {

// Repeats put-data into the last known configuration until a read-config
// finds no newer one.
Task<void> propagate(ClientProcess& c, const TaggedValue& tv) {
    const auto& world = c.world();
    auto nu = c.cseq.nu();
    for (;;) {
        co_await put_data(c, world.config(c.cseq[nu].cfg), tv);
        c.cseq = co_await read_config(c, c.cseq);
        if (c.cseq.size() == nu + 1) co_return;
        nu = c.cseq.nu();
    }
}

}  // namespace

Task<Tag> ares_write(ClientProcess& c, Bytes value) {
    const auto& world = c.world();
    c.cseq = co_await read_config(c, c.cseq);
    Tag max = kInitialTag;
    for (auto i = c.cseq.mu(); i <= c.cseq.nu(); ++i)
    {
        auto t = co_await get_tag(c, world.config(c.cseq[i].cfg));
        max = std::max(max, t);
    }
    TaggedValue tv{next_tag(max, c.id()), std::move(value)};
    c.note("write-tag", TraceEvent{.tag = tv.tag, .value = tv.value});
    co_await propagate(c, tv);
    co_return tv.tag;
}

Task<TaggedValue> ares_read(ClientProcess& c) {
    const auto& world = c.world();
    c.cseq = co_await read_config(c, c.cseq);
    TaggedValue best{kInitialTag, world.initial_value};
    for (auto i = c.cseq.mu(); i <= c.cseq.nu(); ++i) {
        auto tv = co_await get_data(c, world.config(c.cseq[i].cfg));
        if (tv.tag > best.tag) best = std::move(tv);
    }
    co_await propagate(c, best);
    co_return best;
}

}  // namespace ares
