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

#include "ares/dap.hpp"

#include "ares/dap_abd.hpp"
#include "ares/dap_ldr.hpp"
#include "ares/dap_treas.hpp"

namespace ares {

std::unique_ptr<Dap> make_dap(ClientProcess& c, const Configuration& cfg) {
    switch (cfg.flavor) {
        case DapFlavor::abd: return std::make_unique<AbdDap>(c, cfg);
        case DapFlavor::ldr: return std::make_unique<LdrDap>(c, cfg);
        case DapFlavor::treas: return std::make_unique<TreasDap>(c, cfg);
    }
    throw ConfigError("unknown flavor");
}

bool flavor_claims_c3(DapFlavor flavor) { return flavor == DapFlavor::ldr; }

void require_a2_compatible(DapFlavor flavor) {
    if (!flavor_claims_c3(flavor))
        throw ConfigError("template a2 needs a DAP with non-decreasing sequential reads; " +
                          std::string(to_string(flavor)) + " does not provide it");
}

Task<Tag> get_tag(ClientProcess& c, const Configuration& cfg) {
    TraceEvent in;
    in.cfg = cfg.id;
    auto id = c.invoke("get-tag", std::move(in));
    auto dap = make_dap(c, cfg);
    auto t = co_await dap->get_tag();
    TraceEvent out;
    out.cfg = cfg.id;
    out.tag = t;
    c.respond(id, std::move(out));
    co_return t;
}

Task<TaggedValue> get_data(ClientProcess& c, const Configuration& cfg) {
    TraceEvent in;
    in.cfg = cfg.id;
    auto id = c.invoke("get-data", std::move(in));
    auto dap = make_dap(c, cfg);
    auto tv = co_await dap->get_data();
    TraceEvent out;
    out.cfg = cfg.id;
    out.tag = tv.tag;
    out.value = tv.value;
    c.respond(id, std::move(out));
    co_return tv;
}

Task<void> put_data(ClientProcess& c, const Configuration& cfg, TaggedValue tv) {
    TraceEvent in;
    in.cfg = cfg.id;
    in.tag = tv.tag;
    in.value = tv.value;
    auto id = c.invoke("put-data", std::move(in));
    auto dap = make_dap(c, cfg);
    auto tag = tv.tag;
    co_await dap->put_data(std::move(tv));
    TraceEvent out;
    out.cfg = cfg.id;
    out.tag = tag;
    c.respond(id, std::move(out));
}

namespace {

void note_write_tag(ClientProcess& c, const Tag& t, const Bytes& value) {
    TraceEvent e;
    e.tag = t;
    e.value = value;
    c.note("write-tag", std::move(e));
}

}  // namespace

Task<TaggedValue> a1_read(ClientProcess& c, const Configuration& cfg) {
    auto tv = co_await get_data(c, cfg);
    co_await put_data(c, cfg, tv);
    co_return tv;
}

Task<Tag> a1_write(ClientProcess& c, const Configuration& cfg, Bytes value) {
    auto t = co_await get_tag(c, cfg);
    auto tw = next_tag(t, c.id());
    note_write_tag(c, tw, value);
    co_await put_data(c, cfg, TaggedValue{tw, std::move(value)});
    co_return tw;
}

Task<TaggedValue> a2_read(ClientProcess& c, const Configuration& cfg) {
    require_a2_compatible(cfg.flavor);
    co_return co_await get_data(c, cfg);
}

Task<Tag> a2_write(ClientProcess& c, const Configuration& cfg, Bytes value) {
    require_a2_compatible(cfg.flavor);
    co_return co_await a1_write(c, cfg, std::move(value));
}

}  // namespace ares
