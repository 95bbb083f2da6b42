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

#include "ares/dap_ldr.hpp"

#include <algorithm>

namespace ares {

std::vector<ProcessId> LdrDap::write_replicas() const {
    auto reps = cfg_.ldr->replicas;
    std::sort(reps.begin(), reps.end());
    reps.resize(2 * cfg_.ldr->f + 1);
    return reps;
}

Task<Tag> LdrDap::get_tag() {
    auto replies = co_await c_.request(
        cfg_.id, cfg_.ldr->directories, [](ProcessId) -> Payload { return msg::QueryTagLocation{}; },
        at_least(directory_majority()));
    Tag max = kInitialTag;
    for (const auto& r : replies) max = std::max(max, std::get<msg::TagLocation>(r.payload).tag);
    co_return max;
}

Task<void> LdrDap::put_data(TaggedValue tv) {
    auto acks = co_await c_.request(
        cfg_.id, write_replicas(), [&tv](ProcessId) -> Payload { return msg::PutData{tv}; },
        at_least(cfg_.ldr->f + 1));
    std::vector<ProcessId> where;
    for (const auto& a : acks) where.push_back(a.from);
    std::sort(where.begin(), where.end());
    co_await c_.request(
        cfg_.id, cfg_.ldr->directories, [&](ProcessId) -> Payload { return msg::PutMetadata{tv.tag, where}; },
        at_least(directory_majority()));
}

Task<TaggedValue> LdrDap::get_data() {
    auto replies = co_await c_.request(
        cfg_.id, cfg_.ldr->directories, [](ProcessId) -> Payload { return msg::QueryTagLocation{}; },
        at_least(directory_majority()));
    const msg::TagLocation* best = nullptr;
    for (const auto& r : replies) {
        const auto& tl = std::get<msg::TagLocation>(r.payload);
        if (!best || tl.tag > best->tag) best = &tl;
    }
    auto tag = best->tag;
    auto where = best->loc;
    co_await c_.request(
        cfg_.id, cfg_.ldr->directories, [&](ProcessId) -> Payload { return msg::PutMetadata{tag, where}; },
        at_least(directory_majority()));
    auto data = co_await c_.request(
        cfg_.id, where, [&](ProcessId) -> Payload { return msg::GetData{tag}; },
        [](const ClientProcess::Replies& r) {
            return std::any_of(r.begin(), r.end(), [](const auto& x) {
                return std::get<msg::ReplicaData>(x.payload).value.has_value();
            });
        });
    for (const auto& r : data) {
        const auto& d = std::get<msg::ReplicaData>(r.payload);
        if (d.value) co_return TaggedValue{tag, *d.value};
    }
    throw Error("unreachable: replica reply without value");
}

}  // namespace ares
