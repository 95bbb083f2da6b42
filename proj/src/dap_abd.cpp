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

#include "ares/dap_abd.hpp"

namespace ares {

Task<Tag> AbdDap::get_tag() {
    auto replies = co_await c_.request(
        cfg_.id, cfg_.servers, [](ProcessId) -> Payload { return msg::QueryTag{}; }, has_quorum(cfg_.quorums));
    Tag max = kInitialTag;
    for (const auto& r : replies) max = std::max(max, std::get<msg::TagReply>(r.payload).tag);
    co_return max;
}

Task<TaggedValue> AbdDap::get_data() {
    auto replies = co_await c_.request(
        cfg_.id, cfg_.servers, [](ProcessId) -> Payload { return msg::Query{}; }, has_quorum(cfg_.quorums));
    const TaggedValue* best = nullptr;
    for (const auto& r : replies) {
        const auto& tv = std::get<msg::DataReply>(r.payload).tv;
        if (!best || tv.tag > best->tag) best = &tv;
    }
    co_return *best;
}

Task<void> AbdDap::put_data(TaggedValue tv) {
    co_await c_.request(
        cfg_.id, cfg_.servers, [&tv](ProcessId) -> Payload { return msg::Write{tv}; }, has_quorum(cfg_.quorums));
}

}  // namespace ares
