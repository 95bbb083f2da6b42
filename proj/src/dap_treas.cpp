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

#include "ares/dap_treas.hpp"

#include <map>

namespace ares {

ListAnalysis analyze_lists(const std::vector<std::vector<msg::ListEntry>>& lists, std::size_t k) {
    std::map<Tag, std::size_t> present;
    std::map<Tag, std::vector<const CodedElement*>> with_element;
    for (const auto& list : lists)
        for (const auto& [t, e] : list) {
            ++present[t];
            if (e) with_element[t].push_back(&*e);
        }
    ListAnalysis a;
    for (auto it = present.rbegin(); it != present.rend(); ++it)
        if (it->second >= k) {
            a.max_any = it->first;
            break;
        }
    for (auto it = with_element.rbegin(); it != with_element.rend(); ++it)
        if (it->second.size() >= k) {
            a.max_dec = it->first;
            if (a.decodable())
                for (const auto* e : it->second) a.elements.push_back(*e);
            break;
        }
    return a;
}

Task<Tag> TreasDap::get_tag() {
    auto replies = co_await c_.request(
        cfg_.id, cfg_.servers, [](ProcessId) -> Payload { return msg::QueryTag{}; }, at_least(quorum()));
    Tag max = kInitialTag;
    for (const auto& r : replies) max = std::max(max, std::get<msg::TagReply>(r.payload).tag);
    co_return max;
}

Task<void> TreasDap::put_data(TaggedValue tv) {
    auto elems = encode(CodeParams{cfg_.treas->n, cfg_.treas->k}, tv.value);
    co_await c_.request(
        cfg_.id, cfg_.servers,
        [&](ProcessId s) -> Payload { return msg::WriteElement{tv.tag, elems[cfg_.index_of(s)]}; },
        at_least(quorum()));
}

Task<TaggedValue> TreasDap::get_data() {
    const auto k = cfg_.treas->k;
    for (bool first = true;; first = false) {
        auto replies = co_await c_.request(
            cfg_.id, cfg_.servers, [](ProcessId) -> Payload { return msg::QueryList{}; }, at_least(quorum()));
        if (first) c_.note("get-data-quorum", TraceEvent{.cfg = cfg_.id});
        std::vector<std::vector<msg::ListEntry>> lists;
        lists.reserve(replies.size());
        for (auto& r : replies) lists.push_back(std::move(std::get<msg::ListReply>(r.payload).list));
        auto a = analyze_lists(lists, k);
        if (a.decodable()) {
            auto value = decode(CodeParams{cfg_.treas->n, k}, a.elements);
            co_return TaggedValue{*a.max_dec, std::move(value)};
        }
        TraceEvent e;
        e.cfg = cfg_.id;
        e.tag = a.max_any;
        e.note = a.max_dec ? "decodable max " + to_string(*a.max_dec) : "no decodable tag";
        c_.note("undecodable-max-tag", std::move(e));
    }
}

}  // namespace ares
