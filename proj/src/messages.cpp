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

#include "ares/messages.hpp"

namespace ares {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string_view message_name(const Payload& p) {
    return std::visit(
        Overloaded{
            [](const msg::QueryTag&) { return "QUERY-TAG"; },
            [](const msg::TagReply&) { return "TAG"; },
            [](const msg::Query&) { return "QUERY"; },
            [](const msg::DataReply&) { return "TAG-VALUE"; },
            [](const msg::Write&) { return "WRITE"; },
            [](const msg::Ack&) { return "ACK"; },
            [](const msg::QueryTagLocation&) { return "QUERY-TAG-LOCATION"; },
            [](const msg::TagLocation&) { return "TAG-LOCATION"; },
            [](const msg::PutMetadata&) { return "PUT-METADATA"; },
            [](const msg::PutData&) { return "PUT-DATA"; },
            [](const msg::GetData&) { return "GET-DATA"; },
            [](const msg::ReplicaData&) { return "DATA"; },
            [](const msg::QueryList&) { return "QUERY-LIST"; },
            [](const msg::ListReply&) { return "LIST"; },
            [](const msg::WriteElement&) { return "WRITE"; },
            [](const msg::ReadConfig&) { return "READ-CONFIG"; },
            [](const msg::NextConfig&) { return "NEXT-CONFIG"; },
            [](const msg::WriteConfig&) { return "WRITE-CONFIG"; },
            [](const msg::Propose&) { return "PROPOSE"; },
            [](const msg::Decide&) { return "DECIDE"; },
            [](const msg::ReqFwCodeElem&) { return "REQ-FW-CODE-ELEM"; },
            [](const msg::FwdCodeElem&) { return "FWD-CODE-ELEM"; },
        },
        p);
}

Units message_units(const Payload& p) {
    return std::visit(
        Overloaded{
            [](const msg::DataReply&) { return Units(1); },
            [](const msg::Write&) { return Units(1); },
            [](const msg::PutData&) { return Units(1); },
            [](const msg::ReplicaData& m) { return Units(m.value ? 1 : 0); },
            [](const msg::ListReply& m) {
                Units u(0);
                for (const auto& [tag, e] : m.list)
                    if (e) u += Units(1, static_cast<std::int64_t>(e->k));
                return u;
            },
            [](const msg::WriteElement& m) { return Units(1, static_cast<std::int64_t>(m.element.k)); },
            [](const msg::FwdCodeElem& m) { return Units(1, static_cast<std::int64_t>(m.element.k)); },
            [](const auto&) { return Units(0); },
        },
        p);
}

std::uint64_t message_payload_bytes(const Payload& p) {
    return std::visit(
        Overloaded{
            [](const msg::DataReply& m) -> std::uint64_t { return m.tv.value.size(); },
            [](const msg::Write& m) -> std::uint64_t { return m.tv.value.size(); },
            [](const msg::PutData& m) -> std::uint64_t { return m.tv.value.size(); },
            [](const msg::ReplicaData& m) -> std::uint64_t { return m.value ? m.value->size() : 0; },
            [](const msg::ListReply& m) -> std::uint64_t {
                std::uint64_t n = 0;
                for (const auto& [tag, e] : m.list)
                    if (e) n += e->payload.size();
                return n;
            },
            [](const msg::WriteElement& m) -> std::uint64_t { return m.element.payload.size(); },
            [](const msg::FwdCodeElem& m) -> std::uint64_t { return m.element.payload.size(); },
            [](const auto&) -> std::uint64_t { return 0; },
        },
        p);
}

}  // namespace ares
