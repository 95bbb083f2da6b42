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

#pragma once

#include <optional>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "ares/codec.hpp"
#include "ares/common.hpp"
#include "ares/trace.hpp"

namespace ares {

namespace msg {

// ABD and TREAS share QUERY-TAG; the receiving slot's flavor decides the reply.
struct QueryTag {};
struct TagReply {
    Tag tag;
};
struct Query {};
struct DataReply {
    TaggedValue tv;
};
struct Write {
    TaggedValue tv;
};
struct Ack {};

struct QueryTagLocation {};
struct TagLocation {
    Tag tag;
    std::vector<ProcessId> loc;
};
struct PutMetadata {
    Tag tag;
    std::vector<ProcessId> loc;
};
struct PutData {
    TaggedValue tv;
};
struct GetData {
    Tag tag;
};
struct ReplicaData {
    Tag tag;
    std::optional<Bytes> value;  // empty if the replica lacks that version
};

using ListEntry = std::pair<Tag, std::optional<CodedElement>>;

struct QueryList {};
struct ListReply {
    std::vector<ListEntry> list;
};
struct WriteElement {
    Tag tag;
    CodedElement element;
};

struct ReadConfig {};
struct NextConfig {
    std::optional<ConfigEntry> next;
};
struct WriteConfig {
    ConfigEntry entry;
};

struct Propose {
    ConfigId value;
};
struct Decide {
    ConfigId value;
};

struct ReqFwCodeElem {
    Tag tag;
    ConfigId target;
};
struct FwdCodeElem {
    Tag tag;
    CodedElement element;
    ConfigId source;
    ProcessId rc;
};

}  // namespace msg

using Payload = std::variant<msg::QueryTag, msg::TagReply, msg::Query, msg::DataReply, msg::Write, msg::Ack,
                             msg::QueryTagLocation, msg::TagLocation, msg::PutMetadata, msg::PutData,
                             msg::GetData, msg::ReplicaData, msg::QueryList, msg::ListReply,
                             msg::WriteElement, msg::ReadConfig, msg::NextConfig, msg::WriteConfig,
                             msg::Propose, msg::Decide, msg::ReqFwCodeElem, msg::FwdCodeElem>;

std::string_view message_name(const Payload& p);

/// Normalized data carried: a full value counts 1, a coded element 1/k.
Units message_units(const Payload& p);
/// Bytes of value or element payload on the wire; tags and ids excluded.
std::uint64_t message_payload_bytes(const Payload& p);

struct Envelope {
    std::uint64_t msg_id = 0;
    ProcessId src;
    ProcessId dst;
    ConfigId cfg;
    std::uint64_t round = 0;
    std::uint64_t op = 0;      // top-level operation the message serves
    std::uint64_t action = 0;  // innermost action at the sender
    Tick send_time = 0;
    Tick deliver_time = 0;
    Payload payload;
};

}  // namespace ares
