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

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ares/runtime.hpp"

namespace ares {

/// State a TREAS server keeps per configuration.
struct TreasList {
    std::map<Tag, std::optional<CodedElement>> entries;

    Tag max_tag() const { return entries.rbegin()->first; }
    std::size_t stored() const;
    /// Inserts (t, e) unless t is present, then trims to `delta + 1` coded
    /// elements by dropping the element of the smallest tag still holding one.
    /// Returns false if t was already present.
    bool insert(const Tag& t, CodedElement e, std::size_t delta);
};

/// All protocol state of one server for one configuration.
struct ServerSlot {
    // ABD
    Tag tag;
    Bytes value;
    // LDR directory
    std::vector<ProcessId> loc;
    // LDR replica: every stored version
    std::map<Tag, Bytes> versions;
    // TREAS and the direct transfer
    TreasList list;
    std::map<Tag, std::map<std::size_t, CodedElement>> staged;
    std::set<ProcessId> recons;
    // reconfiguration pointer; nullopt is the initial <bottom, P>
    std::optional<ConfigEntry> next;
};

class ServerProcess : public Process {
public:
    ServerProcess(Simulator& sim, ProcessId id, const World& world);

    void on_message(const Envelope& env) override;

    /// Creates the slot on first use with the configuration's initial state.
    ServerSlot& slot(ConfigId cfg);
    const ServerSlot* find_slot(ConfigId cfg) const;

private:
    void reply(const Envelope& to, Payload payload);
    void note_storage(const Configuration& c, const ServerSlot& s);
    void note_tag(const Configuration& c, const Tag& t, std::string role);
    void on_forwarded(const Configuration& c, ServerSlot& s, const Envelope& env, const msg::FwdCodeElem& m);

    const World& world_;
    std::map<ConfigId, ServerSlot> slots_;
};

}  // namespace ares
