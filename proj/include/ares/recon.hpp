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

#include <functional>
#include <optional>

#include "ares/runtime.hpp"

namespace ares {

/// Picks the reply a read-next-config returns: a finalized entry if any
/// reply has one, else a pending entry, else none.
std::optional<ConfigEntry> choose_next(const std::vector<std::optional<ConfigEntry>>& replies,
                                       bool prefer_finalized = true);

Task<std::optional<ConfigEntry>> read_next_config(ClientProcess& c, const Configuration& cfg);
Task<void> put_config(ClientProcess& c, const Configuration& cfg, ConfigEntry entry);
/// Traverses the global sequence from the last finalized entry of `seq`.
Task<ConfigSequence> read_config(ClientProcess& c, ConfigSequence seq);

Task<ConfigSequence> add_config(ClientProcess& c, ConfigSequence seq, ConfigId proposal);
/// Moves the max tag-value pair of configurations mu..nu into the last one.
Task<void> update_config(ClientProcess& c, const ConfigSequence& seq);
Task<ConfigSequence> finalize_config(ClientProcess& c, ConfigSequence seq);

/// The reconfig operation over the client's own sequence. `on_added` runs
/// once add-config completes. Returns the configuration that was installed.
Task<ConfigId> reconfig(ClientProcess& c, ConfigId proposal, std::function<void()> on_added = {});

}  // namespace ares
