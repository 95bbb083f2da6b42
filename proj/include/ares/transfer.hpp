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

#include "ares/runtime.hpp"

namespace ares {

/// update-config that reads values through the reconfigurer: get-data on
/// each configuration mu..nu, then put-data of the max pair into seq[nu].
/// Returns the tag moved.
Task<Tag> update_config_through_client(ClientProcess& c, const ConfigSequence& seq);

/// update-config with direct server-to-server transfer of coded elements.
/// Falls back to update_config_through_client when the source or target of
/// the max tag is not erasure coded.
Task<Tag> update_config_direct(ClientProcess& c, const ConfigSequence& seq);

/// Asks the servers of `source` (all-or-none) to forward their element for
/// `tag` to the servers of `target`; completes on a quorum of target acks.
Task<void> forward_code_element(ClientProcess& c, const Tag& tag, const Configuration& source,
                                const Configuration& target);

}  // namespace ares
