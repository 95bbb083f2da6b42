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

#include <memory>

#include "ares/runtime.hpp"

namespace ares {

/// Client side of get-tag, get-data and put-data bound to one configuration.
class Dap {
public:
    virtual ~Dap() = default;
    virtual Task<Tag> get_tag() = 0;
    virtual Task<TaggedValue> get_data() = 0;
    virtual Task<void> put_data(TaggedValue tv) = 0;
    /// Whether sequential get-data calls return non-decreasing tags.
    virtual bool claims_c3() const = 0;
};

std::unique_ptr<Dap> make_dap(ClientProcess& c, const Configuration& cfg);
bool flavor_claims_c3(DapFlavor flavor);

// Traced primitives: each emits invoke/respond events carrying the
// configuration and the tags and values involved.
Task<Tag> get_tag(ClientProcess& c, const Configuration& cfg);
Task<TaggedValue> get_data(ClientProcess& c, const Configuration& cfg);
Task<void> put_data(ClientProcess& c, const Configuration& cfg, TaggedValue tv);

/// inc(t) for writer w.
inline Tag next_tag(const Tag& t, ProcessId w) { return Tag{t.z + 1, w}; }

// Template A1: read = get-data then put-data; write = get-tag, inc, put-data.
Task<TaggedValue> a1_read(ClientProcess& c, const Configuration& cfg);
Task<Tag> a1_write(ClientProcess& c, const Configuration& cfg, Bytes value);

// Template A2: read = get-data only. Requires a DAP with C3.
Task<TaggedValue> a2_read(ClientProcess& c, const Configuration& cfg);
Task<Tag> a2_write(ClientProcess& c, const Configuration& cfg, Bytes value);

/// Throws ConfigError if `flavor` cannot back template A2.
void require_a2_compatible(DapFlavor flavor);

}  // namespace ares
