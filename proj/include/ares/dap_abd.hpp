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

#include "ares/dap.hpp"

namespace ares {

/// Multi-writer ABD over the configuration's quorum system.
class AbdDap final : public Dap {
public:
    AbdDap(ClientProcess& c, const Configuration& cfg) : c_(c), cfg_(cfg) {}

    Task<Tag> get_tag() override;
    Task<TaggedValue> get_data() override;
    Task<void> put_data(TaggedValue tv) override;
    bool claims_c3() const override { return false; }

private:
    ClientProcess& c_;
    const Configuration& cfg_;
};

}  // namespace ares
