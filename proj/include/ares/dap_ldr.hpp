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

/// Directories hold (tag, locations); replicas hold values.
class LdrDap final : public Dap {
public:
    LdrDap(ClientProcess& c, const Configuration& cfg) : c_(c), cfg_(cfg) {}

    Task<Tag> get_tag() override;
    Task<TaggedValue> get_data() override;
    Task<void> put_data(TaggedValue tv) override;
    bool claims_c3() const override { return true; }

    std::size_t directory_majority() const { return cfg_.ldr->directories.size() / 2 + 1; }
    /// The 2f+1 replicas a put-data writes to: the first ones in id order.
    std::vector<ProcessId> write_replicas() const;

private:
    ClientProcess& c_;
    const Configuration& cfg_;
};

}  // namespace ares
