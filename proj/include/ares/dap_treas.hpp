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
#include <vector>

#include "ares/dap.hpp"

namespace ares {

/// Result of examining one round of QUERY-LIST replies.
struct ListAnalysis {
    Tag max_any;                  // max of tags present in at least k lists
    std::optional<Tag> max_dec;   // max of tags with elements in at least k lists
    std::vector<CodedElement> elements;  // elements for max_dec when decodable

    bool decodable() const { return max_dec && *max_dec == max_any; }
};

ListAnalysis analyze_lists(const std::vector<std::vector<msg::ListEntry>>& lists, std::size_t k);

class TreasDap final : public Dap {
public:
    TreasDap(ClientProcess& c, const Configuration& cfg) : c_(c), cfg_(cfg) {}

    Task<Tag> get_tag() override;
    Task<TaggedValue> get_data() override;
    Task<void> put_data(TaggedValue tv) override;
    bool claims_c3() const override { return false; }

    std::size_t quorum() const { return treas_quorum(cfg_.treas->n, cfg_.treas->k); }

private:
    ClientProcess& c_;
    const Configuration& cfg_;
};

}  // namespace ares
