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

#include "ares/common.hpp"

#include <algorithm>
#include <charconv>
#include <set>

namespace ares {

namespace {

constexpr std::string_view role_prefix(Role role) {
    switch (role) {
        case Role::bottom: return "bot";
        case Role::writer: return "w";
        case Role::reader: return "r";
        case Role::reconfigurer: return "rc";
        case Role::server: return "s";
        case Role::consensus: return "cn";
    }
    return "?";
}

bool subset_of(const std::vector<ProcessId>& a, const std::set<ProcessId>& b) {
    return std::all_of(a.begin(), a.end(), [&](ProcessId p) { return b.count(p) > 0; });
}

}  // namespace

std::string to_string(ProcessId id) {
    if (id.role == Role::bottom) return "bot";
    return std::string(role_prefix(id.role)) + std::to_string(id.index);
}

std::optional<ProcessId> parse_process_id(std::string_view text) {
    if (text == "bot") return kBottomWriter;
    // Longest prefix first so "rc1" is not read as reader "c1".
    static constexpr std::pair<std::string_view, Role> prefixes[] = {
        {"rc", Role::reconfigurer}, {"cn", Role::consensus}, {"w", Role::writer},
        {"r", Role::reader},        {"s", Role::server},
    };
    for (auto [prefix, role] : prefixes) {
        if (!text.starts_with(prefix)) continue;
        auto digits = text.substr(prefix.size());
        if (digits.empty()) return std::nullopt;
        std::uint32_t index = 0;
        auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), index);
        if (ec != std::errc{} || ptr != digits.data() + digits.size()) return std::nullopt;
        return ProcessId{role, index};
    }
    return std::nullopt;
}

std::string to_string(const Tag& tag) {
    return "(" + std::to_string(tag.z) + "," + to_string(tag.w) + ")";
}

Ordering tag_compare(const Tag& a, const Tag& b) {
    auto c = a <=> b;
    if (c < 0) return Ordering::less;
    if (c > 0) return Ordering::greater;
    return Ordering::equal;
}

std::string to_string(ConfigId id) { return "c" + std::to_string(id.value); }

std::string_view to_string(DapFlavor flavor) {
    switch (flavor) {
        case DapFlavor::abd: return "abd";
        case DapFlavor::ldr: return "ldr";
        case DapFlavor::treas: return "treas";
    }
    return "?";
}

std::optional<DapFlavor> parse_flavor(std::string_view text) {
    if (text == "abd") return DapFlavor::abd;
    if (text == "ldr") return DapFlavor::ldr;
    if (text == "treas") return DapFlavor::treas;
    return std::nullopt;
}

QuorumSystem QuorumSystem::majority(std::vector<ProcessId> servers) {
    auto size = servers.size() / 2 + 1;
    return threshold(std::move(servers), size);
}

QuorumSystem QuorumSystem::threshold(std::vector<ProcessId> servers, std::size_t size) {
    std::sort(servers.begin(), servers.end());
    if (servers.empty()) throw ConfigError("quorum system has no servers");
    if (size == 0 || size > servers.size())
        throw ConfigError("quorum size " + std::to_string(size) + " out of range for " +
                          std::to_string(servers.size()) + " servers");
    if (2 * size <= servers.size())
        throw ConfigError("quorums of size " + std::to_string(size) + " need not intersect");
    QuorumSystem q;
    q.servers_ = std::move(servers);
    q.threshold_ = size;
    return q;
}

QuorumSystem QuorumSystem::explicit_list(std::vector<ProcessId> servers,
                                         std::vector<std::vector<ProcessId>> quorums) {
    std::sort(servers.begin(), servers.end());
    std::set<ProcessId> all(servers.begin(), servers.end());
    if (quorums.empty()) throw ConfigError("explicit quorum list is empty");
    std::set<ProcessId> covered;
    for (auto& q : quorums) {
        std::sort(q.begin(), q.end());
        if (q.empty()) throw ConfigError("empty quorum");
        if (!subset_of(q, all)) throw ConfigError("quorum contains a non-member server");
        covered.insert(q.begin(), q.end());
    }
    for (std::size_t i = 0; i < quorums.size(); ++i) {
        for (std::size_t j = i + 1; j < quorums.size(); ++j) {
            std::vector<ProcessId> common;
            std::set_intersection(quorums[i].begin(), quorums[i].end(), quorums[j].begin(),
                                  quorums[j].end(), std::back_inserter(common));
            if (common.empty())
                throw ConfigError("quorums " + std::to_string(i) + " and " + std::to_string(j) +
                                  " do not intersect");
        }
    }
    if (covered != all) throw ConfigError("union of quorums differs from the server set");
    QuorumSystem q;
    q.servers_ = std::move(servers);
    q.quorums_ = std::move(quorums);
    return q;
}

bool QuorumSystem::contains_quorum(std::span<const ProcessId> responders) const {
    std::set<ProcessId> seen(responders.begin(), responders.end());
    if (!is_explicit()) {
        auto members = std::count_if(servers_.begin(), servers_.end(),
                                     [&](ProcessId p) { return seen.count(p) > 0; });
        return static_cast<std::size_t>(members) >= threshold_;
    }
    return std::any_of(quorums_.begin(), quorums_.end(),
                       [&](const auto& q) { return subset_of(q, seen); });
}

bool QuorumSystem::available_despite(std::span<const ProcessId> crashed) const {
    std::set<ProcessId> down(crashed.begin(), crashed.end());
    std::vector<ProcessId> live;
    for (auto p : servers_)
        if (!down.count(p)) live.push_back(p);
    return contains_quorum(live);
}

namespace {

std::size_t count_crashed(const std::vector<ProcessId>& group, std::span<const ProcessId> crashed) {
    return static_cast<std::size_t>(std::count_if(group.begin(), group.end(), [&](ProcessId p) {
        return std::find(crashed.begin(), crashed.end(), p) != crashed.end();
    }));
}

}  // namespace

void Configuration::validate() const {
    auto name = to_string(id);
    if (servers.empty()) throw ConfigError(name + ": no servers");
    std::set<ProcessId> members(servers.begin(), servers.end());
    if (members.size() != servers.size()) throw ConfigError(name + ": duplicate server");
    for (auto s : servers)
        if (s.role != Role::server) throw ConfigError(name + ": " + to_string(s) + " is not a server");
    if (quorums.servers() != std::vector<ProcessId>(members.begin(), members.end()))
        throw ConfigError(name + ": quorum system is over a different server set");
    switch (flavor) {
        case DapFlavor::abd:
            break;
        case DapFlavor::treas: {
            if (!treas) throw ConfigError(name + ": treas configuration without code parameters");
            if (treas->n != servers.size())
                throw ConfigError(name + ": code length n differs from the number of servers");
            if (treas->k < 1 || treas->k > treas->n) throw ConfigError(name + ": need 1 <= k <= n");
            if (treas_quorum(treas->n, treas->k) > treas->n)
                throw ConfigError(name + ": quorum threshold exceeds n");
            break;
        }
        case DapFlavor::ldr: {
            if (!ldr) throw ConfigError(name + ": ldr configuration without roles");
            if (ldr->directories.empty()) throw ConfigError(name + ": no directories");
            if (!subset_of(ldr->directories, members) || !subset_of(ldr->replicas, members))
                throw ConfigError(name + ": ldr roles reference non-member servers");
            if (ldr->replicas.size() < 2 * ldr->f + 1)
                throw ConfigError(name + ": need at least 2f+1 replicas");
            break;
        }
    }
}

bool Configuration::tolerates(std::span<const ProcessId> crashed) const {
    if (!quorums.available_despite(crashed)) return false;
    switch (flavor) {
        case DapFlavor::abd:
            return true;
        case DapFlavor::treas:
            return servers.size() - count_crashed(servers, crashed) >= treas_quorum(treas->n, treas->k);
        case DapFlavor::ldr: {
            auto dirs = ldr->directories.size();
            auto dirs_live = dirs - count_crashed(ldr->directories, crashed);
            return 2 * dirs_live > dirs && count_crashed(ldr->replicas, crashed) <= ldr->f;
        }
    }
    return false;
}

std::size_t Configuration::index_of(ProcessId s) const {
    auto it = std::find(servers.begin(), servers.end(), s);
    if (it == servers.end()) throw ConfigError(to_string(s) + " is not in " + to_string(id));
    return static_cast<std::size_t>(it - servers.begin());
}

std::string to_string(const ConfigEntry& entry) {
    return "<" + to_string(entry.cfg) + "," + (entry.status == Status::finalized ? "F" : "P") + ">";
}

ConfigSequence::ConfigSequence(ConfigId initial) : entries_{{initial, Status::finalized}} {}

ConfigSequence::ConfigSequence(std::vector<ConfigEntry> entries) : entries_(std::move(entries)) {
    if (entries_.empty() || entries_.front().status != Status::finalized)
        throw ConfigError("configuration sequence must start with a finalized entry");
}

std::size_t ConfigSequence::mu() const {
    for (std::size_t i = entries_.size(); i-- > 0;)
        if (entries_[i].status == Status::finalized) return i;
    return 0;
}

void ConfigSequence::set(std::size_t i, ConfigEntry entry) {
    if (i > entries_.size()) throw ConfigError("configuration sequence gap at index " + std::to_string(i));
    if (i == entries_.size())
        entries_.push_back(entry);
    else
        entries_[i] = entry;
}

std::size_t seq_mu(const ConfigSequence& seq) { return seq.mu(); }

bool seq_prefix_of(const ConfigSequence& a, const ConfigSequence& b) {
    if (a.size() > b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].cfg != b[i].cfg) return false;
    return true;
}

std::string to_hex(std::span<const std::uint8_t> bytes) {
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(digits[b >> 4]);
        out.push_back(digits[b & 0xf]);
    }
    return out;
}

std::optional<Bytes> from_hex(std::string_view text) {
    if (text.size() % 2 != 0) return std::nullopt;
    Bytes out(text.size() / 2);
    for (std::size_t i = 0; i < out.size(); ++i) {
        auto [ptr, ec] = std::from_chars(text.data() + 2 * i, text.data() + 2 * i + 2, out[i], 16);
        if (ec != std::errc{} || ptr != text.data() + 2 * i + 2) return std::nullopt;
    }
    return out;
}

}  // namespace ares
