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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace ares {

using Bytes = std::vector<std::uint8_t>;
using Tick = std::uint64_t;

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A scenario or configuration that violates a structural invariant.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Role-major ordering is part of the contract: `bottom` sorts below every
// writer so the initial tag is the minimum of the tag order.
enum class Role : std::uint8_t { bottom, writer, reader, reconfigurer, server, consensus };

struct ProcessId {
    Role role = Role::bottom;
    std::uint32_t index = 0;

    auto operator<=>(const ProcessId&) const = default;
};

inline constexpr ProcessId kBottomWriter{Role::bottom, 0};

std::string to_string(ProcessId id);
std::optional<ProcessId> parse_process_id(std::string_view text);

inline constexpr ProcessId writer(std::uint32_t i) { return {Role::writer, i}; }
inline constexpr ProcessId reader(std::uint32_t i) { return {Role::reader, i}; }
inline constexpr ProcessId reconfigurer(std::uint32_t i) { return {Role::reconfigurer, i}; }
inline constexpr ProcessId server(std::uint32_t i) { return {Role::server, i}; }

inline bool is_client(ProcessId id) {
    return id.role == Role::writer || id.role == Role::reader || id.role == Role::reconfigurer;
}

/// Logical timestamp (z, w); z dominates, the writer id breaks ties.
struct Tag {
    std::uint64_t z = 0;
    ProcessId w = kBottomWriter;

    auto operator<=>(const Tag&) const = default;
};

inline constexpr Tag kInitialTag{};

std::string to_string(const Tag& tag);

enum class Ordering { less, equal, greater };
Ordering tag_compare(const Tag& a, const Tag& b);

struct TaggedValue {
    Tag tag;
    Bytes value;

    bool operator==(const TaggedValue&) const = default;
};

struct ConfigId {
    std::int64_t value = 0;

    auto operator<=>(const ConfigId&) const = default;
};

std::string to_string(ConfigId id);

enum class DapFlavor { abd, ldr, treas };
std::string_view to_string(DapFlavor flavor);
std::optional<DapFlavor> parse_flavor(std::string_view text);

/// Quorum system over a server set: every subset of at least `threshold`
/// servers, or an explicit list of quorums.
class QuorumSystem {
public:
    QuorumSystem() = default;

    static QuorumSystem majority(std::vector<ProcessId> servers);
    /// Throws ConfigError if two threshold-sized subsets could be disjoint.
    static QuorumSystem threshold(std::vector<ProcessId> servers, std::size_t size);
    /// Throws ConfigError unless every quorum is a subset of `servers`, every
    /// pair intersects, and the union covers `servers`.
    static QuorumSystem explicit_list(std::vector<ProcessId> servers,
                                      std::vector<std::vector<ProcessId>> quorums);

    bool is_explicit() const { return threshold_ == 0; }
    std::size_t threshold_size() const { return threshold_; }
    const std::vector<ProcessId>& servers() const { return servers_; }
    const std::vector<std::vector<ProcessId>>& quorums() const { return quorums_; }

    /// True when `responders` contains every member of some quorum.
    bool contains_quorum(std::span<const ProcessId> responders) const;
    /// True when some quorum avoids every process in `crashed`.
    bool available_despite(std::span<const ProcessId> crashed) const;

private:
    std::vector<ProcessId> servers_;
    std::vector<std::vector<ProcessId>> quorums_;
    std::size_t threshold_ = 0;
};

struct TreasParams {
    std::size_t n = 1;
    std::size_t k = 1;
    std::size_t delta = 0;
};

/// ceil((n + k) / 2): the TREAS reply threshold.
inline std::size_t treas_quorum(std::size_t n, std::size_t k) { return (n + k + 1) / 2; }

struct LdrRoles {
    std::vector<ProcessId> directories;
    std::vector<ProcessId> replicas;
    std::size_t f = 0;
};

struct Configuration {
    ConfigId id;
    std::vector<ProcessId> servers;
    QuorumSystem quorums;
    DapFlavor flavor = DapFlavor::abd;
    std::optional<TreasParams> treas;
    std::optional<LdrRoles> ldr;

    /// Throws ConfigError describing the first violated invariant.
    void validate() const;
    /// Whether the configuration still serves every primitive with `crashed` down.
    bool tolerates(std::span<const ProcessId> crashed) const;
    std::size_t index_of(ProcessId server) const;
};

enum class Status : std::uint8_t { pending, finalized };

struct ConfigEntry {
    ConfigId cfg;
    Status status = Status::pending;

    bool operator==(const ConfigEntry&) const = default;
};

std::string to_string(const ConfigEntry& entry);

/// Dense configuration sequence; entry 0 is always the finalized initial configuration.
class ConfigSequence {
public:
    ConfigSequence() = default;
    explicit ConfigSequence(ConfigId initial);
    explicit ConfigSequence(std::vector<ConfigEntry> entries);

    const std::vector<ConfigEntry>& entries() const { return entries_; }
    const ConfigEntry& operator[](std::size_t i) const { return entries_.at(i); }
    std::size_t size() const { return entries_.size(); }

    /// Index of the last present entry.
    std::size_t nu() const { return entries_.size() - 1; }
    /// Largest index whose status is finalized.
    std::size_t mu() const;

    /// Writes `entry` at index `i`; `i` may be at most one past the end.
    void set(std::size_t i, ConfigEntry entry);

    bool operator==(const ConfigSequence&) const = default;

private:
    std::vector<ConfigEntry> entries_;
};

std::size_t seq_mu(const ConfigSequence& seq);
/// Configuration ids of `a` match `b` index-wise; statuses are ignored.
bool seq_prefix_of(const ConfigSequence& a, const ConfigSequence& b);

std::string to_hex(std::span<const std::uint8_t> bytes);
std::optional<Bytes> from_hex(std::string_view text);

}  // namespace ares
