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

#include <cstddef>
#include <memory>
#include <span>
#include <vector>

#include "ares/common.hpp"

namespace ares {

struct CodeParams {
    std::size_t n = 1;
    std::size_t k = 1;

    bool operator==(const CodeParams&) const = default;
};

/// One fragment Phi_i(v). `value_len` and `k` are metadata; only `payload` is data.
struct CodedElement {
    std::size_t index = 1;  // 1-based, as in c_1..c_n
    std::size_t k = 1;
    std::size_t value_len = 0;
    Bytes payload;

    bool operator==(const CodedElement&) const = default;
};

class CodecError : public Error {
public:
    enum class Kind { params, insufficient, malformed };

    CodecError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

/// Bytes of length framing prepended to every value before splitting.
inline constexpr std::size_t kLengthHeader = 4;

/// Payload length of each element for a value of `value_len` bytes.
inline std::size_t element_size(std::size_t k, std::size_t value_len) {
    return (value_len + kLengthHeader + k - 1) / k;
}

class ErasureCode {
public:
    virtual ~ErasureCode() = default;
    virtual CodeParams params() const = 0;
    virtual std::vector<CodedElement> encode(std::span<const std::uint8_t> value) const = 0;
    /// Any `k` elements with distinct indices reconstruct the value.
    virtual Bytes decode(std::span<const CodedElement> elements) const = 0;
};

/// Systematic Reed-Solomon over GF(2^8): the first k elements are the raw shards.
class ReedSolomon final : public ErasureCode {
public:
    explicit ReedSolomon(CodeParams params);

    CodeParams params() const override { return params_; }
    std::vector<CodedElement> encode(std::span<const std::uint8_t> value) const override;
    Bytes decode(std::span<const CodedElement> elements) const override;

private:
    CodeParams params_;
    std::vector<std::uint8_t> generator_;  // n x k, row-major
};

/// Shared, cached instance for the given parameters.
const ErasureCode& code_for(CodeParams params);

std::vector<CodedElement> encode(CodeParams params, std::span<const std::uint8_t> value);
Bytes decode(CodeParams params, std::span<const CodedElement> elements);

namespace gf256 {
std::uint8_t mul(std::uint8_t a, std::uint8_t b);
std::uint8_t inv(std::uint8_t a);
std::uint8_t pow(std::uint8_t a, unsigned e);
}  // namespace gf256

}  // namespace ares
