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

#include "ares/codec.hpp"

#include <array>
#include <map>
#include <mutex>
#include <set>

namespace ares {

namespace gf256 {

namespace {

struct Tables {
    std::array<std::uint8_t, 512> exp{};
    std::array<std::uint8_t, 256> log{};

    Tables() {
        unsigned x = 1;
        for (unsigned i = 0; i < 255; ++i) {
            exp[i] = static_cast<std::uint8_t>(x);
            log[x] = static_cast<std::uint8_t>(i);
            x <<= 1;
            if (x & 0x100) x ^= 0x11d;
        }
        for (unsigned i = 255; i < exp.size(); ++i) exp[i] = exp[i - 255];
    }
};

const Tables& tables() {
    static const Tables t;
    return t;
}

}  // namespace

std::uint8_t mul(std::uint8_t a, std::uint8_t b) {
    if (a == 0 || b == 0) return 0;
    const auto& t = tables();
    return t.exp[t.log[a] + t.log[b]];
}

std::uint8_t inv(std::uint8_t a) {
    if (a == 0) throw CodecError(CodecError::Kind::malformed, "inverse of zero in GF(256)");
    const auto& t = tables();
    return t.exp[255 - t.log[a]];
}

std::uint8_t pow(std::uint8_t a, unsigned e) {
    std::uint8_t r = 1;
    for (unsigned i = 0; i < e; ++i) r = mul(r, a);
    return r;
}

}  // namespace gf256

namespace {

using Matrix = std::vector<std::uint8_t>;

// Gauss-Jordan inverse of a k x k matrix; throws if singular.
Matrix invert(Matrix m, std::size_t k) {
    Matrix out(k * k, 0);
    for (std::size_t i = 0; i < k; ++i) out[i * k + i] = 1;
    for (std::size_t col = 0; col < k; ++col) {
        std::size_t pivot = col;
        while (pivot < k && m[pivot * k + col] == 0) ++pivot;
        if (pivot == k) throw CodecError(CodecError::Kind::malformed, "singular decoding matrix");
        if (pivot != col) {
            for (std::size_t j = 0; j < k; ++j) {
                std::swap(m[pivot * k + j], m[col * k + j]);
                std::swap(out[pivot * k + j], out[col * k + j]);
            }
        }
        auto scale = gf256::inv(m[col * k + col]);
        for (std::size_t j = 0; j < k; ++j) {
            m[col * k + j] = gf256::mul(m[col * k + j], scale);
            out[col * k + j] = gf256::mul(out[col * k + j], scale);
        }
        for (std::size_t row = 0; row < k; ++row) {
            auto factor = m[row * k + col];
            if (row == col || factor == 0) continue;
            for (std::size_t j = 0; j < k; ++j) {
                m[row * k + j] ^= gf256::mul(factor, m[col * k + j]);
                out[row * k + j] ^= gf256::mul(factor, out[col * k + j]);
            }
        }
    }
    return out;
}

}  // namespace

ReedSolomon::ReedSolomon(CodeParams params) : params_(params) {
    auto [n, k] = params;
    if (k < 1 || k > n || n > 256)
        throw CodecError(CodecError::Kind::params,
                         "invalid code parameters n=" + std::to_string(n) + " k=" + std::to_string(k));
    // Vandermonde rows at points 0..n-1, normalized so the top k x k block is I.
    Matrix vander(n * k);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j)
            vander[i * k + j] = gf256::pow(static_cast<std::uint8_t>(i), static_cast<unsigned>(j));
    auto top_inv = invert(Matrix(vander.begin(), vander.begin() + static_cast<std::ptrdiff_t>(k * k)), k);
    generator_.assign(n * k, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            std::uint8_t acc = 0;
            for (std::size_t t = 0; t < k; ++t) acc ^= gf256::mul(vander[i * k + t], top_inv[t * k + j]);
            generator_[i * k + j] = acc;
        }
}

std::vector<CodedElement> ReedSolomon::encode(std::span<const std::uint8_t> value) const {
    auto [n, k] = params_;
    if (value.size() > 0xffffffffu) throw CodecError(CodecError::Kind::params, "value too large");
    auto shard = element_size(k, value.size());
    Bytes framed(shard * k, 0);
    auto len = static_cast<std::uint32_t>(value.size());
    for (std::size_t b = 0; b < kLengthHeader; ++b) framed[b] = static_cast<std::uint8_t>(len >> (8 * b));
    std::copy(value.begin(), value.end(), framed.begin() + kLengthHeader);

    std::vector<CodedElement> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        auto& e = out[i];
        e.index = i + 1;
        e.k = k;
        e.value_len = value.size();
        e.payload.assign(shard, 0);
        for (std::size_t j = 0; j < k; ++j) {
            auto g = generator_[i * k + j];
            if (g == 0) continue;
            const auto* src = framed.data() + j * shard;
            for (std::size_t b = 0; b < shard; ++b) e.payload[b] ^= gf256::mul(g, src[b]);
        }
    }
    return out;
}

Bytes ReedSolomon::decode(std::span<const CodedElement> elements) const {
    auto [n, k] = params_;
    std::vector<const CodedElement*> chosen;
    std::set<std::size_t> seen;
    for (const auto& e : elements) {
        if (e.index < 1 || e.index > n)
            throw CodecError(CodecError::Kind::malformed, "element index out of range");
        if (!seen.insert(e.index).second)
            throw CodecError(CodecError::Kind::malformed, "duplicate element index");
        if (!chosen.empty() && e.payload.size() != chosen.front()->payload.size())
            throw CodecError(CodecError::Kind::malformed, "element lengths differ");
        if (chosen.size() < k) chosen.push_back(&e);
    }
    if (chosen.size() < k)
        throw CodecError(CodecError::Kind::insufficient, "need " + std::to_string(k) + " elements, got " +
                                                             std::to_string(chosen.size()));
    auto shard = chosen.front()->payload.size();
    if (shard * k < kLengthHeader) throw CodecError(CodecError::Kind::malformed, "elements too short");

    Matrix sub(k * k);
    for (std::size_t r = 0; r < k; ++r)
        for (std::size_t j = 0; j < k; ++j) sub[r * k + j] = generator_[(chosen[r]->index - 1) * k + j];
    auto dec = invert(std::move(sub), k);

    Bytes framed(shard * k, 0);
    for (std::size_t j = 0; j < k; ++j) {
        auto* dst = framed.data() + j * shard;
        for (std::size_t r = 0; r < k; ++r) {
            auto g = dec[j * k + r];
            if (g == 0) continue;
            const auto& src = chosen[r]->payload;
            for (std::size_t b = 0; b < shard; ++b) dst[b] ^= gf256::mul(g, src[b]);
        }
    }
    std::uint32_t len = 0;
    for (std::size_t b = 0; b < kLengthHeader; ++b) len |= static_cast<std::uint32_t>(framed[b]) << (8 * b);
    if (len > framed.size() - kLengthHeader)
        throw CodecError(CodecError::Kind::malformed, "length header exceeds decoded data");
    return Bytes(framed.begin() + kLengthHeader, framed.begin() + kLengthHeader + len);
}

const ErasureCode& code_for(CodeParams params) {
    static std::mutex mu;
    static std::map<std::pair<std::size_t, std::size_t>, std::unique_ptr<ReedSolomon>> cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{params.n, params.k}];
    if (!slot) slot = std::make_unique<ReedSolomon>(params);
    return *slot;
}

std::vector<CodedElement> encode(CodeParams params, std::span<const std::uint8_t> value) {
    return code_for(params).encode(value);
}

Bytes decode(CodeParams params, std::span<const CodedElement> elements) {
    return code_for(params).decode(elements);
}

}  // namespace ares
