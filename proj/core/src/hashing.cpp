// Copyright 2026 The tlbf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "tlbf/hashing.hpp"

namespace tlbf {

namespace {

// MurmurHash64A (Austin Appleby, public domain), endian-fixed to little-endian
// block reads so hashes are stable across hosts.
constexpr std::uint64_t kMul = 0xc6a4a7935bd1e995ULL;
constexpr int kRot = 47;

std::uint64_t load_le64(const std::byte* p) noexcept
{
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i) {
        v = (v << 8) | static_cast<std::uint64_t>(p[i]);
    }
    return v;
}

std::uint64_t murmur64a(std::span<const std::byte> data, std::uint64_t seed) noexcept
{
    const std::size_t len = data.size();
    std::uint64_t h = seed ^ (static_cast<std::uint64_t>(len) * kMul);

    const std::size_t blocks = len / 8;
    for (std::size_t b = 0; b < blocks; ++b) {
        std::uint64_t k = load_le64(data.data() + 8 * b);
        k *= kMul;
        k ^= k >> kRot;
        k *= kMul;
        h ^= k;
        h *= kMul;
    }

    const std::byte* tail = data.data() + 8 * blocks;
    const std::size_t rem = len & 7;
    if (rem != 0) {
        for (std::size_t i = rem; i-- > 0;) {
            h ^= static_cast<std::uint64_t>(tail[i]) << (8 * i);
        }
        h *= kMul;
    }

    h ^= h >> kRot;
    h *= kMul;
    h ^= h >> kRot;
    return h;
}

// splitmix64 finalizer
std::uint64_t mix64(std::uint64_t z) noexcept
{
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace

HashPair hash_element(std::span<const std::byte> element, std::uint64_t seed) noexcept
{
    const std::uint64_t h1 = murmur64a(element, seed);
    const std::uint64_t h2 = mix64(h1 ^ mix64(seed + 0x9e3779b97f4a7c15ULL));
    return {h1, h2};
}

}  // namespace tlbf
