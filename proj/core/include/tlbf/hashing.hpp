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

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace tlbf {

// Two 64-bit base values for double hashing. The i-th logical hash function of
// an element is h1 + i * h2 (mod 2^64), reduced to the slice size.
struct HashPair {
    std::uint64_t h1 = 0;
    std::uint64_t h2 = 0;

    friend bool operator==(const HashPair&, const HashPair&) = default;
};

// Seeded, deterministic, non-cryptographic hash of an arbitrary byte string.
[[nodiscard]] HashPair hash_element(std::span<const std::byte> element, std::uint64_t seed) noexcept;

[[nodiscard]] inline HashPair hash_element(std::string_view element, std::uint64_t seed) noexcept
{
    return hash_element(std::as_bytes(std::span{element.data(), element.size()}), seed);
}

// Position in [0, size) selected by logical hash function `hash_index`.
// Slices sharing a hash_index reduce the same 64-bit pre-image to their own size.
[[nodiscard]] constexpr std::uint64_t bit_position(HashPair p, std::uint32_t hash_index, std::uint64_t size) noexcept
{
    return (p.h1 + static_cast<std::uint64_t>(hash_index) * p.h2) % size;
}

}  // namespace tlbf
