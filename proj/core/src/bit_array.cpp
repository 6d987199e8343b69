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

#include "tlbf/bit_array.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace tlbf {

namespace {

std::size_t words_for(std::size_t bits) { return (bits + BitArray::kWordBits - 1) / BitArray::kWordBits; }

}  // namespace

BitArray::BitArray(std::size_t size) : size_{size}
{
    if (size == 0) {
        throw std::invalid_argument("BitArray: size must be positive");
    }
    words_.assign(words_for(size), 0);
}

void BitArray::set(std::size_t pos)
{
    if (pos >= size_) {
        throw std::out_of_range("BitArray::set: position " + std::to_string(pos) + " >= size " + std::to_string(size_));
    }
    set_unchecked(pos);
}

bool BitArray::test(std::size_t pos) const
{
    if (pos >= size_) {
        throw std::out_of_range("BitArray::test: position " + std::to_string(pos) + " >= size " + std::to_string(size_));
    }
    return test_unchecked(pos);
}

std::size_t BitArray::popcount() const noexcept
{
    return std::accumulate(words_.begin(), words_.end(), std::size_t{0},
                           [](std::size_t acc, Word w) { return acc + static_cast<std::size_t>(std::popcount(w)); });
}

std::vector<std::uint8_t> BitArray::to_bytes() const
{
    std::vector<std::uint8_t> out((size_ + 7) / 8);
    for (std::size_t i = 0; i < out.size(); ++i) {
        out[i] = static_cast<std::uint8_t>(words_[i / 8] >> (8 * (i % 8)));
    }
    return out;
}

BitArray BitArray::from_bytes(std::size_t size, std::span<const std::uint8_t> bytes)
{
    BitArray out(size);
    if (bytes.size() != (size + 7) / 8) {
        throw std::invalid_argument("BitArray::from_bytes: payload length does not match size");
    }
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        out.words_[i / 8] |= Word{bytes[i]} << (8 * (i % 8));
    }
    const std::size_t tail = size % kWordBits;
    if (tail != 0 && (out.words_.back() >> tail) != 0) {
        throw std::invalid_argument("BitArray::from_bytes: padding bits set");
    }
    return out;
}

}  // namespace tlbf
