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

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace tlbf {

// Fixed-length array of single-bit cells. The length is set once at
// construction; storage is packed into 64-bit words, bit `pos` living in
// word pos / 64 at offset pos % 64.
class BitArray {
public:
    using Word = std::uint64_t;
    static constexpr std::size_t kWordBits = 64;

    // Throws std::invalid_argument when size == 0.
    explicit BitArray(std::size_t size);

    [[nodiscard]] std::size_t size() const noexcept { return size_; }

    // Checked accessors; throw std::out_of_range when pos >= size().
    void set(std::size_t pos);
    [[nodiscard]] bool test(std::size_t pos) const;

    // Unchecked variants for the filter's hot path. pos must be < size().
    void set_unchecked(std::size_t pos) noexcept { words_[pos / kWordBits] |= Word{1} << (pos % kWordBits); }
    [[nodiscard]] bool test_unchecked(std::size_t pos) const noexcept
    {
        return ((words_[pos / kWordBits] >> (pos % kWordBits)) & Word{1}) != 0;
    }

    [[nodiscard]] std::size_t popcount() const noexcept;

    // Fraction of set bits.
    [[nodiscard]] double fill_ratio() const noexcept
    {
        return static_cast<double>(popcount()) / static_cast<double>(size_);
    }

    [[nodiscard]] std::span<const Word> words() const noexcept { return words_; }

    // Bytes of the packed payload, little-endian within each word, truncated to
    // ceil(size / 8). Bits past size() are always zero.
    [[nodiscard]] std::vector<std::uint8_t> to_bytes() const;
    // Inverse of to_bytes(). Throws std::invalid_argument if the byte count does
    // not match ceil(size / 8) or if padding bits are set.
    static BitArray from_bytes(std::size_t size, std::span<const std::uint8_t> bytes);

    friend bool operator==(const BitArray&, const BitArray&) = default;

private:
    std::size_t size_;
    std::vector<Word> words_;
};

}  // namespace tlbf
