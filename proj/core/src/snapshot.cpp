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

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "tlbf/time_limited_filter.hpp"

namespace tlbf {

namespace {

constexpr std::array<std::uint8_t, 4> kMagic{'T', 'L', 'B', 'F'};
constexpr std::uint16_t kVersion = 1;

class Writer {
public:
    template <typename T>
    void put(T value)
    {
        for (std::size_t i = 0; i < sizeof(T); ++i) {
            out_.push_back(static_cast<std::uint8_t>(static_cast<std::uint64_t>(value) >> (8 * i)));
        }
    }
    void put_bytes(std::span<const std::uint8_t> bytes) { out_.insert(out_.end(), bytes.begin(), bytes.end()); }
    std::vector<std::uint8_t> take() { return std::move(out_); }

private:
    std::vector<std::uint8_t> out_;
};

class Reader {
public:
    explicit Reader(std::span<const std::uint8_t> in) : in_{in} {}

    template <typename T>
    T get()
    {
        const auto bytes = take(sizeof(T));
        std::uint64_t v = 0;
        for (std::size_t i = sizeof(T); i-- > 0;) {
            v = (v << 8) | bytes[i];
        }
        return static_cast<T>(v);
    }

    std::span<const std::uint8_t> take(std::size_t n)
    {
        if (n > in_.size() - pos_) {
            throw std::invalid_argument("deserialize: truncated snapshot");
        }
        auto s = in_.subspan(pos_, n);
        pos_ += n;
        return s;
    }

    [[nodiscard]] bool done() const noexcept { return pos_ == in_.size(); }

private:
    std::span<const std::uint8_t> in_;
    std::size_t pos_ = 0;
};

}  // namespace

std::vector<std::uint8_t> serialize(const TimeLimitedFilter& filter)
{
    Writer w;
    w.put_bytes(kMagic);
    w.put<std::uint16_t>(kVersion);
    w.put<std::uint32_t>(filter.k_);
    w.put<std::uint32_t>(filter.l_);
    w.put<std::uint64_t>(filter.t_span_);
    w.put<std::uint64_t>(filter.seed_);
    w.put<std::uint32_t>(static_cast<std::uint32_t>(filter.slices_.size()));
    w.put<std::uint64_t>(filter.shift_countdown_);
    w.put<std::uint64_t>(filter.total_inserted_);
    w.put<std::uint64_t>(filter.last_shift_time_.ms);
    for (const Slice& s : filter.slices_) {
        w.put<std::uint64_t>(s.size());
        w.put<std::uint64_t>(s.inserted);
        w.put<std::uint64_t>(s.last_update.ms);
        w.put<std::uint32_t>(s.hash_index);
        w.put_bytes(s.bits.to_bytes());
    }
    return w.take();
}

TimeLimitedFilter deserialize(std::span<const std::uint8_t> bytes, Clock clock)
{
    Reader r{bytes};
    const auto magic = r.take(kMagic.size());
    if (!std::equal(magic.begin(), magic.end(), kMagic.begin())) {
        throw std::invalid_argument("deserialize: bad magic");
    }
    if (const auto version = r.get<std::uint16_t>(); version != kVersion) {
        throw std::invalid_argument("deserialize: unsupported version " + std::to_string(version));
    }

    TimeLimitedFilter f{TimeLimitedFilter::RestoreTag{}, std::move(clock)};
    f.k_ = r.get<std::uint32_t>();
    f.l_ = r.get<std::uint32_t>();
    f.t_span_ = r.get<std::uint64_t>();
    f.seed_ = r.get<std::uint64_t>();
    const auto num_slices = r.get<std::uint32_t>();
    f.shift_countdown_ = r.get<std::uint64_t>();
    f.total_inserted_ = r.get<std::uint64_t>();
    f.last_shift_time_ = Timestamp{r.get<std::uint64_t>()};

    FilterParams{f.k_, f.l_, f.t_span_, 1, f.seed_}.validate();
    if (num_slices < static_cast<std::uint64_t>(f.k_) + f.l_) {
        throw std::invalid_argument("deserialize: fewer than k + l slices");
    }

    for (std::uint32_t i = 0; i < num_slices; ++i) {
        const auto m = r.get<std::uint64_t>();
        const auto n = r.get<std::uint64_t>();
        const auto t = r.get<std::uint64_t>();
        const auto hash_index = r.get<std::uint32_t>();
        if (m == 0) {
            throw std::invalid_argument("deserialize: empty slice");
        }
        if (hash_index >= f.k_) {
            throw std::invalid_argument("deserialize: hash index out of range");
        }
        if (m / 8 > bytes.size()) {
            throw std::invalid_argument("deserialize: truncated snapshot");
        }
        auto bits = BitArray::from_bytes(m, r.take((m + 7) / 8));
        f.slices_.push_back(Slice{std::move(bits), n, Timestamp{t}, hash_index});
    }
    if (!r.done()) {
        throw std::invalid_argument("deserialize: trailing bytes");
    }
    return f;
}

}  // namespace tlbf
