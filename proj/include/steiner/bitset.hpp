#pragma once

#include <cstdint>
#include <vector>

namespace steiner {

/// Fixed-size dynamic bitset. Word layout is little-endian per word;
/// lexicographic comparison of bit sequences is provided separately by
/// packing MSB-first where needed (see canonical.hpp).
class Bitset {
public:
    Bitset() = default;
    explicit Bitset(std::size_t nbits) : nbits_(nbits), words_((nbits + 63) / 64, 0) {}

    std::size_t size() const { return nbits_; }

    bool test(std::size_t i) const { return (words_[i >> 6] >> (i & 63)) & 1u; }
    void set(std::size_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }
    void reset(std::size_t i) { words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }

    void clear() { for (auto& w : words_) w = 0; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : words_) c += static_cast<std::size_t>(__builtin_popcountll(w));
        return c;
    }

    /// Index of the lowest set bit, or size() if none.
    std::size_t find_first() const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if (words_[i]) return i * 64 + static_cast<std::size_t>(__builtin_ctzll(words_[i]));
        return nbits_;
    }

    bool operator==(const Bitset& o) const = default;

    const std::vector<std::uint64_t>& words() const { return words_; }

private:
    std::size_t nbits_ = 0;
    std::vector<std::uint64_t> words_;
};

} // namespace steiner
