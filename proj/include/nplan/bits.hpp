#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <vector>

#include "nplan/rng.hpp"

namespace nplan {

// Fixed-width bit-vector used for planning states and atom sets. Width is
// set at construction and equality/hash cover every bit of it.
class StateBits {
public:
    StateBits() = default;

    explicit StateBits(std::uint32_t num_bits)
        : num_bits_(num_bits), words_((num_bits + 63) / 64, 0) {}

    std::uint32_t size() const { return num_bits_; }

    bool test(std::uint32_t i) const {
        return (words_[i >> 6] >> (i & 63)) & 1;
    }

    void set(std::uint32_t i) { words_[i >> 6] |= std::uint64_t(1) << (i & 63); }

    void reset(std::uint32_t i) {
        words_[i >> 6] &= ~(std::uint64_t(1) << (i & 63));
    }

    std::uint32_t count() const {
        std::uint32_t n = 0;
        for (std::uint64_t w : words_) n += std::popcount(w);
        return n;
    }

    // Indices of set bits, ascending.
    std::vector<std::uint32_t> ones() const {
        std::vector<std::uint32_t> out;
        out.reserve(count());
        for (std::size_t wi = 0; wi < words_.size(); ++wi) {
            std::uint64_t w = words_[wi];
            while (w) {
                const int b = std::countr_zero(w);
                out.push_back(static_cast<std::uint32_t>(wi * 64 + b));
                w &= w - 1;
            }
        }
        return out;
    }

    bool contains_all(const StateBits& other) const {
        for (std::size_t i = 0; i < words_.size(); ++i)
            if ((other.words_[i] & ~words_[i]) != 0) return false;
        return true;
    }

    std::uint32_t count_and(const StateBits& other) const {
        std::uint32_t n = 0;
        for (std::size_t i = 0; i < words_.size(); ++i)
            n += std::popcount(words_[i] & other.words_[i]);
        return n;
    }

    StateBits& operator|=(const StateBits& other) {
        for (std::size_t i = 0; i < words_.size(); ++i)
            words_[i] |= other.words_[i];
        return *this;
    }

    bool operator==(const StateBits& other) const = default;

    std::uint64_t hash() const {
        std::uint64_t h = mix64(num_bits_);
        for (std::uint64_t w : words_) h = mix64(h ^ w);
        return h;
    }

private:
    std::uint32_t num_bits_ = 0;
    std::vector<std::uint64_t> words_;
};

struct StateBitsHash {
    std::size_t operator()(const StateBits& s) const {
        return static_cast<std::size_t>(s.hash());
    }
};

} // namespace nplan
