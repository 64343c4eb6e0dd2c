#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <unordered_set>
#include <vector>

#include "nplan/rng.hpp"

namespace nplan {

inline constexpr std::uint64_t kBinomialSaturated =
    std::numeric_limits<std::uint64_t>::max();

// C(n, k), saturating at 2^64-1 instead of overflowing.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    if (k > n - k) k = n - k;
    unsigned __int128 r = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        r = r * (n - k + i) / i; // stays integral: product of i consecutive terms
        if (r > kBinomialSaturated) return kBinomialSaturated;
    }
    return static_cast<std::uint64_t>(r);
}

// rank -> k-combination of {0..m-1} in lexicographic order.
inline std::vector<std::uint32_t> unrank_combination(std::uint64_t rank,
                                                     std::uint32_t m,
                                                     std::uint32_t k) {
    std::vector<std::uint32_t> out;
    out.reserve(k);
    std::uint32_t next = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
        for (std::uint32_t cand = next;; ++cand) {
            const std::uint64_t below = binomial(m - 1 - cand, k - 1 - i);
            if (rank < below) {
                out.push_back(cand);
                next = cand + 1;
                break;
            }
            rank -= below;
        }
    }
    return out;
}

// Inverse of unrank_combination; `comb` must be strictly increasing over {0..m-1}.
inline std::uint64_t rank_combination(const std::vector<std::uint32_t>& comb,
                                      std::uint32_t m) {
    const std::uint32_t k = static_cast<std::uint32_t>(comb.size());
    std::uint64_t rank = 0;
    std::uint32_t next = 0;
    for (std::uint32_t i = 0; i < k; ++i) {
        for (std::uint32_t skipped = next; skipped < comb[i]; ++skipped)
            rank += binomial(m - 1 - skipped, k - 1 - i);
        next = comb[i] + 1;
    }
    return rank;
}

// z distinct values from [0, n), each z-subset equally likely (Floyd).
// Returned sorted ascending.
inline std::vector<std::uint64_t> sample_distinct(Rng& rng, std::uint64_t n,
                                                  std::uint64_t z) {
    std::vector<std::uint64_t> out;
    out.reserve(z);
    std::unordered_set<std::uint64_t> chosen;
    chosen.reserve(z * 2);
    for (std::uint64_t j = n - z; j < n; ++j) {
        const std::uint64_t t = rng.below(j + 1);
        const std::uint64_t pick = chosen.count(t) ? j : t;
        chosen.insert(pick);
        out.push_back(pick);
    }
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace nplan
