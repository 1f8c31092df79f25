#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "mordell/errors.hpp"
#include "mordell/modarith.hpp"

namespace mordell {

namespace detail {

// One strong-probable-prime round to base a for odd n = q * 2^k + 1.
inline bool sprp_round(uint64_t n, uint64_t a, uint64_t q, int k) {
    a %= n;
    if (a == 0) return true;
    uint64_t x = powmod(a, q, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < k; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace detail

/// Deterministic Miller-Rabin. The twelve bases below are a proven witness
/// set for every n < 2^64, so the answer is exact, not probabilistic.
inline bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    uint64_t q = n - 1;
    int k = 0;
    while ((q & 1) == 0) {
        q >>= 1;
        ++k;
    }
    for (uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (!detail::sprp_round(n, a, q, k)) return false;
    return true;
}

enum class ResidueFilter { all, mod4_eq_1, mod4_eq_3 };

/// Primes in [lo, hi) by a segmented Eratosthenes sieve, optionally keeping
/// only one residue class mod 4. The segment is materialized as one byte per
/// candidate, so the span is capped; callers stream larger ranges in chunks.
inline std::vector<uint64_t> sieve_segment(uint64_t lo, uint64_t hi,
                                           ResidueFilter filter = ResidueFilter::all) {
    std::vector<uint64_t> out;
    if (lo >= hi) return out;
    if (hi > (uint64_t{1} << 62))
        throw RangeTooLarge("sieve_segment: hi must be at most 2^62");
    if (hi - lo > (uint64_t{1} << 28))
        throw RangeTooLarge("sieve_segment: span " + std::to_string(hi - lo) +
                            " exceeds 2^28; sieve in chunks");

    const uint64_t span = hi - lo;
    const uint64_t root = isqrt_u64(hi - 1);
    // Base primes up to sqrt(hi) by a plain odd-only sieve.
    std::vector<uint64_t> base;
    if (root >= 2) base.push_back(2);
    if (root >= 3) {
        std::vector<bool> comp((root - 1) / 2, false);  // comp[i] <-> 2i + 3
        for (uint64_t i = 0; i < comp.size(); ++i) {
            if (comp[i]) continue;
            uint64_t p = 2 * i + 3;
            base.push_back(p);
            if (p * p > root) continue;
            for (uint64_t j = (p * p - 3) / 2; j < comp.size(); j += p) comp[j] = true;
        }
    }

    std::vector<bool> comp(span, false);
    for (uint64_t p : base) {
        uint64_t start = p * p;
        if (start < lo) start = ((lo + p - 1) / p) * p;
        for (uint64_t m = start; m < hi; m += p) comp[m - lo] = true;
    }

    auto keep = [filter](uint64_t p) {
        switch (filter) {
            case ResidueFilter::mod4_eq_1: return p % 4 == 1;
            case ResidueFilter::mod4_eq_3: return p % 4 == 3;
            default: return true;
        }
    };
    for (uint64_t i = 0; i < span; ++i) {
        uint64_t v = lo + i;
        if (v < 2 || comp[i]) continue;
        if (keep(v)) out.push_back(v);
    }
    return out;
}

}  // namespace mordell
