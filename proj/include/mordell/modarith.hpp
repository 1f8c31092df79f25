#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>

namespace mordell {

/// (a + b) mod m for a, b already reduced mod m. Works for any m < 2^64
/// because the wrap-around case is detected through the unsigned overflow.
inline uint64_t addmod(uint64_t a, uint64_t b, uint64_t m) {
    assert(a < m && b < m);
    uint64_t s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

/// (a * b) mod m for a, b already reduced mod m.
///
/// On x86-64 a single divq folds the 128-bit product down; the quotient
/// always fits in 64 bits because a*b < m*2^64 whenever both operands are
/// reduced, so the instruction cannot fault.
inline uint64_t mulmod(uint64_t a, uint64_t b, uint64_t m) {
    assert(m > 0 && a < m && b < m);
#if defined(__x86_64__) && (defined(__GNUC__) || defined(__clang__))
    unsigned __int128 t = (unsigned __int128)a * b;
    uint64_t q, r;
    uint64_t lo = (uint64_t)t, hi = (uint64_t)(t >> 64);
    __asm__("divq %[m]" : "=a"(q), "=d"(r) : [m] "r"(m), "a"(lo), "d"(hi));
    (void)q;
    return r;
#else
    return (uint64_t)((unsigned __int128)a * b % m);
#endif
}

/// a^e mod m by square and multiply. m >= 2 required.
inline uint64_t powmod(uint64_t a, uint64_t e, uint64_t m) {
    assert(m >= 2);
    a %= m;
    uint64_t r = 1 % m;
    while (e) {
        if (e & 1) r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

/// floor(sqrt(n)) for the full uint64 range. Starts from the hardware
/// double sqrt and fixes the at-most-one-off result with exact arithmetic.
inline uint64_t isqrt_u64(uint64_t n) {
    if (n == 0) return 0;
    uint64_t r = (uint64_t)std::sqrt((double)n);
    while (r > 0 && (unsigned __int128)r * r > n) --r;
    while ((unsigned __int128)(r + 1) * (r + 1) <= n) ++r;
    return r;
}

inline bool is_perfect_square_u64(uint64_t n) {
    uint64_t r = isqrt_u64(n);
    return r * r == n;
}

}  // namespace mordell
