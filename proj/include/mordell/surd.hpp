#pragma once

#include <cassert>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "mordell/errors.hpp"
#include "mordell/modarith.hpp"

namespace mordell {

/// One state of the integer surd recurrence for sqrt(d).
///
/// State i represents the complete quotient (P_i + sqrt(d)) / Q_i together
/// with the emitted partial quotient a_i. For every i >= 1 the classical
/// bounds 1 <= P_i <= n and 1 <= Q_i <= 2n hold, where n = floor(sqrt(d)),
/// so with d < 2^62 every intermediate product below stays under 2^63.
struct SurdState {
    uint64_t d;
    uint64_t index;
    uint64_t P;
    uint64_t Q;
    uint64_t a;
    uint64_t root;  // floor(sqrt(d)), cached so stepping never re-roots
};

/// Builds state 0: P = 0, Q = 1, a_0 = floor(sqrt(d)).
inline SurdState surd_init(uint64_t d) {
    if (d < 2) throw DomainTooSmall("surd_init: d must be at least 2, got " + std::to_string(d));
    if (d >= (uint64_t{1} << 62))
        throw Overflow("surd_init: d must be below 2^62, got " + std::to_string(d));
    uint64_t n = isqrt_u64(d);
    if (n * n == d)
        throw PerfectSquare("surd_init: d = " + std::to_string(d) + " is a perfect square");
    return SurdState{d, 0, 0, 1, n, n};
}

/// Advances one state of the recurrence:
///   P' = a*Q - P,  Q' = (d - P'^2) / Q,  a' = floor((P' + n) / Q').
///
/// The division defining Q' is exact (Q divides d - P'^2 is an invariant of
/// the recurrence) and all quantities fit comfortably in 64 bits given the
/// d < 2^62 gate in surd_init.
inline SurdState surd_step(const SurdState& s) {
    uint64_t P1 = s.a * s.Q - s.P;
    assert(P1 <= s.root);
    assert((s.d - P1 * P1) % s.Q == 0);
    uint64_t Q1 = (s.d - P1 * P1) / s.Q;
    // d < 2^62 puts both operands below 2^32, and 32-bit division is
    // noticeably cheaper than 64-bit on the machines this targets.
    uint64_t a1 = (uint32_t)(P1 + s.root) / (uint32_t)Q1;
    return SurdState{s.d, s.index + 1, P1, Q1, a1, s.root};
}

/// Regular continued fraction of sqrt(d): the integer part n and one full
/// period. period[j] holds a_{j+1}, so period.back() == 2n and the other
/// terms form a palindrome.
struct CFExpansion {
    uint64_t d;
    uint64_t n;
    std::vector<uint64_t> period;

    uint64_t l() const { return period.size(); }
};

/// Runs the recurrence until the (P, Q) pair first returns to its index-1
/// value, which closes the period. Throws PeriodGuardExceeded if the period
/// would be longer than max_terms.
inline CFExpansion expand_sqrt(uint64_t d,
                               uint64_t max_terms = std::numeric_limits<uint64_t>::max()) {
    SurdState s = surd_step(surd_init(d));
    const uint64_t P1 = s.P, Q1 = s.Q;
    CFExpansion out{d, s.root, {}};
    while (true) {
        if (out.period.size() >= max_terms)
            throw PeriodGuardExceeded("expand_sqrt: period of sqrt(" + std::to_string(d) +
                                      ") exceeds " + std::to_string(max_terms) + " terms");
        out.period.push_back(s.a);
        s = surd_step(s);
        if (s.P == P1 && s.Q == Q1) break;
    }
    return out;
}

enum class Parity { even, odd };

/// Result of the midpoint scan: the period length l, its parity, and the
/// index j at which the symmetry fired (l = 2j for even, l = 2j + 1 for odd).
struct HalfPeriod {
    uint64_t l;
    Parity parity;
    uint64_t mid_index;
};

/// Finds the period length of sqrt(d) from the palindrome midpoint alone,
/// in l/2 + O(1) steps instead of l.
///
/// The period is even, l = 2j, exactly when P_j = P_{j+1}, and odd,
/// l = 2j + 1, exactly when Q_j = Q_{j+1}. The Q comparison must start at
/// j = 0 to catch l = 1 (d = n^2 + 1, where every later state repeats and
/// both comparisons would fire ambiguously); the P comparison cannot fire
/// at j = 0 because P_0 = 0 while P_1 = n >= 1.
inline HalfPeriod detect_half_period(uint64_t d) {
    SurdState prev = surd_init(d);
    SurdState cur = surd_step(prev);
    if (prev.Q == cur.Q) return HalfPeriod{1, Parity::odd, 0};
    while (true) {
        SurdState next = surd_step(cur);
        if (cur.P == next.P) return HalfPeriod{2 * cur.index, Parity::even, cur.index};
        if (cur.Q == next.Q) return HalfPeriod{2 * cur.index + 1, Parity::odd, cur.index};
        cur = next;
    }
}

}  // namespace mordell
