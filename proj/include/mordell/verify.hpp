#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "mordell/errors.hpp"
#include "mordell/pell.hpp"
#include "mordell/primes.hpp"
#include "mordell/surd.hpp"

namespace mordell {

enum class Method { fast, full, both };
enum class Verdict { holds, counterexample };

inline const char* to_string(Method m) {
    switch (m) {
        case Method::fast: return "fast";
        case Method::full: return "full";
        default: return "both";
    }
}

inline const char* to_string(Verdict v) {
    return v == Verdict::holds ? "holds" : "COUNTEREXAMPLE";
}

/// Per-prime verification result. In Mordell mode the witness is
/// h_{l/2-1} mod p and central is a_{l/2}; in A-A-C mode the witness is
/// h_{l-1} mod p and central is 0 (odd periods have no central term).
struct VerificationRecord {
    uint64_t p = 0;
    unsigned p_mod_8 = 0;
    uint64_t period_len = 0;
    uint64_t central = 0;
    uint64_t witness_residue = 0;
    Method method = Method::fast;
    Verdict verdict = Verdict::holds;
};

/// Step counter for the fast path's performance contract.
struct FastPathStats {
    uint64_t surd_steps = 0;
};

/// Half-period modular verification of Mordell's criterion: p | y iff
/// p | h_{l/2-1}. Advances the surd state exactly l/2 times, carrying the
/// rolling h-pair mod p, and stops at the palindrome midpoint. No
/// arbitrary-precision arithmetic anywhere.
inline VerificationRecord mordell_fast(uint64_t p, FastPathStats* stats = nullptr) {
    if (p % 4 != 3)
        throw NotCongruent3Mod4("mordell_fast: p = " + std::to_string(p) + " is not 3 mod 4");
    SurdState cur = surd_step(surd_init(p));
    uint64_t steps = 1;
    // Q_1 = 1 would mean l = 1, an odd period; impossible since p = n^2 + 1
    // is never 3 mod 4.
    if (cur.Q == 1)
        throw InternalError("mordell_fast: odd period parity for p = " + std::to_string(p));
    uint64_t h_prev = 0, h_cur = 1;  // h_{i-1}, h_i mod p with i = cur.index - 1
    VerificationRecord rec;
    while (true) {
        SurdState next = surd_step(cur);
        if (cur.P == next.P) {  // midpoint: l = 2 * cur.index
            rec.period_len = 2 * cur.index;
            rec.central = cur.a;
            rec.witness_residue = h_cur;  // h_{l/2-1} mod p
            break;
        }
        if (cur.Q == next.Q)
            throw InternalError("mordell_fast: odd period parity for p = " + std::to_string(p));
        uint64_t t = addmod(mulmod(cur.a % p, h_cur, p), h_prev, p);
        h_prev = h_cur;
        h_cur = t;
        cur = next;
        ++steps;
    }
    if (stats) stats->surd_steps = steps;
    rec.p = p;
    rec.p_mod_8 = (unsigned)(p % 8);
    rec.method = Method::fast;
    rec.verdict = rec.witness_residue != 0 ? Verdict::holds : Verdict::counterexample;
    return rec;
}

/// Exact verification: computes the fundamental solution with big integers
/// and reduces y mod p directly. Slow but assumption-free; the harness runs
/// it on a subsample as a continuous cross-check of the fast path.
inline VerificationRecord mordell_full(uint64_t p) {
    if (p % 4 != 3)
        throw NotCongruent3Mod4("mordell_full: p = " + std::to_string(p) + " is not 3 mod 4");
    HalfPeriod hp = detect_half_period(p);
    if (hp.parity != Parity::even)
        throw InternalError("mordell_full: odd period parity for p = " + std::to_string(p));
    PellSolution sol = fundamental_solution(p);
    VerificationRecord rec;
    rec.p = p;
    rec.p_mod_8 = (unsigned)(p % 8);
    rec.period_len = hp.l;
    rec.central = expand_sqrt(p).period[hp.l / 2 - 1];
    rec.witness_residue = mpz_fdiv_ui(sol.y.get_mpz_t(), p);
    rec.method = Method::full;
    rec.verdict = rec.witness_residue != 0 ? Verdict::holds : Verdict::counterexample;
    return rec;
}

/// Fast A-A-C check for p = 1 mod 4: witness is h_{l-1} mod p over the full
/// period, computed purely modularly.
inline VerificationRecord aac_fast(uint64_t p) {
    if (p % 4 != 1)
        throw NotCongruent1Mod4("aac_fast: p = " + std::to_string(p) + " is not 1 mod 4");
    SurdState s = surd_step(surd_init(p));
    uint64_t h_prev = 0, h_cur = 1;
    while (s.Q != 1) {
        uint64_t t = addmod(mulmod(s.a % p, h_cur, p), h_prev, p);
        h_prev = h_cur;
        h_cur = t;
        s = surd_step(s);
    }
    // Legendre: the negative Pell equation is solvable for primes 1 mod 4,
    // so the period is odd. An even one here means broken machinery.
    if (s.index % 2 == 0)
        throw InternalError("aac_fast: even period for p = " + std::to_string(p));
    VerificationRecord rec;
    rec.p = p;
    rec.p_mod_8 = (unsigned)(p % 8);
    rec.period_len = s.index;
    rec.central = 0;
    rec.witness_residue = h_cur;
    rec.method = Method::fast;
    rec.verdict = rec.witness_residue != 0 ? Verdict::holds : Verdict::counterexample;
    return rec;
}

/// Exact A-A-C check: reduces the exact h_{l-1} mod p.
inline VerificationRecord aac_full(uint64_t p) {
    if (p % 4 != 1)
        throw NotCongruent1Mod4("aac_full: p = " + std::to_string(p) + " is not 1 mod 4");
    HalfPeriod hp = detect_half_period(p);
    if (hp.parity != Parity::odd)
        throw InternalError("aac_full: even period for p = " + std::to_string(p));
    PellSolution sol = fundamental_solution(p);
    VerificationRecord rec;
    rec.p = p;
    rec.p_mod_8 = (unsigned)(p % 8);
    rec.period_len = hp.l;
    rec.central = 0;
    rec.witness_residue = mpz_fdiv_ui(sol.y.get_mpz_t(), p);
    rec.method = Method::full;
    rec.verdict = rec.witness_residue != 0 ? Verdict::holds : Verdict::counterexample;
    return rec;
}

struct Classification {
    uint64_t l;
    uint64_t central;
    bool golubeva_ok;
};

/// Period length, central term, and the Golubeva congruences:
/// p = 3 mod 8 forces l = 2 mod 4, p = 7 mod 8 forces l = 0 mod 4,
/// together with the central-term law.
inline Classification classify(uint64_t p) {
    if (p % 4 != 3)
        throw NotCongruent3Mod4("classify: p = " + std::to_string(p) + " is not 3 mod 4");
    CFExpansion exp = expand_sqrt(p);
    const uint64_t l = exp.l();
    uint64_t central = exp.period[l / 2 - 1];
    bool congruence = (p % 8 == 3) ? (l % 4 == 2) : (l % 4 == 0);
    bool central_ok = central % 2 == 1 && (central == exp.n || central == exp.n - 1);
    return Classification{l, central, congruence && central_ok};
}

namespace detail {

template <typename Next>
std::vector<uint64_t> prime_family(size_t count, Next next_candidate) {
    std::vector<uint64_t> out;
    out.reserve(count);
    while (out.size() < count) {
        uint64_t c = next_candidate();
        if (is_prime_u64(c)) out.push_back(c);
    }
    return out;
}

}  // namespace detail

/// First `count` primes of the form n^2 + 2 (all have period 2).
inline std::vector<uint64_t> family_period2(size_t count) {
    uint64_t n = 1;
    return detail::prime_family(count, [&n] {
        uint64_t c = n * n + 2;
        ++n;
        return c;
    });
}

/// First `count` primes of the form m^2 - 2, m >= 3 (all have period 4).
/// m = 2 would give p = 2, whose period is 1, so the scan starts at 3.
inline std::vector<uint64_t> family_period4(size_t count) {
    uint64_t m = 3;
    return detail::prime_family(count, [&m] {
        uint64_t c = m * m - 2;
        ++m;
        return c;
    });
}

/// First `count` primes of the form 36k^2 + 52k + 19, k >= 0 (period 6).
inline std::vector<uint64_t> family_period6(size_t count) {
    uint64_t k = 0;
    return detail::prime_family(count, [&k] {
        uint64_t c = 36 * k * k + 52 * k + 19;
        ++k;
        return c;
    });
}

}  // namespace mordell
