#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <utility>

#include "mordell/convergents.hpp"
#include "mordell/errors.hpp"
#include "mordell/surd.hpp"

namespace mordell {

/// Minimal positive solution of x^2 - d y^2 = norm, where the norm is
/// (-1)^l as dictated by the period parity of sqrt(d).
struct PellSolution {
    uint64_t d;
    mpz_class x;
    mpz_class y;
    int norm;
};

/// The (a, b, epsilon) of the factorization (x+1)(x-1) = p y^2 for the
/// fundamental solution of x^2 - p y^2 = 1, p prime, p = 3 mod 4:
/// a^2 - p b^2 = epsilon with epsilon = -2 for p = 3 mod 8 and +2 for
/// p = 7 mod 8; a and b are odd, coprime, and a*b = y.
struct UnitDecomposition {
    uint64_t p;
    mpz_class a;
    mpz_class b;
    int epsilon;
};

namespace detail {

/// Exact square root. The callers below apply it to quantities that are
/// provably square, so failure is an internal inconsistency.
inline mpz_class sqrt_exact(const mpz_class& x, const char* what) {
    if (mpz_perfect_square_p(x.get_mpz_t()) == 0)
        throw InexactSquareRoot(std::string(what) + " is not a perfect square: " + x.get_str());
    mpz_class r;
    mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
    return r;
}

}  // namespace detail

/// Fundamental solution (k_{l-1}, h_{l-1}) by streaming one period of the
/// surd recurrence into the convergent recurrences. Only the rolling pairs
/// are kept; the period itself is never materialized.
inline PellSolution fundamental_solution(uint64_t d) {
    SurdState s = surd_step(surd_init(d));
    mpz_class h_prev = 0, h_cur = 1, k_prev = 1, k_cur = s.root;
    uint64_t l;
    while (true) {
        if (s.Q == 1) {  // state l: the period closes with a_l = 2n
            l = s.index;
            break;
        }
        mpz_addmul_ui(h_prev.get_mpz_t(), h_cur.get_mpz_t(), s.a);
        mpz_addmul_ui(k_prev.get_mpz_t(), k_cur.get_mpz_t(), s.a);
        std::swap(h_prev, h_cur);
        std::swap(k_prev, k_cur);
        s = surd_step(s);
    }
    return PellSolution{d, std::move(k_cur), std::move(h_cur), (l % 2 == 0) ? 1 : -1};
}

/// Splits the fundamental +1 solution via (x+1)(x-1) = p y^2. The residue
/// of p mod 8 decides which factor carries the full power of p.
inline UnitDecomposition decompose_unit(uint64_t p, const PellSolution& sol) {
    if (p % 4 != 3)
        throw NotCongruent3Mod4("decompose_unit: p = " + std::to_string(p) +
                                " is not 3 mod 4");
    if (sol.d != p || sol.norm != 1)
        throw InternalError("decompose_unit: sol is not a norm +1 solution for p");
    mpz_class a, b;
    int epsilon;
    // Exactly one of x-1, x+1 carries the full power of p; which one is
    // fixed by p mod 8.
    mpz_class pm = sol.x;
    if (p % 8 == 3)
        pm += 1;
    else
        pm -= 1;
    if (mpz_divisible_ui_p(pm.get_mpz_t(), p) == 0)
        throw InternalError("decompose_unit: p does not divide x -+ 1 for p = " +
                            std::to_string(p));
    if (p % 8 == 3) {
        epsilon = -2;
        a = detail::sqrt_exact(sol.x - 1, "x-1");
        b = detail::sqrt_exact(pm / p, "(x+1)/p");
    } else {
        epsilon = 2;
        a = detail::sqrt_exact(sol.x + 1, "x+1");
        b = detail::sqrt_exact(pm / p, "(x-1)/p");
    }
    if (a * a - p * b * b != epsilon)
        throw InternalError("decompose_unit: a^2 - p b^2 != epsilon for p = " +
                            std::to_string(p));
    if (mpz_odd_p(a.get_mpz_t()) == 0 || mpz_odd_p(b.get_mpz_t()) == 0)
        throw InternalError("decompose_unit: a, b must both be odd for p = " +
                            std::to_string(p));
    if (gcd(a, b) != 1)
        throw InternalError("decompose_unit: a, b must be coprime for p = " +
                            std::to_string(p));
    if (a * b != sol.y)
        throw InternalError("decompose_unit: ab != y for p = " + std::to_string(p));
    return UnitDecomposition{p, std::move(a), std::move(b), epsilon};
}

/// Checks the half-period identities against the exact stream:
/// a = c_{l/2-1} = h_{l/2} + h_{l/2-2}, b = h_{l/2-1}, gcd(b, c) = 1, and
/// c^2 - p h^2 = epsilon. The h_{-1} = 0 seed makes l = 2 work unchanged.
inline bool verify_half_identities(uint64_t p) {
    if (p % 4 != 3)
        throw NotCongruent3Mod4("verify_half_identities: p = " + std::to_string(p) +
                                " is not 3 mod 4");
    CFExpansion exp = expand_sqrt(p);
    const uint64_t l = exp.l();
    auto pairs = convergent_stream(exp, l - 1);
    auto h = [&pairs](int64_t idx) -> const mpz_class& { return pairs[idx + 1].h; };
    PellSolution sol{p, pairs.back().k, pairs.back().h, 1};
    UnitDecomposition dec = decompose_unit(p, sol);
    mpz_class c = h(l / 2) + h((int64_t)(l / 2) - 2);
    const mpz_class& hm = h(l / 2 - 1);
    if (dec.a != c || dec.b != hm) return false;
    if (gcd(hm, c) != 1) return false;
    return c * c - p * hm * hm == dec.epsilon;
}

/// Central-term law: a_{l/2} is odd and equals n or n-1.
inline bool central_term_law(uint64_t p) {
    if (p % 4 != 3)
        throw NotCongruent3Mod4("central_term_law: p = " + std::to_string(p) +
                                " is not 3 mod 4");
    CFExpansion exp = expand_sqrt(p);
    uint64_t central = exp.period[exp.l() / 2 - 1];  // a_{l/2}
    return central % 2 == 1 && (central == exp.n || central == exp.n - 1);
}

/// h_{l-1} mod p over the full (odd) period, the modular witness for the
/// Ankeny-Artin-Chowla divisibility test. Zero iff p divides the
/// y-coefficient of the fundamental unit.
inline uint64_t aac_y_mod_p(uint64_t p) {
    if (p % 4 != 1)
        throw NotCongruent1Mod4("aac_y_mod_p: p = " + std::to_string(p) +
                                " is not 1 mod 4");
    SurdState s = surd_step(surd_init(p));
    uint64_t h_prev = 0, h_cur = 1;
    while (s.Q != 1) {
        uint64_t t = addmod(mulmod(s.a % p, h_cur, p), h_prev, p);
        h_prev = h_cur;
        h_cur = t;
        s = surd_step(s);
    }
    return h_cur;
}

}  // namespace mordell
