#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "mordell/errors.hpp"
#include "mordell/modarith.hpp"
#include "mordell/surd.hpp"

namespace mordell {

/// Exact convergent k_i / h_i of the RCF of sqrt(d). Index runs from -1 so
/// the seeds h_{-1} = 0, k_{-1} = 1 are ordinary list elements.
struct ConvergentPair {
    int64_t i;
    mpz_class h;
    mpz_class k;
};

/// Exact pairs (h_i, k_i) for i = -1 .. upto, from the recurrence
/// h_{i+1} = a_{i+1} h_i + h_{i-1} (same shape for k) with seeds
/// h_{-1} = 0, k_{-1} = 1, h_0 = 1, k_0 = n.
///
/// The returned list has upto + 2 entries; entry j carries index i = j - 1.
inline std::vector<ConvergentPair> convergent_stream(const CFExpansion& exp, uint64_t upto) {
    if (upto > exp.l() - 1)
        throw IndexOutOfRange("convergent_stream: upto = " + std::to_string(upto) +
                              " exceeds l-1 = " + std::to_string(exp.l() - 1));
    std::vector<ConvergentPair> out;
    out.reserve(upto + 2);
    out.push_back({-1, mpz_class(0), mpz_class(1)});
    out.push_back({0, mpz_class(1), mpz_class(exp.n)});
    for (uint64_t i = 1; i <= upto; ++i) {
        uint64_t a = exp.period[i - 1];
        const ConvergentPair& p1 = out[out.size() - 1];
        const ConvergentPair& p2 = out[out.size() - 2];
        ConvergentPair next{(int64_t)i, p2.h, p2.k};
        mpz_addmul_ui(next.h.get_mpz_t(), p1.h.get_mpz_t(), a);
        mpz_addmul_ui(next.k.get_mpz_t(), p1.k.get_mpz_t(), a);
        out.push_back(std::move(next));
    }
    return out;
}

/// Checks k_i h_{i-1} - k_{i-1} h_i = (-1)^{i-1} at every index i >= 0 of
/// the stream. A false return means the stream (or its caller) is corrupt.
inline bool check_wronskian(const std::vector<ConvergentPair>& pairs) {
    mpz_class t;
    for (size_t j = 1; j < pairs.size(); ++j) {
        t = pairs[j].k * pairs[j - 1].h - pairs[j - 1].k * pairs[j].h;
        int64_t i = pairs[j].i;
        int expect = (i % 2 == 0) ? -1 : 1;  // (-1)^(i-1)
        if (t != expect) return false;
    }
    return true;
}

/// Palindromic splitting of the last numerator-denominator:
/// h_{l-1} = h_i h_{l-1-i} + h_{i-1} h_{l-2-i}.
inline bool palindromic_split(const CFExpansion& exp, const std::vector<ConvergentPair>& pairs,
                              uint64_t i) {
    const uint64_t l = exp.l();
    if (l < 2 || i > l - 2)
        throw IndexOutOfRange("palindromic_split: need 0 <= i <= l-2, got i = " +
                              std::to_string(i) + " with l = " + std::to_string(l));
    if (pairs.size() < l + 1)
        throw IndexOutOfRange("palindromic_split: stream must cover index l-1");
    auto h = [&pairs](int64_t idx) -> const mpz_class& { return pairs[idx + 1].h; };
    mpz_class rhs = h(i) * h(l - 1 - i) + h((int64_t)i - 1) * h(l - 2 - i);
    return rhs == h(l - 1);
}

/// Rolling pair of h-residues mod m; the modular image of the exact stream.
struct ModConvergentState {
    uint64_t modulus;
    uint64_t i;
    uint64_t h_prev;  // h_{i-1} mod m
    uint64_t h_cur;   // h_i mod m
};

/// Runs the surd recurrence for sqrt(d) and folds each partial quotient into
/// the rolling residue pair. No arbitrary-precision value is ever formed.
inline ModConvergentState convergent_mod_stream(uint64_t d, uint64_t m, uint64_t upto) {
    if (m < 2) throw DomainTooSmall("convergent_mod_stream: modulus must be at least 2");
    if (m >= (uint64_t{1} << 62))
        throw Overflow("convergent_mod_stream: modulus must be below 2^62");
    ModConvergentState st{m, 0, 0, 1 % m};
    if (upto == 0) return st;
    SurdState s = surd_init(d);
    for (uint64_t i = 1; i <= upto; ++i) {
        s = surd_step(s);
        uint64_t t = addmod(mulmod(s.a % m, st.h_cur, m), st.h_prev, m);
        st.h_prev = st.h_cur;
        st.h_cur = t;
    }
    st.i = upto;
    return st;
}

}  // namespace mordell
