#include <catch2/catch_amalgamated.hpp>

#include <cstdint>

#include "mordell/modarith.hpp"
#include "mordell/pell.hpp"
#include "mordell/primes.hpp"
#include "mordell/surd.hpp"
#include "oracles.hpp"

using namespace mordell;

TEST_CASE("fundamental_solution on known cases") {
    PellSolution s3 = fundamental_solution(3);
    CHECK(s3.x == 2);
    CHECK(s3.y == 1);
    CHECK(s3.norm == 1);

    PellSolution s7 = fundamental_solution(7);
    CHECK(s7.x == 8);
    CHECK(s7.y == 3);
    CHECK(s7.norm == 1);

    PellSolution s13 = fundamental_solution(13);
    CHECK(s13.x == 18);
    CHECK(s13.y == 5);
    CHECK(s13.norm == -1);

    PellSolution s19 = fundamental_solution(19);
    CHECK(s19.x == 170);
    CHECK(s19.y == 39);
    CHECK(s19.norm == 1);

    PellSolution s29 = fundamental_solution(29);
    CHECK(s29.x == 70);
    CHECK(s29.y == 13);
    CHECK(s29.norm == -1);

    PellSolution s61 = fundamental_solution(61);
    CHECK(s61.x == 29718);
    CHECK(s61.y == 3805);
    CHECK(s61.norm == -1);

    PellSolution big = fundamental_solution(10017223);
    CHECK(big.x == 10017224);
    CHECK(big.y == 3165);
    CHECK(big.norm == 1);
}

TEST_CASE("fundamental_solution rejects squares") {
    CHECK_THROWS_AS(fundamental_solution(16), PerfectSquare);
    CHECK_THROWS_AS(fundamental_solution(1), DomainTooSmall);
}

TEST_CASE("solutions satisfy their own equation for all non-square d up to 500") {
    for (uint64_t d = 2; d <= 500; ++d) {
        if (isqrt_u64(d) * isqrt_u64(d) == d) continue;
        PellSolution s = fundamental_solution(d);
        REQUIRE(s.x * s.x - d * s.y * s.y == s.norm);
        REQUIRE(s.y > 0);
    }
}

TEST_CASE("fundamental_solution matches the increment-y oracle where it can run") {
    // every d <= 100 has minimal y within this cap
    for (uint64_t d = 2; d <= 100; ++d) {
        if (isqrt_u64(d) * isqrt_u64(d) == d) continue;
        auto got = fundamental_solution(d);
        auto want = oracle::brute_minimal_pell(d, 300000);
        REQUIRE(want.has_value());
        CHECK(got.x == want->x);
        CHECK(got.y == want->y);
        CHECK(got.norm == want->norm);
    }
}

TEST_CASE("fundamental_solution against chakravala for all non-square d up to 500") {
    // chakravala yields the minimal +1 solution; when the period is odd the
    // library returns the norm -1 unit whose square must be that solution
    for (uint64_t d = 2; d <= 500; ++d) {
        if (isqrt_u64(d) * isqrt_u64(d) == d) continue;
        PellSolution s = fundamental_solution(d);
        oracle::PellPoint plus = oracle::chakravala_plus_one(d);
        if (s.norm == 1) {
            REQUIRE(s.x == plus.x);
            REQUIRE(s.y == plus.y);
        } else {
            REQUIRE(s.x * s.x + d * s.y * s.y == plus.x);
            REQUIRE(2 * s.x * s.y == plus.y);
        }
    }
}

TEST_CASE("chakravala reproduces the classical d=61 answer") {
    oracle::PellPoint p = oracle::chakravala_plus_one(61);
    CHECK(p.x == 1766319049);
    CHECK(p.y == 226153980);
}

TEST_CASE("decompose_unit on known cases") {
    UnitDecomposition d3 = decompose_unit(3, fundamental_solution(3));
    CHECK(d3.a == 1);
    CHECK(d3.b == 1);
    CHECK(d3.epsilon == -2);

    UnitDecomposition d7 = decompose_unit(7, fundamental_solution(7));
    CHECK(d7.a == 3);
    CHECK(d7.b == 1);
    CHECK(d7.epsilon == 2);

    UnitDecomposition d19 = decompose_unit(19, fundamental_solution(19));
    CHECK(d19.a == 13);
    CHECK(d19.b == 3);
    CHECK(d19.epsilon == -2);
}

TEST_CASE("decompose_unit preconditions") {
    CHECK_THROWS_AS(decompose_unit(13, fundamental_solution(13)), NotCongruent3Mod4);
    CHECK_THROWS_AS(decompose_unit(5, fundamental_solution(5)), NotCongruent3Mod4);
    // mismatched solution
    CHECK_THROWS_AS(decompose_unit(7, fundamental_solution(19)), InternalError);
}

TEST_CASE("unit decomposition invariants for primes p = 3 mod 4 up to 1e4") {
    for (uint64_t p : sieve_segment(3, 10000, ResidueFilter::mod4_eq_3)) {
        PellSolution sol = fundamental_solution(p);
        REQUIRE(sol.norm == 1);
        UnitDecomposition dec = decompose_unit(p, sol);
        REQUIRE(dec.epsilon == (p % 8 == 3 ? -2 : 2));
        REQUIRE(dec.a * dec.b == sol.y);
        REQUIRE(mpz_odd_p(sol.y.get_mpz_t()));
        REQUIRE(dec.a * dec.a - p * dec.b * dec.b == dec.epsilon);
    }
}

TEST_CASE("verify_half_identities on examples and a sweep") {
    CHECK(verify_half_identities(3));
    CHECK(verify_half_identities(7));
    CHECK(verify_half_identities(19));
    CHECK_THROWS_AS(verify_half_identities(13), NotCongruent3Mod4);
    for (uint64_t p : sieve_segment(3, 2000, ResidueFilter::mod4_eq_3))
        if (!verify_half_identities(p)) FAIL("half identities failed at p = " << p);
}

TEST_CASE("central_term_law on examples and a sweep") {
    CHECK(central_term_law(3));
    CHECK(central_term_law(7));
    CHECK(central_term_law(19));
    for (uint64_t p : sieve_segment(3, 2000, ResidueFilter::mod4_eq_3))
        if (!central_term_law(p)) FAIL("central term law failed at p = " << p);
}

TEST_CASE("aac_y_mod_p spot values") {
    CHECK(aac_y_mod_p(5) == 1);
    CHECK(aac_y_mod_p(13) == 5);
    CHECK(aac_y_mod_p(29) == 13);
    CHECK_THROWS_AS(aac_y_mod_p(7), NotCongruent1Mod4);
}

TEST_CASE("aac_y_mod_p equals the exact y reduced, primes to 2000") {
    for (uint64_t p : sieve_segment(5, 2000, ResidueFilter::mod4_eq_1)) {
        PellSolution sol = fundamental_solution(p);
        REQUIRE(sol.norm == -1);
        REQUIRE(aac_y_mod_p(p) == mpz_fdiv_ui(sol.y.get_mpz_t(), p));
    }
}

TEST_CASE("h2 <= 2n for primes up to 1e5 with l >= 3") {
    for (uint64_t p : sieve_segment(2, 100000)) {
        if (p == 2) continue;
        SurdState s = surd_init(p);
        if (detect_half_period(p).l < 3) continue;
        SurdState s1 = surd_step(s);
        SurdState s2 = surd_step(s1);
        uint64_t h2 = 1 + s1.a * s2.a;  // h2 = 1 + a1 a2
        if (h2 > 2 * s.root) FAIL("h2 > 2n at p = " << p);
    }
}
