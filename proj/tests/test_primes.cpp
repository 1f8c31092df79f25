#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <vector>

#include "mordell/primes.hpp"

using namespace mordell;

TEST_CASE("is_prime_u64 on small numbers") {
    std::vector<uint64_t> primes{2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 97, 101};
    for (uint64_t p : primes) CHECK(is_prime_u64(p));
    std::vector<uint64_t> composites{0, 1, 4, 6, 9, 15, 21, 25, 27, 49, 91, 121, 561, 1105};
    for (uint64_t c : composites) CHECK_FALSE(is_prime_u64(c));
}

TEST_CASE("is_prime_u64 is not fooled by strong pseudoprimes") {
    // strong pseudoprimes to several small bases
    CHECK_FALSE(is_prime_u64(2047));                 // spsp(2)
    CHECK_FALSE(is_prime_u64(1373653));              // spsp(2,3)
    CHECK_FALSE(is_prime_u64(25326001));             // spsp(2,3,5)
    CHECK_FALSE(is_prime_u64(3215031751ull));        // spsp(2,3,5,7)
    CHECK_FALSE(is_prime_u64(3825123056546413051ull));  // spsp(2..23)
}

TEST_CASE("is_prime_u64 on large primes") {
    CHECK(is_prime_u64((uint64_t{1} << 61) - 1));  // Mersenne
    CHECK(is_prime_u64(18446744073709551557ull));  // largest 64-bit prime
    CHECK_FALSE(is_prime_u64(18446744073709551615ull));
    for (uint64_t p : {10017223, 20948927, 21003887, 21022223}) CHECK(is_prime_u64(p));
}

TEST_CASE("sieve_segment with residue filters") {
    CHECK(sieve_segment(3, 30, ResidueFilter::mod4_eq_3) ==
          std::vector<uint64_t>{3, 7, 11, 19, 23});
    CHECK(sieve_segment(3, 30, ResidueFilter::mod4_eq_1) ==
          std::vector<uint64_t>{5, 13, 17, 29});
    CHECK(sieve_segment(2, 30) ==
          std::vector<uint64_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK(sieve_segment(10017220, 10017230) ==
          std::vector<uint64_t>{10017223, 10017229});
    CHECK(sieve_segment(10017220, 10017230, ResidueFilter::mod4_eq_3) ==
          std::vector<uint64_t>{10017223});
}

TEST_CASE("sieve_segment edge ranges") {
    CHECK(sieve_segment(0, 3) == std::vector<uint64_t>{2});
    CHECK(sieve_segment(0, 2).empty());
    CHECK(sieve_segment(14, 16).empty());
    CHECK(sieve_segment(7, 8) == std::vector<uint64_t>{7});
    CHECK(sieve_segment(10, 10).empty());
    CHECK(sieve_segment(20, 10).empty());
}

TEST_CASE("sieve_segment range guards") {
    CHECK_THROWS_AS(sieve_segment(0, (uint64_t{1} << 62) + 1), RangeTooLarge);
    CHECK_THROWS_AS(sieve_segment(0, (uint64_t{1} << 28) + 100), RangeTooLarge);
}

TEST_CASE("sieve_segment agrees with is_prime_u64 on a high window") {
    auto got = sieve_segment(1000000, 1010000);
    std::vector<uint64_t> expect;
    for (uint64_t v = 1000000; v < 1010000; ++v)
        if (is_prime_u64(v)) expect.push_back(v);
    CHECK(got == expect);
}

TEST_CASE("stitched segments equal a single-shot sieve up to 1e7") {
    const uint64_t limit = 10000000;
    auto whole = sieve_segment(2, limit);
    std::vector<uint64_t> stitched;
    for (uint64_t lo = 2; lo < limit;) {
        uint64_t hi = std::min(lo + 997771, limit);  // deliberately odd-sized segments
        auto part = sieve_segment(lo, hi);
        stitched.insert(stitched.end(), part.begin(), part.end());
        lo = hi;
    }
    CHECK(whole.size() == 664579);  // pi(1e7)
    CHECK(stitched == whole);
}
