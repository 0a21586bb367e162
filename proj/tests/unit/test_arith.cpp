#include <doctest.h>

#include <numeric>
#include <random>

#include "congruent/arith.hpp"
#include "congruent/errors.hpp"
#include "congruent/primes.hpp"

using namespace congruent;

namespace {

bool trial_prime(u64 n) {
    if (n < 2) return false;
    for (u64 d = 2; d * d <= n; ++d) {
        if (n % d == 0) return false;
    }
    return true;
}

// Euler's criterion, valid for odd prime p.
int euler_legendre(i64 a, u64 p) {
    const u64 r = powmod(reduce_mod(a, p), (p - 1) / 2, p);
    return r == 0 ? 0 : (r == 1 ? 1 : -1);
}

}  // namespace

TEST_CASE("is_prime agrees with trial division") {
    for (u64 n = 0; n < 20000; ++n) CHECK(is_prime(n) == trial_prime(n));
    CHECK(is_prime(u64{18446744073709551557ull}));
    CHECK_FALSE(is_prime(u64{3215031751}));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("factor reconstructs n") {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 300; ++t) {
        const u64 n = rng() >> (t % 40) | 1;
        u64 prod = 1;
        for (auto [p, e] : factor(n)) {
            CHECK(is_prime(p));
            for (unsigned i = 0; i < e; ++i) prod *= p;
        }
        CHECK(prod == n);
    }
    mpz_class big = mpz_class("2305843009213693951") * 2147483647 * 1000000007 * 1000000007;
    mpz_class prod = 1;
    for (auto& [p, e] : factor(big)) {
        CHECK(is_prime(p));
        for (unsigned i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == big);
}

TEST_CASE("jacobi examples and Euler criterion") {
    CHECK(jacobi(3, 65) == -1);
    CHECK(jacobi(1, 99) == 1);
    CHECK(jacobi(13, 5) == -1);
    CHECK(jacobi(-1, 13) == 1);
    CHECK(jacobi(10, 15) == 0);
    for (u64 p = 3; p < 400; p += 2) {
        if (!trial_prime(p)) continue;
        for (i64 a = -50; a < 50; ++a) CHECK(jacobi(a, p) == euler_legendre(a, p));
    }
    CHECK_THROWS_AS(jacobi(3, 10), MathError);
}

TEST_CASE("two_squares and sqrt of -1") {
    for (u64 p = 5; p < 5000; p += 4) {
        if (!trial_prime(p)) continue;
        const u64 r = sqrt_minus_one(p);
        CHECK(mulmod(r, r, p) == p - 1);
        auto [a, b] = two_squares(p);
        CHECK(a * a + b * b == p);
        CHECK(a % 2 == 1);
        CHECK(b % 2 == 0);
    }
}

TEST_CASE("prime table counts") {
    PrimeTable t(100000);
    CHECK(t.count_upto(10) == 4);
    CHECK(t.count_upto(100000) == 9592);
    CHECK(t.count_upto(1) == 0);
    const auto small = sieve_primes(30);
    CHECK(small == std::vector<std::uint32_t>{2, 3, 5, 7, 11, 13, 17, 19, 23, 29});
    CHECK_THROWS_AS(t.count_upto(100001), MathError);
    CHECK(sieve_primes(10000000).size() == 664579);
}
