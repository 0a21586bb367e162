#include <doctest.h>

#include <random>

#include "congruent/errors.hpp"
#include "congruent/residue.hpp"

using namespace congruent;

namespace {

// Nearest-quotient remainder in Z[i], used by the independent symbol oracle.
mpz_class round_div(const mpz_class& a, const mpz_class& n) {
    mpz_class twice = 2 * a + n;
    mpz_class q;
    mpz_fdiv_q(q.get_mpz_t(), twice.get_mpz_t(), mpz_class(2 * n).get_mpz_t());
    return q;
}

GaussInt reduce(const GaussInt& a, const GaussInt& m) {
    const mpz_class n = norm(m);
    const GaussInt num = a * m.conj();
    const GaussInt q(round_div(num.re, n), round_div(num.im, n));
    return a - q * m;
}

// alpha^((N-1)/4) by square-and-multiply with Gaussian remainders, matched against {0, 1, i, -1, -i}.
QuarticValue oracle_quartic(const GaussInt& alpha, const GaussInt& lambda) {
    mpz_class e = (norm(lambda) - 1) / 4;
    GaussInt acc(1), base = reduce(alpha, lambda);
    while (e > 0) {
        if (mpz_odd_p(e.get_mpz_t())) acc = reduce(acc * base, lambda);
        base = reduce(base * base, lambda);
        e /= 2;
    }
    if (divides(lambda, acc)) return QuarticValue::zero();
    for (int t = 0; t < 4; ++t) {
        if (divides(lambda, acc - unit_power(t))) return QuarticValue::unit(t);
    }
    FAIL("no fourth root of unity matched");
    return QuarticValue::zero();
}

std::vector<PrimaryPrime> small_primary_primes(u64 bound) {
    std::vector<PrimaryPrime> out;
    for (u64 p = 3; p * p <= bound || p <= bound; p += 2) {
        if (!is_prime(p)) continue;
        if (p % 4 == 3) {
            if (p * p <= bound) out.push_back(PrimaryPrime::make(GaussInt(-static_cast<long>(p))));
        } else if (p <= bound) {
            const PrimaryPrime l = prime_in_P_above(p);
            out.push_back(l);
            out.push_back(PrimaryPrime::make(l.value().conj()));
        }
    }
    return out;
}

}  // namespace

TEST_CASE("quartic symbol examples") {
    CHECK(quartic_symbol(GaussInt(2), GaussInt(3, 2)) == QuarticValue::unit(3));
    CHECK(quartic_symbol(GaussInt(2), GaussInt(-1, 2)) == QuarticValue::unit(-1));
    CHECK(quartic_symbol(GaussInt(1), GaussInt(7, 2)) == QuarticValue::one());
    CHECK(quartic_symbol(GaussInt(3, 2), GaussInt(3, 2)).is_zero());
    CHECK(quartic_symbol_composite(GaussInt(2), GaussInt(5)) == QuarticValue::one());
    CHECK(quartic_symbol_composite(GaussInt(5, 3), GaussInt(1)) == QuarticValue::one());
    CHECK(quartic_symbol_of_two(GaussInt(-1, 2)).to_string() == "-i");
    CHECK(quartic_symbol_of_two(GaussInt(1)) == QuarticValue::one());
    CHECK(quartic_symbol_of_two(GaussInt(5)) == QuarticValue::one());
    CHECK_THROWS_AS(quartic_symbol_of_two(GaussInt(1, 2)), MathError);
    CHECK_THROWS_AS(quartic_symbol(GaussInt(2), GaussInt(1, 1)), MathError);
    CHECK_THROWS_AS(quartic_symbol(GaussInt(2), GaussInt(5)), MathError);
}

TEST_CASE("quartic symbol matches the Gaussian-remainder oracle") {
    const auto primes = small_primary_primes(3000);
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<long> coord(-10000, 10000);
    for (const auto& l : primes) {
        for (int t = 0; t < 12; ++t) {
            GaussInt a(coord(rng), coord(rng));
            CHECK(quartic_symbol(a, l) == oracle_quartic(a, l.value()));
            CHECK(legendre_symbol_zi(a, l.value()) == quartic_symbol(a, l).squared());
        }
    }
}

TEST_CASE("legendre symbol over Z[i]") {
    CHECK(legendre_symbol_zi(GaussInt(0, 1), GaussInt(-1, 2)) == -1);
    CHECK(legendre_symbol_zi(GaussInt(1), GaussInt(7, 2)) == 1);
    CHECK(legendre_symbol_zi(GaussInt(2), GaussInt(3, 2)) == -1);
}

TEST_CASE("rational symbols") {
    CHECK(additive_two(5) == 1);
    CHECK(additive_two(3) == 1);
    CHECK(additive_two(1) == 0);
    CHECK(additive_two(7) == 0);
    CHECK(additive_two(-3) == 1);
    CHECK(additive(13, 5) == 1);
    CHECK(additive(1, 21) == 0);
    CHECK(additive(2, 17) == 0);
    CHECK_THROWS_AS(additive(5, 15), MathError);
    CHECK(quartic_rational(10, 13) == -1);
    CHECK(quartic_rational(1, 29) == 1);
    CHECK(quartic_rational(2, 17) == -1);
    CHECK_THROWS_AS(quartic_rational(2, 13), MathError);
    CHECK(quartic_rational_composite(26, 5) == 1);
    CHECK(quartic_rational_composite(7, 1) == 1);
    CHECK(quartic_rational_composite(10, 13) == -1);
}

TEST_CASE("rational quartic symbol is well defined over both primes above p") {
    for (u64 p = 5; p < 3000; p += 4) {
        if (!is_prime(p)) continue;
        const PrimaryPrime l = prime_in_P_above(p);
        const GaussInt lb = l.value().conj();
        for (i64 q = -40; q <= 40; ++q) {
            if (jacobi(q, p) != 1) continue;
            const int r = quartic_rational(q, p);
            CHECK(quartic_symbol(GaussInt(q), l).as_sign() == r);
            CHECK(quartic_symbol(GaussInt(q), lb).as_sign() == r);
        }
    }
}

TEST_CASE("multiplicativity of composite symbols") {
    std::mt19937_64 rng(17);
    const auto primes = small_primary_primes(500);
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    for (int t = 0; t < 300; ++t) {
        const GaussInt a = primes[pick(rng)].value() * primes[pick(rng)].value();
        const GaussInt b = primes[pick(rng)].value() * primes[pick(rng)].value();
        const GaussInt alpha(static_cast<long>(rng() % 2000) - 1000, static_cast<long>(rng() % 2000) - 1000);
        CHECK(quartic_symbol_composite(alpha, a * b) ==
              quartic_symbol_composite(alpha, a) * quartic_symbol_composite(alpha, b));
        CHECK(legendre_symbol_zi(alpha, a * b) == legendre_symbol_zi(alpha, a) * legendre_symbol_zi(alpha, b));
    }
}

TEST_CASE("supplement for 2 and quartic reciprocity on random primes") {
    std::mt19937_64 rng(23);
    const auto primes = small_primary_primes(10000);
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    for (int t = 0; t < 2000; ++t) {
        GaussInt theta(1);
        const int factors = 1 + static_cast<int>(rng() % 4);
        for (int j = 0; j < factors; ++j) theta *= primes[pick(rng)].value();
        CHECK(quartic_symbol_composite(GaussInt(2), theta) == quartic_symbol_of_two(theta));
    }
    for (int t = 0; t < 2000; ++t) {
        const PrimaryPrime& a = primes[pick(rng)];
        const PrimaryPrime& b = primes[pick(rng)];
        if (a == b || a.value() == b.value().conj()) continue;
        const mpz_class ea = (a.norm() - 1) / 4, eb = (b.norm() - 1) / 4;
        const QuarticValue sign = QuarticValue::unit(mpz_odd_p(mpz_class(ea * eb).get_mpz_t()) ? 2 : 0);
        CHECK(quartic_symbol(a.value(), b) == quartic_symbol(b.value(), a) * sign);
        if (a.value().conj() == a.value() || b.value().conj() == b.value()) continue;
        CHECK(quartic_symbol(a.value(), b.value().conj()) * quartic_symbol(a.value().conj(), b.value()) ==
              QuarticValue::one());
    }
}
