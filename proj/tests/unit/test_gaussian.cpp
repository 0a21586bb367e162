#include <doctest.h>

#include <random>

#include "congruent/errors.hpp"
#include "congruent/gaussian.hpp"

using namespace congruent;

TEST_CASE("parse and print") {
    for (const char* s : {"3+2i", "-1-2i", "5", "i", "-i", "2i", "0", "7-i"}) {
        CHECK(parse_gauss(s).to_string() == s);
    }
    CHECK(parse_gauss("3+2i") == GaussInt(3, 2));
    CHECK_THROWS_AS(parse_gauss("3+"), MathError);
}

TEST_CASE("primary normalization") {
    CHECK(is_primary(GaussInt(1)));
    CHECK(is_primary(GaussInt(-1, 2)));
    CHECK(is_primary(GaussInt(3, 2)));
    CHECK(is_primary(GaussInt(-3)));
    CHECK_FALSE(is_primary(GaussInt(1, 2)));
    CHECK(primary_associate(GaussInt(2, 1)).value == GaussInt(-1, 2));
    CHECK_THROWS_AS(primary_associate(GaussInt(1, 1)), MathError);
}

TEST_CASE("exactly one primary associate among the four") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> coord(-500, 500);
    for (int t = 0; t < 2000; ++t) {
        GaussInt g(coord(rng), coord(rng));
        if (mpz_even_p(norm(g).get_mpz_t())) continue;
        int count = 0;
        for (int e = 0; e < 4; ++e) count += is_primary(unit_power(e) * g);
        CHECK(count == 1);
        const Associate a = primary_associate(g);
        CHECK(a.value == unit_power(a.unit_exp) * g);
    }
}

TEST_CASE("PrimaryPrime validation") {
    CHECK(PrimaryPrime::make(GaussInt(-1, 2)).in_P());
    CHECK_FALSE(PrimaryPrime::make(GaussInt(-1, -2)).in_P());
    CHECK_FALSE(PrimaryPrime::make(GaussInt(-3)).in_P());
    CHECK_THROWS_AS(PrimaryPrime::make(GaussInt(1, 1)), MathError);
    CHECK_THROWS_AS(PrimaryPrime::make(GaussInt(5)), MathError);
    CHECK_THROWS_AS(PrimaryPrime::make(GaussInt(1, 2)), MathError);
    try {
        PrimaryPrime::make(GaussInt(1, 2));
    } catch (const MathError& e) {
        CHECK(e.code() == Errc::NotPrimary);
    }
}

TEST_CASE("factor_primary examples") {
    auto f5 = factor_primary(GaussInt(5));
    REQUIRE(f5.factors.size() == 2);
    CHECK(f5.factors[0].prime.value() == GaussInt(-1, 2));
    CHECK(f5.factors[1].prime.value() == GaussInt(-1, -2));
    CHECK(f5.product() == GaussInt(5));
    auto f13 = factor_primary(GaussInt(13));
    CHECK(f13.factors[0].prime.value() == GaussInt(3, 2));
    CHECK(f13.factors[1].prime.value() == GaussInt(3, -2));
    CHECK(factor_primary(GaussInt(1)).factors.empty());
}

TEST_CASE("factor_primary round trip") {
    std::mt19937_64 rng(5);
    std::uniform_int_distribution<long> coord(-3000, 3000);
    for (int t = 0; t < 1000; ++t) {
        GaussInt g(coord(rng), coord(rng));
        if (mpz_even_p(norm(g).get_mpz_t())) continue;
        const auto f = factor_primary(g);
        CHECK(f.product() == g);
        for (const auto& pf : f.factors) CHECK(is_primary(pf.prime.value()));
    }
}

TEST_CASE("the P representative lies above p") {
    for (const auto& l : primes_in_P_up_to(2000)) {
        CHECK(l.in_P());
        CHECK(prime_in_P_above(l.norm().get_ui()) == l);
    }
    CHECK(prime_in_P_above(5).value() == GaussInt(-1, 2));
    CHECK(prime_in_P_above(13).value() == GaussInt(3, 2));
    CHECK(prime_in_P_above(17).value() == GaussInt(1, 4));
}
