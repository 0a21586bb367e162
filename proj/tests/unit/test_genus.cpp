#include <doctest.h>

#include <set>

#include "congruent/classgroup.hpp"
#include "congruent/errors.hpp"
#include "congruent/genus.hpp"

using namespace congruent;

namespace {

std::vector<FactoredSquarefree> q_members(u64 x, unsigned kmax) {
    std::vector<FactoredSquarefree> out;
    for (u64 n = 17; n <= x; n += 8) {
        bool ok = true;
        for (auto [p, e] : factor(n)) ok = ok && e == 1 && p % 4 == 1;
        if (!ok) continue;
        auto f = FactoredSquarefree::of(n);
        if (f.k() <= kmax) out.push_back(f);
    }
    return out;
}

}  // namespace

TEST_CASE("Redei data examples") {
    const auto r65 = redei(FactoredSquarefree::of(65));
    CHECK(r65.A.to_string() == "11/11");
    CHECK(r65.b.to_string() == "11");
    CHECK(r65.rank_R == 1);
    CHECK(r65.h4 == 1);
    const auto r17 = redei(FactoredSquarefree::of(17));
    CHECK(r17.A.to_string() == "0");
    CHECK(r17.b.to_string() == "0");
    CHECK(r17.h4 == 1);
    CHECK(redei(FactoredSquarefree::of(1105)).h4 == group_2part(-4420).r4);
    CHECK_THROWS_AS(redei(FactoredSquarefree::of(85)), MathError);
    CHECK_THROWS_AS(redei(FactoredSquarefree::of(3 * 11)), MathError);
    CHECK_THROWS_AS(FactoredSquarefree::of(45), MathError);
}

TEST_CASE("h8 examples") {
    const auto n65 = FactoredSquarefree::of(65);
    const auto v = h8_criterion(n65, redei(n65));
    CHECK(v.case_tag == H8Case::RankA_kMinus1);
    CHECK(v.d == 5);
    CHECK(v.d_prime == 13);
    CHECK(v.symbol_product == -1);
    CHECK(v.target == 1);
    CHECK(v.h8 == 0);
    const auto n17 = FactoredSquarefree::of(17);
    const auto w = h8_criterion(n17, redei(n17));
    CHECK(w.d == 17);
    CHECK(w.d_prime == 1);
    CHECK(w.h8 == 0);
    CHECK(h8_criterion(FactoredSquarefree::of(41), redei(FactoredSquarefree::of(41))).h8 == 1);
    bool seen = false;
    for (const auto& n : q_members(5000, 3)) {
        const auto r = redei(n);
        if (r.h4 == 1) continue;
        seen = true;
        CHECK_THROWS_AS(h8_criterion(n, r), MathError);
        CHECK_FALSE(classify_Pk(n, Convention::D1).member);
    }
    CHECK(seen);
}

TEST_CASE("classification conventions") {
    const auto n65 = FactoredSquarefree::of(65);
    const auto d5 = classify_Pk(n65, Convention::D5);
    const auto d1 = classify_Pk(n65, Convention::D1);
    CHECK(d5.member);
    CHECK_FALSE(d1.member);
    CHECK(d5.h4 == 1);
    CHECK(d5.h8->h8 == 0);
    for (const auto& n : q_members(20000, 4)) {
        const auto a = classify_Pk(n, Convention::D5);
        const auto b = classify_Pk(n, Convention::D1);
        if (a.h4 == 1) {
            CHECK(a.member != b.member);
        } else {
            CHECK_FALSE(a.member);
            CHECK_FALSE(b.member);
        }
    }
}

TEST_CASE("kernel choice does not change the quarter parity") {
    for (const auto& n : q_members(100000, 4)) {
        const auto r = redei(n);
        if (r.h4 != 1) continue;
        const unsigned k = n.k();
        const MatF2 R = r.A.to_mat().augment(r.b);
        VecF2 x0 = VecF2::ones(k + 1);
        x0.set(k, false);
        std::set<int> parities;
        for (std::uint64_t bits = 1; bits < (1ull << (k + 1)); ++bits) {
            const VecF2 X(k + 1, bits);
            if (X == x0 || !R.apply(X).is_zero()) continue;
            u64 d = 1;
            for (unsigned j = 0; j < k; ++j) {
                if (X.get(j)) d *= n.primes[j];
            }
            parities.insert(quarter_parity(d));
        }
        CHECK(parities.size() == 1);
    }
}

TEST_CASE("genus ranks agree with the class group") {
    for (const auto& n : q_members(30000, 3)) {
        const auto g = group_2part(-4 * static_cast<std::int64_t>(n.n));
        const auto r = redei(n);
        CHECK(g.r2 == n.k());
        CHECK(g.r4 == r.h4);
        if (r.h4 == 1) CHECK(static_cast<unsigned>(h8_criterion(n, r).h8) == g.r8);
    }
}

TEST_CASE("bucket predicates") {
    const auto A = SymMatF2::parse("11/11");
    const auto n65 = FactoredSquarefree::of(65);
    CHECK_FALSE(in_Ck_alpha_B(n65, std::vector<int>{5, 13}, A));
    CHECK_FALSE(in_Ckprime_gaussian(gaussian_lift(n65), std::vector<int>{5, 13}, A));
    CHECK(in_Ck_alpha_B(FactoredSquarefree::of(73), std::vector<int>{9}, SymMatF2(1)));
    CHECK_FALSE(in_Ck_alpha_B(FactoredSquarefree::of(89), std::vector<int>{1}, SymMatF2(1)));
    CHECK_THROWS_AS(in_Ck_alpha_B(n65, std::vector<int>{5, 1}, A), MathError);
    CHECK_THROWS_AS(in_Ck_alpha_B(n65, std::vector<int>{3, 11}, A), MathError);
    const std::vector<PrimaryPrime> five{prime_in_P_above(5)};
    for (const auto& alpha : admissible_alphas(1)) CHECK_FALSE(in_Ckprime_gaussian(five, alpha, SymMatF2(1)));
}

TEST_CASE("bucket membership is the same over Z and Z[i]") {
    for (const auto& n : q_members(100000, 3)) {
        const auto eta = gaussian_lift(n);
        for (const auto& alpha : admissible_alphas(n.k())) {
            for (const auto& B : enumerate_B(n.k())) {
                if (!B.to_mat().try_solve(two_vector(alpha))) continue;
                CHECK(in_Ck_alpha_B(n, alpha, B) == in_Ckprime_gaussian(eta, alpha, B));
            }
        }
    }
}

TEST_CASE("admissible residue classes") {
    const auto count_for = [](std::vector<PrimaryPrime> eps) {
        const unsigned k = static_cast<unsigned>(eps.size()) + 1;
        std::vector<u64> p;
        for (const auto& l : eps) p.push_back(l.norm().get_ui());
        std::set<u64> counts;
        for (const auto& alpha : admissible_alphas(k)) {
            bool fits = true;
            for (unsigned j = 0; j + 1 < k; ++j) fits = fits && static_cast<int>(p[j] % 16) == alpha[j];
            if (!fits) continue;
            for (const auto& B : enumerate_B(k)) {
                bool pattern = true;
                for (unsigned j = 0; j + 1 < k; ++j) {
                    for (unsigned l = j + 1; l + 1 < k; ++l) {
                        pattern = pattern && jacobi(static_cast<i64>(p[j]), p[l]) == (B.get(j, l) ? -1 : 1);
                    }
                }
                if (!pattern || !B.to_mat().try_solve(two_vector(alpha))) continue;
                counts.insert(count_admissible_classes({eps, alpha, B}));
            }
        }
        return counts;
    };
    CHECK(count_for({}) == std::set<u64>{4});
    CHECK(count_for({prime_in_P_above(5)}) == std::set<u64>{8});
    CHECK(count_for({prime_in_P_above(13)}) == std::set<u64>{24});
    CHECK(count_for({prime_in_P_above(17)}) == std::set<u64>{32});
    CHECK(count_for({prime_in_P_above(5), prime_in_P_above(13)}) == std::set<u64>{48});
    CHECK(phi_16eps(std::vector<PrimaryPrime>{prime_in_P_above(13)}) == 128 * 12);
}
