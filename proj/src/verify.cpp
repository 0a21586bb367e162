#include "congruent/verify.hpp"

#include <random>
#include <set>

#include "congruent/census.hpp"
#include "congruent/errors.hpp"
#include "congruent/f2.hpp"

namespace congruent {

void SuiteResult::fail(std::string what) {
    // Keep the report readable when a suite breaks badly.
    if (failures.size() < 50) failures.push_back(std::move(what));
    else if (failures.size() == 50) failures.push_back("...");
}

namespace {

std::vector<PrimaryPrime> primary_primes_up_to_norm(u64 bound) {
    std::vector<PrimaryPrime> out;
    for (u64 p = 3; p <= bound; p += 2) {
        if (!is_prime(p)) continue;
        if (p % 4 == 1) {
            const PrimaryPrime l = prime_in_P_above(p);
            out.push_back(l);
            out.push_back(PrimaryPrime::make(l.value().conj()));
        } else if (p * p <= bound) {
            out.push_back(PrimaryPrime::make(GaussInt(-static_cast<long>(p))));
        }
    }
    return out;
}

std::vector<FactoredSquarefree> q_members(u64 x, unsigned k) {
    CensusConfig c;
    c.x = x;
    c.k = k;
    c.filter = PrimeFilter::OneMod4;
    c.n_mod8 = 1;
    std::vector<FactoredSquarefree> out;
    enumerate_squarefree_k(c, [&](const FactoredSquarefree& n) { out.push_back(n); });
    return out;
}

}  // namespace

SuiteResult verify_lemmas(std::uint64_t cases, std::uint64_t seed) {
    SuiteResult r("lemmas");
    std::mt19937_64 rng(seed);
    const auto primes = primary_primes_up_to_norm(10000);
    std::uniform_int_distribution<std::size_t> pick(0, primes.size() - 1);
    std::uniform_int_distribution<int> count(1, 4);

    std::uint64_t two = 0, recip = 0, conj = 0;
    for (std::uint64_t t = 0; t < cases; ++t) {
        GaussInt theta(1);
        for (int j = count(rng); j > 0; --j) theta *= primes[pick(rng)].value();
        const QuarticValue by_definition = quartic_symbol_composite(GaussInt(2), theta);
        const QuarticValue by_formula = quartic_symbol_of_two(theta);
        ++two;
        if (!(by_definition == by_formula)) {
            r.fail("(2/" + theta.to_string() + ")_4: definition " + by_definition.to_string() + ", i^-b " +
                   by_formula.to_string());
        }
    }
    for (std::uint64_t t = 0; t < cases;) {
        const PrimaryPrime& a = primes[pick(rng)];
        const PrimaryPrime& b = primes[pick(rng)];
        if (a == b) continue;
        ++t;
        const mpz_class e = ((a.norm() - 1) / 4) * ((b.norm() - 1) / 4);
        const QuarticValue sign = QuarticValue::unit(mpz_odd_p(e.get_mpz_t()) ? 2 : 0);
        const QuarticValue lhs = quartic_symbol(a.value(), b);
        const QuarticValue rhs = quartic_symbol(b.value(), a) * sign;
        ++recip;
        if (!(lhs == rhs)) {
            r.fail("reciprocity " + a.value().to_string() + ", " + b.value().to_string() + ": " + lhs.to_string() +
                   " vs " + rhs.to_string());
        }
        if (a.value() == b.value().conj()) continue;
        const QuarticValue c = quartic_symbol(a.value(), b.value().conj()) * quartic_symbol(a.value().conj(), b.value());
        ++conj;
        if (!(c == QuarticValue::one())) {
            r.fail("conjugation " + a.value().to_string() + ", " + b.value().to_string() + ": " + c.to_string());
        }
    }
    r.checked = two + recip + conj;
    r.notes.push_back("supplement for 2: " + std::to_string(two) + " composites; reciprocity: " +
                      std::to_string(recip) + " pairs; conjugation: " + std::to_string(conj) + " pairs");
    return r;
}

SuiteResult verify_bijection(u64 x, unsigned kmax) {
    SuiteResult r("bijection");
    std::uint64_t membership = 0, members = 0, identity = 0;
    for (unsigned k = 1; k <= kmax; ++k) {
        const auto alphas = admissible_alphas(k);
        const auto Bs = enumerate_B(k);
        for (const FactoredSquarefree& n : q_members(x, k)) {
            const auto eta = gaussian_lift(n);
            for (const auto& alpha : alphas) {
                for (const auto& B : Bs) {
                    if (!B.to_mat().try_solve(two_vector(alpha))) continue;
                    const bool over_z = in_Ck_alpha_B(n, alpha, B);
                    const bool over_zi = in_Ckprime_gaussian(eta, alpha, B);
                    ++membership;
                    members += over_z;
                    if (over_z != over_zi) r.fail("n=" + std::to_string(n.n) + " alpha/B mismatch, B=" + B.to_string());
                }
            }
            GaussInt eta_prod(1);
            for (const auto& l : eta) eta_prod *= l.value();
            const QuarticValue two_eta = quartic_symbol_composite(GaussInt(2), eta_prod);
            for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
                u64 d = 1;
                GaussInt theta1(1), theta2(1);
                for (unsigned j = 0; j < k; ++j) {
                    if (mask >> j & 1) {
                        d *= n.primes[j];
                        theta1 *= eta[j].value();
                    } else {
                        theta2 *= eta[j].value();
                    }
                }
                const u64 dp = n.n / d;
                bool defined = true;
                for (unsigned j = 0; j < k && defined; ++j) {
                    const u64 p = n.primes[j];
                    const i64 other = static_cast<i64>(2 * (mask >> j & 1 ? dp : d));
                    defined = jacobi(other, p) == 1;
                }
                if (!defined) continue;
                const int lhs = quartic_rational_composite(2 * static_cast<i64>(dp), d) *
                                quartic_rational_composite(2 * static_cast<i64>(d), dp);
                QuarticValue rhs = two_eta;
                if (legendre_symbol_zi(theta2, theta1) < 0) rhs *= QuarticValue::unit(2);
                ++identity;
                if (!(rhs == QuarticValue::unit(lhs < 0 ? 2 : 0))) {
                    r.fail("identity fails at n=" + std::to_string(n.n) + " d=" + std::to_string(d));
                }
            }
        }
    }
    r.checked = membership + identity;
    r.notes.push_back("bucket comparisons: " + std::to_string(membership) + " (" + std::to_string(members) +
                      " memberships); identity splits: " + std::to_string(identity));
    return r;
}

SuiteResult verify_oracle(u64 x, unsigned kmax, unsigned jobs) {
    SuiteResult r("oracle");
    const OracleSweep s = oracle_sweep(x, kmax, jobs);
    r.checked = s.checked;
    for (const auto& m : s.mismatches) {
        r.fail("n=" + std::to_string(m.n) + " (k,h4,h8)=(" + std::to_string(m.k) + "," + std::to_string(m.h4) + "," +
               std::to_string(m.h8) + ") (r2,r4,r8)=(" + std::to_string(m.r2) + "," + std::to_string(m.r4) + "," +
               std::to_string(m.r8) + ")");
    }
    r.notes.push_back(std::to_string(s.checked) + " discriminants -4n compared");
    return r;
}

SuiteResult verify_counts(unsigned kmax) {
    SuiteResult r("counts");
    if (kmax > 5) raise(Errc::TooLarge, "brute-force counts are limited to k <= 5");
    for (unsigned k = 1; k <= kmax; ++k) {
        for (unsigned rank = 0; rank <= k; ++rank) {
            ++r.checked;
            const mpz_class f = count_sym_rank(k, rank), b = brute_count_sym_rank(k, rank);
            if (f != b) {
                r.fail("count_sym_rank(" + std::to_string(k) + "," + std::to_string(rank) + ") formula " + f.get_str() +
                       " brute " + b.get_str());
            }
        }
        const mpz_class brute_b = enumerate_B(k).size();
        const ExactRational closed = u(k) * pow2(static_cast<long>(k * (k - 1) / 2));
        r.checked += 2;
        if (count_B(k) != brute_b) r.fail("count_B(" + std::to_string(k) + ") != brute force");
        if (!(closed == ExactRational(mpq_class(brute_b)))) r.fail("u_k 2^C(k,2) != brute count at k=" + std::to_string(k));
        if (k >= 2) {
            const mpz_class brute_bp = enumerate_Bprime(k).size();
            ++r.checked;
            if (count_Bprime(k) != brute_bp) {
                r.fail("count_Bprime(" + std::to_string(k) + ") formula " + count_Bprime(k).get_str() + " brute " +
                       brute_bp.get_str());
            }
            r.notes.push_back("k=" + std::to_string(k) + ": count_B=" + brute_b.get_str() + " count_Bprime=" +
                              brute_bp.get_str() + " (brute force)");
        }
        if (k >= 2 && k <= 4) {
            const mpz_class expect = mpz_class(1) << (2 * k - 2);
            for (const auto& B : enumerate_Bprime(k)) {
                ++r.checked;
                if (count_sigma_B(B) != expect) r.fail("sigma_B(" + B.to_string() + ") != 2^(2k-2)");
            }
        }
    }
    return r;
}

std::vector<AdmissibleTarget> admissible_targets(const std::vector<PrimaryPrime>& epsilon) {
    const unsigned k = static_cast<unsigned>(epsilon.size()) + 1;
    std::vector<u64> p;
    for (const auto& l : epsilon) p.push_back(l.norm().get_ui());
    std::vector<AdmissibleTarget> out;
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
            out.push_back({epsilon, alpha, B});
        }
    }
    return out;
}

SuiteResult verify_classes(const std::vector<std::vector<PrimaryPrime>>& epsilons) {
    SuiteResult r("classes");
    for (const auto& eps : epsilons) {
        const unsigned k = static_cast<unsigned>(eps.size()) + 1;
        const mpz_class expect = phi_16eps(eps) >> (k + 4);
        std::string label = eps.empty() ? "1" : "";
        for (const auto& l : eps) label += (label.empty() ? "" : "*") + ("(" + l.value().to_string() + ")");
        std::set<u64> seen;
        for (const auto& t : admissible_targets(eps)) {
            ++r.checked;
            const u64 got = count_admissible_classes(t);
            seen.insert(got);
            if (got != expect) {
                r.fail("epsilon=" + label + " alpha_k=" + std::to_string(t.alpha.back()) + " B=" + t.B.to_string() +
                       ": " + std::to_string(got) + " classes, expected " + expect.get_str());
            }
        }
        std::string values;
        for (u64 v : seen) values += (values.empty() ? "" : ",") + std::to_string(v);
        r.notes.push_back("epsilon=" + label + ": phi/2^(k+4)=" + expect.get_str() + ", counts {" + values + "}");
    }
    return r;
}

}  // namespace congruent
