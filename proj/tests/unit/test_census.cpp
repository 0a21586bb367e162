#include <doctest.h>

#include <cstdlib>

#include "congruent/census.hpp"
#include "congruent/errors.hpp"
#include "congruent/primes.hpp"

using namespace congruent;

namespace {

// Squarefree n <= x with exactly k prime factors, by factoring every n.
std::vector<u64> brute_members(u64 x, unsigned k, PrimeFilter f, std::optional<int> mod8) {
    std::vector<u64> out;
    for (u64 n = 2; n <= x; ++n) {
        const auto fac = factor(n);
        bool ok = fac.size() == k;
        for (auto [p, e] : fac) {
            ok = ok && e == 1;
            if (f == PrimeFilter::OneMod4) ok = ok && p % 4 == 1;
            if (f == PrimeFilter::OneMod8) ok = ok && p % 8 == 1;
        }
        if (mod8) ok = ok && static_cast<int>(n % 8) == *mod8;
        if (ok) out.push_back(n);
    }
    return out;
}

std::vector<u64> enumerated(const CensusConfig& c) {
    std::vector<u64> out;
    enumerate_squarefree_k(c, [&](const FactoredSquarefree& n) { out.push_back(n.n); });
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace

TEST_CASE("enumeration examples") {
    CensusConfig c;
    c.x = 30;
    c.k = 2;
    c.filter = PrimeFilter::AllPrimes;
    CHECK(enumerated(c) == std::vector<u64>{6, 10, 14, 15, 21, 22, 26});
    c.x = 100;
    c.filter = PrimeFilter::OneMod4;
    c.n_mod8 = 1;
    CHECK(enumerated(c) == std::vector<u64>{65});
    c.x = 10;
    c.k = 3;
    c.n_mod8.reset();
    CHECK(enumerated(c).empty());
}

TEST_CASE("enumeration matches factoring every n") {
    for (unsigned k = 1; k <= 4; ++k) {
        for (PrimeFilter f : {PrimeFilter::AllPrimes, PrimeFilter::OneMod4, PrimeFilter::OneMod8}) {
            for (std::optional<int> m : {std::optional<int>{}, std::optional<int>{1}, std::optional<int>{5}}) {
                CensusConfig c;
                c.x = 30000;
                c.k = k;
                c.filter = f;
                c.n_mod8 = m;
                CHECK(enumerated(c) == brute_members(c.x, k, f, m));
                // Partitions cover every n exactly once.
                std::vector<u64> joined;
                for (unsigned part = 0; part < 3; ++part) {
                    enumerate_squarefree_k(c, [&](const FactoredSquarefree& n) { joined.push_back(n.n); }, part, 3);
                }
                std::sort(joined.begin(), joined.end());
                CHECK(joined == enumerated(c));
            }
        }
        const auto primes = sieve_primes(30000);
        for (u64 x : {1ull, 2ull, 29ull, 1000ull, 30000ull}) {
            CHECK(count_Ck(primes, x, k) == brute_members(x, k, PrimeFilter::AllPrimes, std::nullopt).size());
        }
    }
}

TEST_CASE("theory values") {
    CHECK(theoretical_limit_Pk(1) == ExactRational(1, 2));
    CHECK(theoretical_limit_Pk(2) == ExactRational(3, 8));
    CHECK(theoretical_limit_Pk(3) == ExactRational(11, 32));
    CHECK(theoretical_density_Ck_alpha_B(1) == ExactRational(1, 16));
    CHECK(theoretical_density_Ck_alpha_B(2) == ExactRational(1, 256));
    CHECK(theoretical_density_Ck_alpha_B(3) == pow2(-13));
    CHECK(theoretical_bound_tilde(2) == ExactRational(1, 4));
    CHECK(theoretical_bound_tilde(3) == ExactRational(3, 8));
    // Independent summation over ordered pairs (j1, j2) with j1 + j2 = 4.
    const ExactRational k4 = pow2(0) * (u(1) * u(3) * ExactRational(4, 1) * pow2(-3) +
                                        u(2) * u(2) * ExactRational(6, 1) * pow2(-4) +
                                        u(3) * u(1) * ExactRational(4, 1) * pow2(-3));
    CHECK(theoretical_bound_tilde(4) == k4);
    CHECK(theoretical_bound_tilde(4) == ExactRational(19, 32));
    CHECK_THROWS_AS(theoretical_bound_tilde(1), MathError);
}

TEST_CASE("census report invariants") {
    for (unsigned k = 1; k <= 3; ++k) {
        CensusConfig c;
        c.x = 200000;
        c.k = k;
        c.filter = PrimeFilter::OneMod4;
        c.checkpoints = {1000, 10000, 50000};
        const CensusReport r = run_census(c);
        REQUIRE(r.checkpoints.size() == 4);
        for (std::size_t i = 0; i < r.checkpoints.size(); ++i) {
            const auto& cp = r.checkpoints[i];
            CHECK(cp.counts.at("P_k_D1") + cp.counts.at("P_k_D5") == cp.counts.at("h4_eq_1"));
            CHECK(cp.counts.at("P_k_D1") == cp.counts.at("buckets_total") + cp.counts.at("buckets_prime_total"));
            CHECK(cp.counts.at("Ptilde_construction") * 2 <= cp.counts.at("Ckk_pairs"));
            u64 sum = 0;
            for (const auto& [key, n] : cp.buckets) sum += n;
            CHECK(sum == cp.counts.at("buckets_total"));
            if (i > 0) {
                for (const auto& [key, n] : cp.counts) CHECK(n >= r.checkpoints[i - 1].counts.at(key));
            }
        }
        CHECK(r.final().counts.at("Q_k") ==
              brute_members(c.x, k, PrimeFilter::OneMod4, 1).size());
    }
}

TEST_CASE("reports are independent of the partition count") {
    CensusConfig c;
    c.x = 100000;
    c.k = 2;
    c.filter = PrimeFilter::AllPrimes;
    c.checkpoints = {1000, 10000};
    const std::string one = to_json(run_census(c)).dump();
    for (unsigned parts : {2u, 8u}) {
        c.partitions = parts;
        c.jobs = 2;
        CHECK(to_json(run_census(c)).dump() == one);
    }
}

TEST_CASE("JSON round trip and CSV shape") {
    CensusConfig c;
    c.x = 50000;
    c.k = 2;
    c.checkpoints = {5000};
    const CensusReport r = run_census(c);
    const auto j = to_json(r);
    const CensusReport back = report_from_json(nlohmann::ordered_json::parse(j.dump()));
    CHECK(back.checkpoints == r.checkpoints);
    CHECK(to_json(back).dump() == j.dump());
    CHECK(j["checkpoints"][1]["theory"]["P_k_limit"]["exact"] == "3/8");
    const std::string csv = to_csv(r);
    CHECK(csv.rfind("x,class,count,", 0) == 0);
    CHECK(csv.find("50000,P_k_D1,") != std::string::npos);
    CHECK_THROWS_AS(report_from_json(nlohmann::ordered_json::parse("{}")), MathError);
}

TEST_CASE("resource limit") {
    CensusConfig c;
    c.x = 1ull << 32;
    setenv("CENSUS_MEM_BUDGET_MB", "1", 1);
    CHECK_THROWS_AS(run_census(c), MathError);
    unsetenv("CENSUS_MEM_BUDGET_MB");
    c.x = 1;
    CHECK_THROWS_AS(run_census(c), MathError);
}

TEST_CASE("oracle sweep at small scale") {
    const OracleSweep s = oracle_sweep(10000, 2);
    CHECK(s.checked > 100);
    CHECK(s.mismatches.empty());
}
