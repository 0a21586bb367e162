// Acceptance gate: one PASS/FAIL line per criterion, tolerances fixed below.
// Exit status is nonzero iff some criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>

#include "congruent/census.hpp"
#include "congruent/classgroup.hpp"
#include "congruent/genus.hpp"
#include "congruent/verify.hpp"

using namespace congruent;

namespace {

constexpr double kCountsSeconds = 10.0;
constexpr u64 kOracleX = 200000;
constexpr std::uint64_t kLemmaCases = 10000;
constexpr std::uint64_t kLemmaSeed = 20151;
constexpr u64 kBijectionX = 100000;
constexpr u64 kCensusX = 10000000;
constexpr double kBucketTol = 0.01;
constexpr double kCensusSeconds = 60.0;
constexpr double kP1Tol = 0.05;
constexpr double kP2Tol = 0.07;
constexpr double kQ1Tol = 0.01;
constexpr u64 kDeterminismX = 1000000;

struct Gate {
    int failed = 0;

    void line(int id, bool ok, const std::string& detail) {
        std::printf("criterion %2d: %s  %s\n", id, ok ? "PASS" : "FAIL", detail.c_str());
        std::fflush(stdout);
        if (!ok) ++failed;
    }

    // Exceptions count as failures, with the message as detail.
    void run(int id, const std::function<std::pair<bool, std::string>()>& body) {
        try {
            const auto [ok, detail] = body();
            line(id, ok, detail);
        } catch (const std::exception& e) {
            line(id, false, std::string("exception: ") + e.what());
        }
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string suite_detail(const SuiteResult& s, double secs) {
    std::ostringstream os;
    os << s.name << " checked=" << s.checked << " failures=" << s.failures.size() << " time=" << secs << "s";
    if (!s.failures.empty()) os << " first: " << s.failures.front();
    return os.str();
}

std::pair<bool, std::string> run_suite(const std::function<SuiteResult()>& f, double limit = 0) {
    const auto t0 = std::chrono::steady_clock::now();
    const SuiteResult s = f();
    const double secs = seconds_since(t0);
    return {s.ok() && (limit <= 0 || secs < limit), suite_detail(s, secs)};
}

double ratio(const CheckpointReport& cp, const std::string& key) { return cp.ratios.at(key).value_or(NAN); }

}  // namespace

int main() {
    Gate gate;

    gate.run(1, [] {
        auto [ok, detail] = run_suite([] { return verify_counts(5); }, kCountsSeconds);
        const bool bprime3 = count_Bprime(3) == mpz_class(enumerate_Bprime(3).size());
        detail += " count_Bprime(3): formula " + count_Bprime(3).get_str() + " brute " +
                  std::to_string(enumerate_Bprime(3).size());
        return std::pair{ok && bprime3, detail};
    });

    gate.run(2, [] { return run_suite([] { return verify_oracle(kOracleX, 3, 1); }); });

    gate.run(3, [] { return run_suite([] { return verify_lemmas(kLemmaCases, kLemmaSeed); }); });

    gate.run(4, [] {
        const auto s = verify_classes(
            {{}, {PrimaryPrime::make_in_P(GaussInt(-1, 2))}, {PrimaryPrime::make_in_P(GaussInt(3, 2))}});
        std::string detail = suite_detail(s, 0);
        for (const auto& n : s.notes) detail += "; " + n;
        return std::pair{s.ok(), detail};
    });

    gate.run(5, [] { return run_suite([] { return verify_bijection(kBijectionX, 3); }); });

    // Criteria 6 to 8 share the k = 1 census.
    CensusConfig c1;
    c1.x = kCensusX;
    c1.k = 1;
    c1.checkpoints = {10000, 100000, 1000000};
    std::optional<CensusReport> r1;
    double census_secs = 0;
    std::string census_error;
    try {
        const auto t0 = std::chrono::steady_clock::now();
        r1 = run_census(c1);
        census_secs = seconds_since(t0);
    } catch (const std::exception& e) {
        census_error = e.what();
    }

    gate.run(6, [&] {
        if (!r1) return std::pair{false, "census failed: " + census_error};
        const auto& f = r1->final();
        bool ok = census_secs < kCensusSeconds;
        std::ostringstream os;
        for (const char* key : {"alpha=(1) B=0", "alpha=(9) B=0"}) {
            const auto it = f.buckets.find(key);
            const double v = it == f.buckets.end() ? 0.0
                                                   : static_cast<double>(it->second) / static_cast<double>(f.counts.at("C_k"));
            ok = ok && std::abs(v - 1.0 / 16) < kBucketTol;
            os << key << " ratio=" << v << " ";
        }
        os << "target=1/16 tol=" << kBucketTol << " time=" << census_secs << "s";
        return std::pair{ok, os.str()};
    });

    gate.run(7, [&] {
        if (!r1) return std::pair{false, "census failed: " + census_error};
        std::ostringstream os;
        os << "P_1/Q_1 (d1) series:";
        for (const auto& cp : r1->checkpoints) os << " x=" << cp.x << ":" << ratio(cp, "P_k_D1/Q_k");
        const double p1 = ratio(r1->final(), "P_k_D1/Q_k");
        bool ok = std::abs(p1 - 0.5) < kP1Tol;
        os << " target=1/2 tol=" << kP1Tol;
        CensusConfig c2 = c1;
        c2.k = 2;
        const CensusReport r2 = run_census(c2);
        const double p2 = ratio(r2.final(), "P_k_D1/Q_k");
        ok = ok && std::abs(p2 - 0.375) < kP2Tol;
        os << "; P_2/Q_2 (d1) at x=" << c2.x << ": " << p2 << " target=3/8 tol=" << kP2Tol;
        return std::pair{ok, os.str()};
    });

    gate.run(8, [&] {
        if (!r1) return std::pair{false, "census failed: " + census_error};
        const double q = ratio(r1->final(), "Q_k/C_k");
        std::ostringstream os;
        os << "Q_1/C_1=" << q << " target=1/4 tol=" << kQ1Tol;
        return std::pair{std::abs(q - 0.25) < kQ1Tol, os.str()};
    });

    gate.run(9, [] {
        bool ok = true;
        std::ostringstream os;
        for (unsigned k : {1u, 2u, 3u}) {
            std::string json1, csv1;
            for (unsigned parts : {1u, 2u, 8u}) {
                CensusConfig c;
                c.x = kDeterminismX;
                c.k = k;
                c.checkpoints = {10000, 100000};
                c.partitions = parts;
                c.jobs = parts == 1 ? 1 : 2;
                const CensusReport r = run_census(c);
                const std::string j = to_json(r).dump(2), v = to_csv(r);
                if (parts == 1) {
                    json1 = j;
                    csv1 = v;
                } else {
                    ok = ok && j == json1 && v == csv1;
                }
            }
            os << "k=" << k << " json " << json1.size() << " bytes; ";
        }
        os << "partitions {1,2,8} at x=" << kDeterminismX << (ok ? " identical" : " DIFFER");
        return std::pair{ok, os.str()};
    });

    gate.run(10, [] {
        const auto n = FactoredSquarefree::of(65);
        const RedeiData r = redei(n);
        const H8Verdict h = h8_criterion(n, r);
        const ClassGroup2Part g = group_2part(-4 * 65);
        const bool d1 = classify_Pk(n, Convention::D1).member;
        const bool d5 = classify_Pk(n, Convention::D5).member;
        std::ostringstream os;
        os << "redei h4=" << r.h4 << " h8=" << h.h8 << "; oracle r4=" << g.r4 << " r8=" << g.r8
           << "; P_k d1=" << d1 << " d5=" << d5;
        const bool ok = r.h4 == 1 && h.h8 == 0 && g.r4 == 1 && g.r8 == 0 && d1 != d5;
        return std::pair{ok, os.str()};
    });

    std::printf("%s: %d criteria failed\n", gate.failed == 0 ? "ALL PASS" : "FAILURES", gate.failed);
    return gate.failed == 0 ? 0 : 1;
}
