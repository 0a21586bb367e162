#pragma once

// Property suites shared by the command line tool and the acceptance gate.
// Each suite compares two independent computations and collects failures.

#include <cstdint>
#include <string>
#include <vector>

#include "congruent/genus.hpp"

namespace congruent {

struct SuiteResult {
    explicit SuiteResult(std::string n) : name(std::move(n)) {}

    std::string name;
    std::uint64_t checked = 0;
    std::vector<std::string> failures;
    /// Informational lines (not failures).
    std::vector<std::string> notes;

    bool ok() const { return failures.empty() && checked > 0; }
    void fail(std::string what);
};

/// Supplement for 2 on random primary composites, quartic reciprocity and the
/// conjugation identity on random pairs of primary primes.
SuiteResult verify_lemmas(std::uint64_t cases, std::uint64_t seed);

/// Z versus Z[i] bucket membership on Q_k(x) for k <= kmax, and the identity
/// (2d'/d)_4 (2d/d')_4 = (2/eta)_4 (theta2/theta1) on every split where the
/// rational symbols are defined.
SuiteResult verify_bijection(u64 x, unsigned kmax);

/// Class group ranks against the Redei and h8 criteria on Q_k(x), k <= kmax.
SuiteResult verify_oracle(u64 x, unsigned kmax, unsigned jobs);

/// Closed-form matrix counts against brute force for k <= kmax (<= 5), and
/// sigma_B for k <= min(kmax, 4).
SuiteResult verify_counts(unsigned kmax);

/// Every (alpha, B) target compatible with epsilon, for residue-class counting.
std::vector<AdmissibleTarget> admissible_targets(const std::vector<PrimaryPrime>& epsilon);

/// Residue-class counts equal phi(16 epsilon) / 2^(k+4) for every target of each epsilon.
SuiteResult verify_classes(const std::vector<std::vector<PrimaryPrime>>& epsilons);

}  // namespace congruent
