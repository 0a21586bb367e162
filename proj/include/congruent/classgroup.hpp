#pragma once

// Class groups of imaginary quadratic orders via reduced positive definite
// binary quadratic forms, used as ground truth for the genus-theory ranks.

#include <cstdint>
#include <string>
#include <vector>

namespace congruent {

/// The form a x^2 + b x y + c y^2 of discriminant b^2 - 4ac < 0.
struct QuadForm {
    std::int64_t a = 1;
    std::int64_t b = 0;
    std::int64_t c = 1;

    std::int64_t disc() const noexcept { return b * b - 4 * a * c; }
    bool is_reduced() const noexcept;
    /// Ambiguous classes: b = 0, a = b or a = c (for reduced forms).
    bool is_ambiguous() const noexcept;
    std::string to_string() const;

    friend bool operator==(const QuadForm&, const QuadForm&) = default;
    friend auto operator<=>(const QuadForm&, const QuadForm&) = default;
};

/// Largest |D| accepted by the oracle.
inline constexpr std::int64_t kMaxOracleDisc = 4'000'000'000'000LL;

/// Raises BadDiscriminant unless D < 0 and D = 0, 1 mod 4.
void require_discriminant(std::int64_t D);

QuadForm principal(std::int64_t D);
QuadForm reduce(QuadForm f);
QuadForm inverse(const QuadForm& f);
/// Dirichlet composition followed by reduction; raises DiscMismatch.
QuadForm compose(const QuadForm& f, const QuadForm& g);
QuadForm power(QuadForm f, std::uint64_t e);

/// All reduced primitive forms of discriminant D, sorted.
std::vector<QuadForm> reduced_forms(std::int64_t D);

/// The 2-Sylow subgroup of Cl(D).
struct ClassGroup2Part {
    std::int64_t disc = 0;
    std::uint64_t h = 0;
    /// Elementary divisors of the 2-Sylow, descending.
    std::vector<std::uint64_t> divisors;
    unsigned r2 = 0;
    unsigned r4 = 0;
    unsigned r8 = 0;
    std::uint64_t ambiguous_forms = 0;
};

/// Raises InternalInconsistency if the two computations of r4, or the
/// ambiguous-form count 2^r2, disagree.
ClassGroup2Part group_2part(std::int64_t D);

}  // namespace congruent
