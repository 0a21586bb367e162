#pragma once

// Residue symbols over Z and Z[i]: quartic, quadratic (Hecke's general
// Legendre symbol), Jacobi, the rational quartic symbol (q/p)_4 and the
// additive symbols [a/d], [2/a].

#include <cstdint>
#include <string>

#include "congruent/arith.hpp"
#include "congruent/gaussian.hpp"

namespace congruent {

/// An element of {0, 1, i, -1, -i}, stored as the exponent of i.
class QuarticValue {
  public:
    static constexpr QuarticValue zero() { return QuarticValue(-1); }
    static constexpr QuarticValue unit(int t) { return QuarticValue(((t % 4) + 4) % 4); }
    static constexpr QuarticValue one() { return unit(0); }

    constexpr bool is_zero() const { return exp_ < 0; }
    /// Exponent t with value i^t; only meaningful when !is_zero().
    constexpr int exponent() const { return exp_; }

    constexpr QuarticValue operator*(QuarticValue o) const {
        if (is_zero() || o.is_zero()) return zero();
        return unit(exp_ + o.exp_);
    }
    QuarticValue& operator*=(QuarticValue o) { return *this = *this * o; }
    constexpr QuarticValue pow(unsigned e) const {
        if (is_zero()) return e == 0 ? one() : zero();
        return unit(static_cast<int>((static_cast<unsigned>(exp_) * e) % 4));
    }
    constexpr QuarticValue inverse() const { return is_zero() ? zero() : unit(-exp_); }

    /// The square as an integer in {-1, 0, 1}.
    constexpr int squared() const { return is_zero() ? 0 : (exp_ % 2 == 0 ? 1 : -1); }

    /// Integer value for the real cases 1 and -1; throws for 0 and +-i.
    int as_sign() const;

    friend constexpr bool operator==(QuarticValue a, QuarticValue b) { return a.exp_ == b.exp_; }

    std::string to_string() const;
    GaussInt to_gauss() const;

  private:
    constexpr explicit QuarticValue(int e) : exp_(static_cast<std::int8_t>(e)) {}
    std::int8_t exp_;
};

/// (alpha/lambda)_4 for a Gaussian prime lambda of odd norm, by definition:
/// alpha^((N lambda - 1)/4) mod lambda.
QuarticValue quartic_symbol(const GaussInt& alpha, const GaussInt& lambda);
inline QuarticValue quartic_symbol(const GaussInt& alpha, const PrimaryPrime& lambda) {
    return quartic_symbol(alpha, lambda.value());
}

/// Multiplicative extension over the primary factorization of theta.
QuarticValue quartic_symbol_composite(const GaussInt& alpha, const GaussInt& theta);

/// (2/theta)_4 = i^(-b) for primary theta = a + 2bi.
QuarticValue quartic_symbol_of_two(const GaussInt& theta);

/// Quadratic symbol alpha^((N lambda - 1)/2) mod lambda for a prime lambda.
int legendre_symbol_zi_prime(const GaussInt& alpha, const GaussInt& lambda);

/// Multiplicative extension over the primary factorization of theta.
int legendre_symbol_zi(const GaussInt& alpha, const GaussInt& theta);

/// [2/a]: 1 iff a = +-5 mod 8.
int additive_two(i64 a);

/// [a/d]: 1 iff the Jacobi symbol (a/d) is -1.
int additive(i64 a, u64 d);

/// (q/p)_4 for a prime p = 1 mod 4 with (q/p) = 1, computed in F_p.
int quartic_rational(i64 q, u64 p);

/// prod over p | d of (q/p)_4^(v_p(d)); every prime factor of d must be 1 mod 4.
int quartic_rational_composite(i64 q, u64 d);

}  // namespace congruent
