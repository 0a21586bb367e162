#pragma once

// Exact arithmetic in the Gaussian integers Z[i].

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace congruent {

struct GaussInt {
    mpz_class re;
    mpz_class im;

    GaussInt() = default;
    GaussInt(long r) : re(r), im(0) {}  // NOLINT: rational integers embed implicitly
    GaussInt(mpz_class r, mpz_class i) : re(std::move(r)), im(std::move(i)) {}
    GaussInt(long r, long i) : re(r), im(i) {}

    bool is_zero() const { return re == 0 && im == 0; }
    GaussInt conj() const { return {re, -im}; }

    friend bool operator==(const GaussInt& a, const GaussInt& b) { return a.re == b.re && a.im == b.im; }
    friend GaussInt operator+(const GaussInt& a, const GaussInt& b) { return {a.re + b.re, a.im + b.im}; }
    friend GaussInt operator-(const GaussInt& a, const GaussInt& b) { return {a.re - b.re, a.im - b.im}; }
    friend GaussInt operator-(const GaussInt& a) { return {-a.re, -a.im}; }
    friend GaussInt operator*(const GaussInt& a, const GaussInt& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    GaussInt& operator*=(const GaussInt& b) { return *this = *this * b; }

    std::string to_string() const;
    friend std::ostream& operator<<(std::ostream& os, const GaussInt& g) { return os << g.to_string(); }
};

/// Parses "3+2i", "-1-2i", "5", "i", "-i", "2i".
GaussInt parse_gauss(std::string_view text);

/// i^t for t taken mod 4.
GaussInt unit_power(int t);

mpz_class norm(const GaussInt& g);

/// True when a divides b in Z[i]; a = 0 divides only 0.
bool divides(const GaussInt& a, const GaussInt& b);

/// b / a, which must be exact.
GaussInt divexact(const GaussInt& b, const GaussInt& a);

GaussInt pow(GaussInt base, unsigned long exp);

bool is_primary(const GaussInt& g);

/// True for Gaussian primes: prime norm, or an associate of a rational prime = 3 mod 4.
bool is_gaussian_prime(const GaussInt& g);

struct Associate {
    int unit_exp;  // in [0, 4)
    GaussInt value;
};

/// The unique primary associate value = i^unit_exp * g. Requires odd norm.
Associate primary_associate(const GaussInt& g);

/// A primary Gaussian prime (odd norm). in_P() marks members of the set of
/// primary primes with positive imaginary part above split rational primes.
class PrimaryPrime {
  public:
    /// Validates primality and primary normalization.
    static PrimaryPrime make(const GaussInt& g);
    /// As make(), additionally requiring a positive imaginary part.
    static PrimaryPrime make_in_P(const GaussInt& g);

    const GaussInt& value() const noexcept { return value_; }
    bool in_P() const noexcept { return in_P_; }
    const mpz_class& norm() const noexcept { return norm_; }

    friend bool operator==(const PrimaryPrime& a, const PrimaryPrime& b) { return a.value_ == b.value_; }

  private:
    PrimaryPrime(GaussInt v, mpz_class n, bool in_P) : value_(std::move(v)), norm_(std::move(n)), in_P_(in_P) {}

    GaussInt value_;
    mpz_class norm_;
    bool in_P_ = false;
};

struct PrimaryFactor {
    PrimaryPrime prime;
    unsigned multiplicity;
};

struct PrimaryFactorization {
    int unit_exp = 0;
    std::vector<PrimaryFactor> factors;

    /// i^unit_exp times the product of the factor powers.
    GaussInt product() const;
};

/// Factors g (odd norm, nonzero) into i^t times primary primes, ordered by
/// ascending norm; the two conjugate primes above a split p are listed with
/// the positive-imaginary-part one first.
PrimaryFactorization factor_primary(const GaussInt& g);

/// The primary prime above p (p = 1 mod 4) with positive imaginary part.
PrimaryPrime prime_in_P_above(std::uint64_t p);

/// One member of P per rational prime p = 1 mod 4 with p <= x, by ascending norm.
std::vector<PrimaryPrime> primes_in_P_up_to(std::uint64_t x);

}  // namespace congruent
