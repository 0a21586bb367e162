#pragma once

// Word-size and multiprecision rational-integer helpers shared by every module.

#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace congruent {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;

inline u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m);

/// Reduces a signed value into [0, m).
inline u64 reduce_mod(i64 a, u64 m) {
    i64 r = a % static_cast<i64>(m);
    return static_cast<u64>(r < 0 ? r + static_cast<i64>(m) : r);
}

u64 invmod(u64 a, u64 m);

u64 isqrt(u64 n);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);

/// Prime factorization as ascending (prime, exponent) pairs; factor(1) is empty.
std::vector<std::pair<u64, unsigned>> factor(u64 n);

/// Multiprecision factorization: trial division up to 1e6, then Pollard rho.
std::vector<std::pair<mpz_class, unsigned>> factor(const mpz_class& n);

bool is_prime(const mpz_class& n);

/// A square root of -1 modulo a prime p = 1 mod 4.
u64 sqrt_minus_one(u64 p);

/// (a, b) with a*a + b*b = p, a odd, b even and positive, for a prime p = 1 mod 4.
std::pair<u64, u64> two_squares(u64 p);

std::pair<mpz_class, mpz_class> two_squares(const mpz_class& p);

/// Jacobi symbol (a/n) for odd n > 0.
int jacobi(i64 a, u64 n);

}  // namespace congruent
