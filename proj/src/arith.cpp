#include "congruent/arith.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "congruent/errors.hpp"

namespace congruent {

u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

u64 invmod(u64 a, u64 m) {
    i64 t = 0, new_t = 1;
    i64 r = static_cast<i64>(m), new_r = static_cast<i64>(a % m);
    while (new_r != 0) {
        i64 q = r / new_r;
        t = std::exchange(new_t, t - q * new_t);
        r = std::exchange(new_r, r - q * new_r);
    }
    if (r != 1) raise(Errc::NotCoprime, "no inverse");
    return reduce_mod(t, m);
}

u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && static_cast<u128>(r) * r > n) --r;
    while (static_cast<u128>(r + 1) * (r + 1) <= n) ++r;
    return r;
}

bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
        u64 x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

namespace {

u64 pollard_rho(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        auto f = [&](u64 v) { return (mulmod(v, v, n) + c) % n; };
        u64 x = 2, y = 2, d = 1;
        u64 q = 1;
        // Brent-style batching of the gcd.
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            q = mulmod(q, x > y ? x - y : y - x, n);
            if (q == 0) break;
            d = std::gcd(q, n);
        }
        if (d != 1 && d != n) return d;
        x = 2;
        y = 2;
        d = 1;
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = std::gcd(x > y ? x - y : y - x, n);
        }
        if (d != n) return d;
    }
}

void factor_into(u64 n, std::map<u64, unsigned>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    u64 d = pollard_rho(n);
    factor_into(d, out);
    factor_into(n / d, out);
}

mpz_class pollard_rho(const mpz_class& n) {
    for (unsigned long c = 1;; ++c) {
        mpz_class x = 2, y = 2, d = 1;
        auto f = [&](const mpz_class& v) { return mpz_class((v * v + c) % n); };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            mpz_class diff = abs(x - y);
            mpz_gcd(d.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
        }
        if (d != n) return d;
    }
}

void factor_into(const mpz_class& n, std::map<mpz_class, unsigned>& out) {
    if (n == 1) return;
    if (n.fits_ulong_p()) {
        std::map<u64, unsigned> small;
        factor_into(static_cast<u64>(n.get_ui()), small);
        for (auto [p, e] : small) out[mpz_class(static_cast<unsigned long>(p))] += e;
        return;
    }
    if (is_prime(n)) {
        ++out[n];
        return;
    }
    mpz_class d = pollard_rho(n);
    factor_into(d, out);
    factor_into(mpz_class(n / d), out);
}

}  // namespace

std::vector<std::pair<u64, unsigned>> factor(u64 n) {
    if (n == 0) raise(Errc::BadInput, "factor(0)");
    std::map<u64, unsigned> out;
    for (u64 p = 2; p * p <= n && p < 1000; p += (p == 2 ? 1 : 2)) {
        while (n % p == 0) {
            ++out[p];
            n /= p;
        }
    }
    factor_into(n, out);
    return {out.begin(), out.end()};
}

bool is_prime(const mpz_class& n) { return mpz_probab_prime_p(n.get_mpz_t(), 40) > 0; }

std::vector<std::pair<mpz_class, unsigned>> factor(const mpz_class& n_in) {
    if (n_in <= 0) raise(Errc::BadInput, "factor of non-positive integer");
    mpz_class n = n_in;
    std::map<mpz_class, unsigned> out;
    for (unsigned long p = 2; p < 1000000; p += (p == 2 ? 1 : 2)) {
        if (n == 1) break;
        if (mpz_class(p) * p > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
            ++out[mpz_class(p)];
            n /= p;
        }
    }
    factor_into(n, out);
    return {out.begin(), out.end()};
}

u64 sqrt_minus_one(u64 p) {
    if (p % 4 != 1) raise(Errc::BadInput, "sqrt(-1) needs p = 1 mod 4");
    for (u64 c = 2; c < p; ++c) {
        // c is a non-residue exactly when c^((p-1)/2) = -1, and then c^((p-1)/4) squares to -1.
        if (powmod(c, (p - 1) / 2, p) == p - 1) return powmod(c, (p - 1) / 4, p);
    }
    raise(Errc::NotPrime, "no quadratic non-residue found");
}

std::pair<u64, u64> two_squares(u64 p) {
    if (p == 2) return {1, 1};
    u64 r = sqrt_minus_one(p);
    // Euclid on (p, r) stops at the first remainder below sqrt(p) (Cornacchia).
    u64 a = p, b = r;
    u64 limit = isqrt(p);
    while (b > limit) a = std::exchange(b, a % b);
    u64 x = b;
    u64 y2 = p - x * x;
    u64 y = isqrt(y2);
    if (y * y != y2) raise(Errc::NotPrime, "Cornacchia failed; not a prime 1 mod 4");
    if (x % 2 == 0) std::swap(x, y);
    return {x, y};
}

std::pair<mpz_class, mpz_class> two_squares(const mpz_class& p) {
    if (p.fits_ulong_p()) {
        auto [a, b] = two_squares(static_cast<u64>(p.get_ui()));
        return {mpz_class(static_cast<unsigned long>(a)), mpz_class(static_cast<unsigned long>(b))};
    }
    mpz_class e = (p - 1) / 2, q = (p - 1) / 4, r;
    for (unsigned long c = 2;; ++c) {
        mpz_class t, base(c);
        mpz_powm(t.get_mpz_t(), base.get_mpz_t(), e.get_mpz_t(), p.get_mpz_t());
        if (t == p - 1) {
            mpz_powm(r.get_mpz_t(), base.get_mpz_t(), q.get_mpz_t(), p.get_mpz_t());
            break;
        }
    }
    mpz_class a = p, b = r, limit = sqrt(p);
    while (b > limit) {
        mpz_class t = a % b;
        a = b;
        b = t;
    }
    mpz_class x = b, y2 = p - x * x, y = sqrt(y2);
    if (y * y != y2) raise(Errc::NotPrime, "Cornacchia failed");
    if (mpz_even_p(x.get_mpz_t())) std::swap(x, y);
    return {x, y};
}

int jacobi(i64 a_in, u64 n) {
    if (n == 0 || n % 2 == 0) raise(Errc::BadInput, "jacobi needs odd positive modulus");
    u64 a = reduce_mod(a_in, n);
    int t = 1;
    while (a != 0) {
        while (a % 2 == 0) {
            a /= 2;
            u64 r = n % 8;
            if (r == 3 || r == 5) t = -t;
        }
        std::swap(a, n);
        if (a % 4 == 3 && n % 4 == 3) t = -t;
        a %= n;
    }
    return n == 1 ? t : 0;
}

}  // namespace congruent
