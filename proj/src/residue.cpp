#include "congruent/residue.hpp"

#include "congruent/errors.hpp"

namespace congruent {

int QuarticValue::as_sign() const {
    if (is_zero() || exp_ % 2 != 0) raise(Errc::InternalInconsistency, "quartic value " + to_string() + " is not +-1");
    return exp_ == 0 ? 1 : -1;
}

std::string QuarticValue::to_string() const {
    if (is_zero()) return "0";
    static const char* names[] = {"1", "i", "-1", "-i"};
    return names[exp_];
}

GaussInt QuarticValue::to_gauss() const { return is_zero() ? GaussInt(0) : unit_power(exp_); }

namespace {

void require_odd_prime(const GaussInt& lambda) {
    const mpz_class n = norm(lambda);
    if (n == 0 || mpz_even_p(n.get_mpz_t())) raise(Errc::EvenNorm, lambda.to_string() + " has even norm");
    if (!is_gaussian_prime(lambda)) raise(Errc::NotPrime, lambda.to_string() + " is not a Gaussian prime");
}

mpz_class powm(const mpz_class& base, const mpz_class& exp, const mpz_class& mod) {
    mpz_class out;
    mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exp.get_mpz_t(), mod.get_mpz_t());
    return out;
}

mpz_class mod(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

struct ZiModQ {
    mpz_class re, im;
};

// Square-and-multiply in Z[i]/(q) for a rational prime q.
ZiModQ pow_mod_q(ZiModQ base, mpz_class exp, const mpz_class& q) {
    ZiModQ acc{1, 0};
    while (exp > 0) {
        if (mpz_odd_p(exp.get_mpz_t())) {
            acc = {mod(acc.re * base.re - acc.im * base.im, q), mod(acc.re * base.im + acc.im * base.re, q)};
        }
        base = {mod(base.re * base.re - base.im * base.im, q), mod(2 * base.re * base.im, q)};
        exp >>= 1;
    }
    return acc;
}

// Residue of alpha^e mod lambda, returned as the symbol it represents. The
// result must be 0 or a power of i; anything else means lambda was not prime.
QuarticValue power_residue(const GaussInt& alpha, const GaussInt& lambda, unsigned divisor) {
    const mpz_class n = norm(lambda);
    const mpz_class e = (n - 1) / divisor;
    if (lambda.re != 0 && lambda.im != 0) {
        // Split: Z[i]/lambda = F_p with i -> r, where a + b r = 0.
        const mpz_class& p = n;
        mpz_class binv;
        mpz_invert(binv.get_mpz_t(), mpz_class(mod(lambda.im, p)).get_mpz_t(), p.get_mpz_t());
        const mpz_class r = mod(-lambda.re * binv, p);
        const mpz_class image = mod(alpha.re + alpha.im * r, p);
        if (image == 0) return QuarticValue::zero();
        const mpz_class t = powm(image, e, p);
        if (t == 1) return QuarticValue::unit(0);
        if (t == r) return QuarticValue::unit(1);
        if (t == p - 1) return QuarticValue::unit(2);
        if (t == p - r) return QuarticValue::unit(3);
        raise(Errc::InternalInconsistency, "residue power outside the fourth roots of unity");
    }
    const mpz_class q = abs(lambda.re == 0 ? lambda.im : lambda.re);
    ZiModQ base{mod(alpha.re, q), mod(alpha.im, q)};
    if (base.re == 0 && base.im == 0) return QuarticValue::zero();
    const ZiModQ t = pow_mod_q(base, e, q);
    if (t.im == 0 && t.re == 1) return QuarticValue::unit(0);
    if (t.re == 0 && t.im == 1) return QuarticValue::unit(1);
    if (t.im == 0 && t.re == q - 1) return QuarticValue::unit(2);
    if (t.re == 0 && t.im == q - 1) return QuarticValue::unit(3);
    raise(Errc::InternalInconsistency, "residue power outside the fourth roots of unity");
}

}  // namespace

QuarticValue quartic_symbol(const GaussInt& alpha, const GaussInt& lambda) {
    require_odd_prime(lambda);
    return power_residue(alpha, lambda, 4);
}

QuarticValue quartic_symbol_composite(const GaussInt& alpha, const GaussInt& theta) {
    QuarticValue acc = QuarticValue::one();
    for (const auto& f : factor_primary(theta).factors) {
        acc *= quartic_symbol(alpha, f.prime).pow(f.multiplicity);
    }
    return acc;
}

QuarticValue quartic_symbol_of_two(const GaussInt& theta) {
    if (!is_primary(theta)) raise(Errc::NotPrimary, theta.to_string() + " is not primary");
    const mpz_class b = theta.im / 2;
    return QuarticValue::unit(-static_cast<int>(mpz_fdiv_ui(b.get_mpz_t(), 4)));
}

int legendre_symbol_zi_prime(const GaussInt& alpha, const GaussInt& lambda) {
    require_odd_prime(lambda);
    const QuarticValue v = power_residue(alpha, lambda, 2);
    if (v.is_zero()) return 0;
    if (v.exponent() == 0) return 1;
    if (v.exponent() == 2) return -1;
    raise(Errc::InternalInconsistency, "quadratic residue power is +-i");
}

int legendre_symbol_zi(const GaussInt& alpha, const GaussInt& theta) {
    int acc = 1;
    for (const auto& f : factor_primary(theta).factors) {
        const int s = legendre_symbol_zi_prime(alpha, f.prime.value());
        if (s == 0) return 0;
        if (s < 0 && f.multiplicity % 2 == 1) acc = -acc;
    }
    return acc;
}

int additive_two(i64 a) {
    if (a % 2 == 0) raise(Errc::BadInput, "[2/a] needs odd a");
    const u64 r = reduce_mod(a, 8);
    return (r == 3 || r == 5) ? 1 : 0;
}

int additive(i64 a, u64 d) {
    const int j = jacobi(a, d);
    if (j == 0) raise(Errc::NotCoprime, std::to_string(a) + " and " + std::to_string(d) + " share a factor");
    return j < 0 ? 1 : 0;
}

int quartic_rational(i64 q, u64 p) {
    if (p % 4 != 1 || !is_prime(p)) raise(Errc::NotPrime, std::to_string(p) + " is not a prime = 1 mod 4");
    if (jacobi(q, p) != 1) {
        raise(Errc::NotQuarticApplicable, "(" + std::to_string(q) + "/" + std::to_string(p) + ") != 1");
    }
    const u64 t = powmod(reduce_mod(q, p), (p - 1) / 4, p);
    if (t == 1) return 1;
    if (t == p - 1) return -1;
    raise(Errc::InternalInconsistency, "rational quartic symbol is not +-1");
}

int quartic_rational_composite(i64 q, u64 d) {
    if (d == 0) raise(Errc::BadInput, "d must be positive");
    int acc = 1;
    for (auto [p, e] : factor(d)) {
        if (p % 4 != 1) raise(Errc::NotQuarticApplicable, std::to_string(p) + " is not 1 mod 4");
        if (e % 2 == 1) acc *= quartic_rational(q, p);
        else if (jacobi(q, p) != 1) raise(Errc::NotQuarticApplicable, "(q/p) != 1");
    }
    return acc;
}

}  // namespace congruent
