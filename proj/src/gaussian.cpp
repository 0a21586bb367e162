#include "congruent/gaussian.hpp"

#include <algorithm>
#include <cctype>

#include "congruent/arith.hpp"
#include "congruent/errors.hpp"
#include "congruent/primes.hpp"

namespace congruent {

namespace {

int mod4(const mpz_class& v) { return static_cast<int>(mpz_fdiv_ui(v.get_mpz_t(), 4)); }

}  // namespace

std::string GaussInt::to_string() const {
    if (im == 0) return re.get_str();
    std::string imag;
    if (im == 1) imag = "i";
    else if (im == -1) imag = "-i";
    else imag = im.get_str() + "i";
    if (re == 0) return imag;
    return re.get_str() + (im > 0 ? "+" : "") + imag;
}

GaussInt parse_gauss(std::string_view text) {
    std::string s;
    for (char c : text) {
        if (!std::isspace(static_cast<unsigned char>(c))) s.push_back(c);
    }
    if (s.empty()) raise(Errc::BadInput, "empty Gaussian integer");
    auto parse_int = [&](const std::string& part) {
        mpz_class v;
        if (part.empty() || part == "+") return mpz_class(1);
        if (part == "-") return mpz_class(-1);
        std::string digits = part[0] == '+' ? part.substr(1) : part;
        if (v.set_str(digits, 10) != 0) raise(Errc::BadInput, "bad integer '" + part + "'");
        return v;
    };
    if (s.back() != 'i') return {parse_int(s), mpz_class(0)};
    s.pop_back();
    // Split at the last sign that is not the leading character.
    std::size_t split = std::string::npos;
    for (std::size_t k = s.size(); k-- > 1;) {
        if (s[k] == '+' || s[k] == '-') {
            split = k;
            break;
        }
    }
    if (split == std::string::npos) return {mpz_class(0), parse_int(s)};
    return {parse_int(s.substr(0, split)), parse_int(s.substr(split))};
}

GaussInt unit_power(int t) {
    switch (((t % 4) + 4) % 4) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        case 2: return {-1, 0};
        default: return {0, -1};
    }
}

mpz_class norm(const GaussInt& g) { return g.re * g.re + g.im * g.im; }

bool divides(const GaussInt& a, const GaussInt& b) {
    if (a.is_zero()) return b.is_zero();
    const mpz_class n = norm(a);
    const GaussInt t = b * a.conj();
    return mpz_divisible_p(t.re.get_mpz_t(), n.get_mpz_t()) && mpz_divisible_p(t.im.get_mpz_t(), n.get_mpz_t());
}

GaussInt divexact(const GaussInt& b, const GaussInt& a) {
    if (!divides(a, b) || a.is_zero()) raise(Errc::BadInput, "inexact Gaussian division");
    const mpz_class n = norm(a);
    GaussInt t = b * a.conj();
    mpz_divexact(t.re.get_mpz_t(), t.re.get_mpz_t(), n.get_mpz_t());
    mpz_divexact(t.im.get_mpz_t(), t.im.get_mpz_t(), n.get_mpz_t());
    return t;
}

GaussInt pow(GaussInt base, unsigned long exp) {
    GaussInt result{1, 0};
    while (exp) {
        if (exp & 1) result *= base;
        base *= base;
        exp >>= 1;
    }
    return result;
}

bool is_primary(const GaussInt& g) {
    // (g - 1)/(2 + 2i) = (g - 1)(2 - 2i)/8 is integral iff x+y and y-x are 0 mod 4.
    const mpz_class x = g.re - 1;
    const mpz_class& y = g.im;
    return mod4(x + y) == 0 && mod4(y - x) == 0;
}

bool is_gaussian_prime(const GaussInt& g) {
    const mpz_class n = norm(g);
    if (n < 2) return false;
    if (is_prime(n)) return true;
    if (g.re != 0 && g.im != 0) return false;
    mpz_class q = abs(g.re == 0 ? g.im : g.re);
    return mod4(q) == 3 && is_prime(q);
}

Associate primary_associate(const GaussInt& g) {
    if (mpz_even_p(mpz_class(norm(g)).get_mpz_t())) raise(Errc::NotOdd, "norm of " + g.to_string() + " is even");
    for (int t = 0; t < 4; ++t) {
        GaussInt cand = unit_power(t) * g;
        if (is_primary(cand)) return {t, cand};
    }
    raise(Errc::InternalInconsistency, "no primary associate of " + g.to_string());
}

PrimaryPrime PrimaryPrime::make(const GaussInt& g) {
    if (!is_gaussian_prime(g)) raise(Errc::NotPrime, g.to_string() + " is not a Gaussian prime");
    mpz_class n = congruent::norm(g);
    if (mpz_even_p(n.get_mpz_t())) raise(Errc::EvenNorm, g.to_string() + " lies above 2");
    if (!is_primary(g)) raise(Errc::NotPrimary, g.to_string() + " is not primary");
    const bool split = g.re != 0 && g.im != 0;
    return PrimaryPrime(g, std::move(n), split && g.im > 0);
}

PrimaryPrime PrimaryPrime::make_in_P(const GaussInt& g) {
    PrimaryPrime p = make(g);
    if (!p.in_P()) raise(Errc::BadInput, g.to_string() + " is not in P (imaginary part must be positive)");
    return p;
}

GaussInt PrimaryFactorization::product() const {
    GaussInt acc = unit_power(unit_exp);
    for (const auto& f : factors) acc *= pow(f.prime.value(), f.multiplicity);
    return acc;
}

PrimaryFactorization factor_primary(const GaussInt& g) {
    if (g.is_zero()) raise(Errc::NotOdd, "zero has no factorization");
    const mpz_class n = norm(g);
    if (mpz_even_p(n.get_mpz_t())) raise(Errc::NotOdd, "norm of " + g.to_string() + " is even");

    PrimaryFactorization out;
    GaussInt rest = g;
    for (const auto& [p, e] : factor(n)) {
        if (mod4(p) == 3) {
            // Inert: p^2 divides the norm, p divides g exactly e/2 times; -p is primary.
            PrimaryPrime q = PrimaryPrime::make(GaussInt(mpz_class(-p), mpz_class(0)));
            for (unsigned m = 0; m < e / 2; ++m) rest = divexact(rest, q.value());
            out.factors.push_back({q, e / 2});
            continue;
        }
        auto [a, b] = two_squares(p);
        GaussInt pi = primary_associate(GaussInt(a, b)).value;
        if (pi.im < 0) pi = pi.conj();
        const GaussInt pibar = pi.conj();
        unsigned m1 = 0, m2 = 0;
        while (m1 + m2 < e && divides(pi, rest)) {
            rest = divexact(rest, pi);
            ++m1;
        }
        while (m1 + m2 < e && divides(pibar, rest)) {
            rest = divexact(rest, pibar);
            ++m2;
        }
        if (m1 + m2 != e) raise(Errc::InternalInconsistency, "split factorization lost multiplicity");
        if (m1) out.factors.push_back({PrimaryPrime::make(pi), m1});
        if (m2) out.factors.push_back({PrimaryPrime::make(pibar), m2});
    }
    // rest is now a unit i^s with g = i^s * prod.
    for (int t = 0; t < 4; ++t) {
        if (unit_power(t) == rest) out.unit_exp = t;
    }
    std::stable_sort(out.factors.begin(), out.factors.end(), [](const PrimaryFactor& x, const PrimaryFactor& y) {
        if (x.prime.norm() != y.prime.norm()) return x.prime.norm() < y.prime.norm();
        return x.prime.value().im > y.prime.value().im;
    });
    return out;
}

PrimaryPrime prime_in_P_above(std::uint64_t p) {
    if (p % 4 != 1 || !is_prime(p)) raise(Errc::NotPrime, std::to_string(p) + " is not a prime = 1 mod 4");
    auto [a, b] = two_squares(p);  // a odd, b even positive
    i64 re = static_cast<i64>(a);
    if ((a + b) % 4 != 1) re = -re;
    return PrimaryPrime::make_in_P(GaussInt(mpz_class(static_cast<long>(re)), mpz_class(static_cast<unsigned long>(b))));
}

std::vector<PrimaryPrime> primes_in_P_up_to(std::uint64_t x) {
    std::vector<PrimaryPrime> out;
    for (std::uint32_t p : sieve_primes(x)) {
        if (p % 4 == 1) out.push_back(prime_in_P_above(p));
    }
    return out;
}

}  // namespace congruent
