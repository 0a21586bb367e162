#include "congruent/classgroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "congruent/errors.hpp"

namespace congruent {

namespace {

using i128 = __int128;

std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
    const std::int64_t r = a % m;
    return r < 0 ? r + m : r;
}

/// (g, x, y) with x a + y b = g = gcd(a, b) >= 0.
struct Bezout {
    std::int64_t g, x, y;
};

Bezout ext_gcd(std::int64_t a, std::int64_t b) {
    std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
    while (r != 0) {
        const std::int64_t q = old_r / r;
        std::tie(old_r, r) = std::make_pair(r, old_r - q * r);
        std::tie(old_s, s) = std::make_pair(s, old_s - q * s);
        std::tie(old_t, t) = std::make_pair(t, old_t - q * t);
    }
    if (old_r < 0) return {-old_r, -old_s, -old_t};
    return {old_r, old_s, old_t};
}

std::int64_t c_from(std::int64_t a, std::int64_t b, std::int64_t D) {
    const i128 num = static_cast<i128>(b) * b - D;
    return static_cast<std::int64_t>(num / (4 * static_cast<i128>(a)));
}

}  // namespace

bool QuadForm::is_reduced() const noexcept {
    if (!(std::abs(b) <= a && a <= c)) return false;
    if ((std::abs(b) == a || a == c) && b < 0) return false;
    return true;
}

bool QuadForm::is_ambiguous() const noexcept { return b == 0 || a == b || a == c; }

std::string QuadForm::to_string() const {
    return "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")";
}

void require_discriminant(std::int64_t D) {
    if (D >= 0 || floor_mod(D, 4) > 1) raise(Errc::BadDiscriminant, std::to_string(D) + " is not a negative discriminant");
    if (-D > kMaxOracleDisc) raise(Errc::TooLarge, "discriminant too large for the form enumeration");
}

QuadForm principal(std::int64_t D) {
    require_discriminant(D);
    const std::int64_t b = floor_mod(D, 4) == 0 ? 0 : 1;
    return {1, b, (b * b - D) / 4};
}

QuadForm reduce(QuadForm f) {
    const std::int64_t D = f.disc();
    auto normalize = [&] {
        std::int64_t r = floor_mod(f.b, 2 * f.a);
        if (r > f.a) r -= 2 * f.a;
        f.b = r;
        f.c = c_from(f.a, f.b, D);
    };
    normalize();
    while (f.a > f.c) {
        std::swap(f.a, f.c);
        f.b = -f.b;
        normalize();
    }
    if ((f.a == f.c || f.a == -f.b) && f.b < 0) f.b = -f.b;
    return f;
}

QuadForm inverse(const QuadForm& f) { return reduce({f.a, -f.b, f.c}); }

QuadForm compose(const QuadForm& f1, const QuadForm& f2) {
    const std::int64_t D = f1.disc();
    if (D != f2.disc()) raise(Errc::DiscMismatch, "forms have different discriminants");
    QuadForm p = f1, q = f2;
    if (p.a > q.a) std::swap(p, q);
    const std::int64_t s = (p.b + q.b) / 2;
    const std::int64_t n = q.b - s;

    std::int64_t y1 = 0, d = p.a;
    if (q.a % p.a != 0) {
        const Bezout e = ext_gcd(q.a, p.a);
        y1 = e.x;
        d = e.g;
    }
    std::int64_t x2 = 0, y2 = -1, d1 = d;
    if (s % d != 0) {
        const Bezout e = ext_gcd(s, d);
        x2 = e.x;
        y2 = -e.y;
        d1 = e.g;
    }
    const std::int64_t v1 = p.a / d1;
    const std::int64_t v2 = q.a / d1;
    const i128 r_raw = static_cast<i128>(y1) * y2 % v1 * n - static_cast<i128>(x2) * q.c;
    std::int64_t r = static_cast<std::int64_t>(((r_raw % v1) + v1) % v1);
    const i128 b3 = q.b + 2 * static_cast<i128>(v2) * r;
    const i128 a3 = static_cast<i128>(v1) * v2;
    // Reduce b3 modulo 2 a3 before narrowing.
    i128 b3r = b3 % (2 * a3);
    if (b3r < 0) b3r += 2 * a3;
    QuadForm out;
    out.a = static_cast<std::int64_t>(a3);
    out.b = static_cast<std::int64_t>(b3r);
    out.c = static_cast<std::int64_t>((b3r * b3r - D) / (4 * a3));
    return reduce(out);
}

QuadForm power(QuadForm f, std::uint64_t e) {
    QuadForm acc = principal(f.disc());
    while (e > 0) {
        if (e & 1) acc = compose(acc, f);
        f = compose(f, f);
        e >>= 1;
    }
    return acc;
}

std::vector<QuadForm> reduced_forms(std::int64_t D) {
    require_discriminant(D);
    std::vector<QuadForm> out;
    const std::int64_t parity = floor_mod(D, 2);
    for (std::int64_t a = 1; 3 * a * a <= -D; ++a) {
        const std::int64_t four_a = 4 * a;
        std::int64_t b = -a + 1;
        if (floor_mod(b, 2) != parity) ++b;
        for (; b <= a; b += 2) {
            const i128 num = static_cast<i128>(b) * b - D;
            if (num % four_a != 0) continue;
            const std::int64_t c = static_cast<std::int64_t>(num / four_a);
            if (c < a) continue;
            if (b < 0 && (-b == a || a == c)) continue;
            if (std::gcd(std::gcd(a, std::abs(b)), c) != 1) continue;
            out.push_back({a, b, c});
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

ClassGroup2Part group_2part(std::int64_t D) {
    const std::vector<QuadForm> forms = reduced_forms(D);
    ClassGroup2Part g;
    g.disc = D;
    g.h = forms.size();
    unsigned e = 0;
    std::uint64_t m = g.h;
    while (m % 2 == 0) {
        m /= 2;
        ++e;
    }

    // The odd power map is onto the 2-Sylow subgroup S.
    std::set<QuadForm> sylow;
    for (const QuadForm& f : forms) sylow.insert(power(f, m));
    if (sylow.size() != (1ull << e)) raise(Errc::InternalInconsistency, "2-Sylow has the wrong order");

    // |S[2^j]| for j = 0..e; each jump is a power of two whose exponent counts the divisors >= 2^j.
    const QuadForm one = principal(D);
    std::vector<std::uint64_t> killed(e + 1, 0);
    for (QuadForm s : sylow) {
        unsigned t = 0;
        while (!(s == one)) {
            s = compose(s, s);
            ++t;
        }
        for (unsigned j = t; j <= e; ++j) ++killed[j];
    }
    std::vector<unsigned> rank_at(e + 2, 0);  // rank_at[j] = number of divisors >= 2^j
    for (unsigned j = 1; j <= e; ++j) {
        const std::uint64_t ratio = killed[j] / killed[j - 1];
        unsigned lg = 0;
        while ((1ull << lg) < ratio) ++lg;
        if ((1ull << lg) != ratio || killed[j] % killed[j - 1] != 0) {
            raise(Errc::InternalInconsistency, "2-torsion counts are not powers of two");
        }
        rank_at[j] = lg;
    }
    for (unsigned j = e; j >= 1; --j) {
        const unsigned exactly = rank_at[j] - rank_at[j + 1];
        for (unsigned c = 0; c < exactly; ++c) g.divisors.push_back(1ull << j);
    }
    g.r2 = e >= 1 ? rank_at[1] : 0;
    g.r4 = e >= 2 ? rank_at[2] : 0;
    g.r8 = e >= 3 ? rank_at[3] : 0;

    // Independent routes: ambiguous forms give A[2]; squares give 2A.
    std::set<QuadForm> ambiguous, squares;
    for (const QuadForm& f : forms) {
        if (f.is_ambiguous()) ambiguous.insert(f);
        squares.insert(compose(f, f));
    }
    g.ambiguous_forms = ambiguous.size();
    if (g.ambiguous_forms != (1ull << g.r2)) raise(Errc::InternalInconsistency, "ambiguous forms do not number 2^r2");
    std::uint64_t meet = 0;
    for (const QuadForm& f : ambiguous) meet += squares.count(f);
    if (meet != (1ull << g.r4)) raise(Errc::InternalInconsistency, "A[2] meet 2A disagrees with r4");
    return g;
}

}  // namespace congruent
