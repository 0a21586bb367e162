#include "congruent/genus.hpp"

#include <algorithm>

#include "congruent/errors.hpp"

namespace congruent {

namespace {

u64 product_of(std::span<const u64> primes, const VecF2& x) {
    u64 d = 1;
    for (unsigned j = 0; j < primes.size(); ++j) {
        if (x.get(j)) d *= primes[j];
    }
    return d;
}

int sign_of_parity(int parity) { return (parity & 1) ? -1 : 1; }

/// Lexicographic order on coordinate tuples, first coordinate most significant.
bool lex_less(const VecF2& a, const VecF2& b) { return a.to_string() < b.to_string(); }

/// All vectors spanned by the basis.
std::vector<VecF2> span_of(const std::vector<VecF2>& basis, unsigned dim) {
    std::vector<VecF2> out;
    for (std::uint64_t mask = 0; mask < (1ull << basis.size()); ++mask) {
        VecF2 v(dim);
        for (unsigned i = 0; i < basis.size(); ++i) {
            if (mask >> i & 1) v = v ^ basis[i];
        }
        out.push_back(v);
    }
    return out;
}

/// Smallest kernel vector of A other than 0 and the all-ones vector.
VecF2 admissible_kernel_vector(const SymMatF2& A) {
    const unsigned k = A.size();
    std::optional<VecF2> best;
    for (const VecF2& v : span_of(A.to_mat().kernel(), k)) {
        if (v.is_zero() || v == VecF2::ones(k)) continue;
        if (!best || lex_less(v, *best)) best = v;
    }
    if (!best) raise(Errc::InternalInconsistency, "kernel has no admissible vector");
    return *best;
}

int residue16_product(std::span<const int> alpha, const VecF2* mask = nullptr) {
    int prod = 1;
    for (unsigned l = 0; l < alpha.size(); ++l) {
        if (!mask || mask->get(l)) prod = prod * (((alpha[l] % 16) + 16) % 16) % 16;
    }
    return prod;
}

/// Parity of (P-1)/8 + (D-5)/4 from residues P mod 16 and D mod 8 (P = 1 mod 8, D = 1 mod 4).
int bucket_sign_parity(int p_mod16, int d_mod8) {
    const int first = p_mod16 == 9 ? 1 : 0;
    const int second = d_mod8 == 1 ? 1 : 0;
    return first ^ second;
}

void check_legendre_pattern_inputs(std::span<const int> alpha, const SymMatF2& B) {
    require_admissible_alpha(alpha);
    if (B.size() != alpha.size()) raise(Errc::BadAlpha, "alpha and B sizes differ");
}

/// Conditions p_l = alpha_l mod 16 and (p_l/p_j) = (-1)^B_lj for l < j.
bool residues_and_legendre_match(std::span<const u64> primes, std::span<const int> alpha, const SymMatF2& B) {
    for (unsigned l = 0; l < primes.size(); ++l) {
        if (static_cast<int>(primes[l] % 16) != alpha[l]) return false;
    }
    for (unsigned l = 0; l < primes.size(); ++l) {
        for (unsigned j = l + 1; j < primes.size(); ++j) {
            if (jacobi(static_cast<i64>(primes[l]), primes[j]) != (B.get(l, j) ? -1 : 1)) return false;
        }
    }
    return true;
}

}  // namespace

FactoredSquarefree FactoredSquarefree::from_primes(std::vector<u64> primes) {
    std::sort(primes.begin(), primes.end());
    if (std::adjacent_find(primes.begin(), primes.end()) != primes.end()) raise(Errc::BadInput, "repeated prime");
    FactoredSquarefree out;
    out.n = 1;
    for (u64 p : primes) {
        if (!is_prime(p)) raise(Errc::BadInput, std::to_string(p) + " is not prime");
        out.n *= p;
        out.all_1mod4 = out.all_1mod4 && p % 4 == 1;
        out.all_1mod8 = out.all_1mod8 && p % 8 == 1;
    }
    out.n_1mod8 = out.n % 8 == 1;
    out.primes = std::move(primes);
    return out;
}

FactoredSquarefree FactoredSquarefree::of(u64 n) {
    if (n == 0) raise(Errc::BadInput, "n must be positive");
    std::vector<u64> primes;
    for (auto [p, e] : factor(n)) {
        if (e > 1) raise(Errc::BadInput, std::to_string(n) + " is not squarefree");
        primes.push_back(p);
    }
    return from_primes(std::move(primes));
}

SymMatF2 redei_A(std::span<const u64> primes) {
    const unsigned k = static_cast<unsigned>(primes.size());
    SymMatF2 A(k);
    std::vector<int> row_sum(k, 0);
    for (unsigned i = 0; i < k; ++i) {
        for (unsigned j = i + 1; j < k; ++j) {
            // Both primes are 1 mod 4, so [p_j/p_i] = [p_i/p_j] by reciprocity.
            const int a = additive(static_cast<i64>(primes[j]), primes[i]);
            A.set(i, j, a);
            row_sum[i] ^= a;
            row_sum[j] ^= a;
        }
    }
    for (unsigned i = 0; i < k; ++i) A.set(i, i, row_sum[i]);
    return A;
}

RedeiData redei(const FactoredSquarefree& n) {
    if (!n.in_Qk()) raise(Errc::NotInQk, std::to_string(n.n) + " is not in Q_k");
    RedeiData r;
    r.A = redei_A(n.primes);
    r.b = VecF2(n.k());
    for (unsigned i = 0; i < n.k(); ++i) r.b.set(i, additive_two(static_cast<i64>(n.primes[i])));
    const MatF2 a = r.A.to_mat();
    r.rank_A = a.rank();
    r.rank_R = a.augment(r.b).rank();
    if (r.rank_R > n.k()) raise(Errc::InternalInconsistency, "rank exceeds k");
    r.h4 = n.k() - r.rank_R;
    return r;
}

H8Verdict h8_criterion(const FactoredSquarefree& n, const RedeiData& r) {
    if (r.h4 != 1) raise(Errc::H8Undefined, "h8 criterion needs h4 = 1 (h4 = " + std::to_string(r.h4) + ")");
    const unsigned k = n.k();
    H8Verdict v;
    v.defined = true;
    if (r.rank_A + 1 == k) {
        v.case_tag = H8Case::RankA_kMinus1;
        v.x = anchored_solution(r.A, r.b);
        v.d = product_of(n.primes, v.x);
        v.d_prime = n.n / v.d;
        v.symbol_product = quartic_rational_composite(2 * static_cast<i64>(v.d), v.d_prime) *
                           quartic_rational_composite(2 * static_cast<i64>(v.d_prime), v.d);
        v.target = sign_of_parity(static_cast<int>(((n.n - 1) / 8) & 1));
    } else if (r.rank_A + 2 == k) {
        v.case_tag = H8Case::RankA_kMinus2;
        v.x = admissible_kernel_vector(r.A);
        v.d = product_of(n.primes, v.x);
        v.d_prime = n.n / v.d;
        if (v.d % 8 != 5) {
            raise(Errc::InternalInconsistency, "rank A = k-2 kernel vector gives d = " + std::to_string(v.d) +
                                                   " which is not 5 mod 8");
        }
        v.symbol_product = quartic_rational_composite(static_cast<i64>(v.d), v.d_prime) *
                           quartic_rational_composite(static_cast<i64>(v.d_prime), v.d);
        v.target = -1;
    } else {
        raise(Errc::InternalInconsistency, "h4 = 1 but rank A is neither k-1 nor k-2");
    }
    v.h8 = v.symbol_product == v.target ? 1 : 0;
    return v;
}

int quarter_parity(u64 d) {
    if (d % 4 != 1) raise(Errc::BadInput, "quarter parity needs d = 1 mod 4");
    return d % 8 == 5 ? 1 : 0;
}

PkVerdict classify_Pk(const FactoredSquarefree& n, Convention convention) {
    const RedeiData r = redei(n);
    PkVerdict out;
    out.h4 = r.h4;
    if (r.h4 != 1) return out;
    out.h8 = h8_criterion(n, r);

    const unsigned k = n.k();
    const MatF2 R = r.A.to_mat().augment(r.b);
    VecF2 x0 = VecF2::ones(k + 1);
    x0.set(k, false);
    std::optional<VecF2> best;
    for (const VecF2& v : span_of(R.kernel(), k + 1)) {
        if (v.is_zero() || v == x0) continue;
        if (!best || lex_less(v, *best)) best = v;
    }
    if (!best) raise(Errc::InternalInconsistency, "ker R has no admissible vector");
    out.X = best;
    out.d = product_of(n.primes, *best);
    // (d-1)/4 and (d-5)/4 differ by one, so D5 flips the D1 parity.
    const int d1 = quarter_parity(out.d);
    out.parity = convention == Convention::D1 ? d1 : 1 - d1;
    out.member = out.h8->h8 == out.parity;
    return out;
}

void require_admissible_alpha(std::span<const int> alpha) {
    if (alpha.empty()) raise(Errc::BadAlpha, "alpha is empty");
    int prod = 1;
    for (int a : alpha) {
        if (a != 1 && a != 5 && a != 9 && a != 13) raise(Errc::BadAlpha, "alpha entries must lie in {1,5,9,13}");
        prod = prod * a % 8;
    }
    if (prod != 1) raise(Errc::BadAlpha, "product of alpha is not 1 mod 8");
}

bool in_Ck_alpha_B(const FactoredSquarefree& n, std::span<const int> alpha, const SymMatF2& B) {
    check_legendre_pattern_inputs(alpha, B);
    if (!in_B(B)) raise(Errc::BadMatrix, "B must have rank k-1 and zero row sums");
    if (n.k() != alpha.size()) raise(Errc::BadAlpha, "alpha length differs from the number of prime factors");
    if (!residues_and_legendre_match(n.primes, alpha, B)) return false;

    const VecF2 z = anchored_solution(B, two_vector(alpha));
    const u64 d = product_of(n.primes, z);
    const u64 dp = n.n / d;
    const int lhs = quartic_rational_composite(2 * static_cast<i64>(d), dp) *
                    quartic_rational_composite(2 * static_cast<i64>(dp), d);
    const int parity = static_cast<int>(((n.n - 1) / 8) & 1) ^ (1 - quarter_parity(d));
    return lhs == sign_of_parity(parity);
}

std::vector<PrimaryPrime> gaussian_lift(const FactoredSquarefree& n) {
    std::vector<PrimaryPrime> out;
    out.reserve(n.k());
    for (u64 p : n.primes) out.push_back(prime_in_P_above(p));
    return out;
}

bool in_Ckprime_gaussian(std::span<const PrimaryPrime> eta, std::span<const int> alpha, const SymMatF2& B) {
    check_legendre_pattern_inputs(alpha, B);
    if (!in_B(B)) raise(Errc::BadMatrix, "B must have rank k-1 and zero row sums");
    if (eta.size() != alpha.size()) raise(Errc::BadAlpha, "alpha length differs from the number of prime factors");
    const unsigned k = static_cast<unsigned>(eta.size());

    std::vector<u64> norms;
    for (unsigned l = 0; l < k; ++l) {
        if (!eta[l].in_P()) return false;
        if (!eta[l].norm().fits_ulong_p()) raise(Errc::TooLarge, "norm exceeds 64 bits");
        norms.push_back(eta[l].norm().get_ui());
        if (l > 0 && norms[l] <= norms[l - 1]) return false;
    }
    if (!residues_and_legendre_match(norms, alpha, B)) return false;

    const VecF2 z = anchored_solution(B, two_vector(alpha));
    GaussInt theta2{1, 0};
    for (unsigned l = 0; l < k; ++l) {
        if (!z.get(l)) theta2 *= eta[l].value();
    }
    // (theta2/theta1) as the product over the primes of theta1, times (2/eta)_4 by definition.
    QuarticValue lhs = QuarticValue::one();
    for (unsigned l = 0; l < k; ++l) {
        if (z.get(l) && legendre_symbol_zi_prime(theta2, eta[l].value()) < 0) lhs *= QuarticValue::unit(2);
        lhs *= quartic_symbol(GaussInt(2), eta[l]);
    }
    const int parity = bucket_sign_parity(residue16_product(alpha), residue16_product(alpha, &z) % 8);
    return lhs == QuarticValue::unit(2 * parity);
}

bool in_Ck_alpha_B_prime(const FactoredSquarefree& n, std::span<const int> alpha, const SymMatF2& B) {
    check_legendre_pattern_inputs(alpha, B);
    if (!in_Bprime(B)) raise(Errc::BadMatrix, "B must have rank k-2 and zero row sums");
    if (n.k() != alpha.size()) raise(Errc::BadAlpha, "alpha length differs from the number of prime factors");
    if (B.to_mat().augment(two_vector(alpha)).rank() + 1 != B.size()) {
        raise(Errc::BadAlpha, "rank(B | b_alpha) must be k-1");
    }
    if (!residues_and_legendre_match(n.primes, alpha, B)) return false;

    const VecF2 x = admissible_kernel_vector(B);
    const u64 d = product_of(n.primes, x);
    const u64 dp = n.n / d;
    if (d % 8 != 5) raise(Errc::InternalInconsistency, "kernel vector gives d not 5 mod 8");
    return quartic_rational_composite(static_cast<i64>(d), dp) * quartic_rational_composite(static_cast<i64>(dp), d) ==
           -1;
}

namespace {

bool cross_legendre_trivial(std::span<const u64> left, std::span<const u64> right) {
    for (u64 p : left) {
        for (u64 q : right) {
            if (jacobi(static_cast<i64>(p), q) != 1) return false;
        }
    }
    return true;
}

int sign_9_over_8(int residue16) { return residue16 == 9 ? 1 : -1; }

}  // namespace

bool in_tilde_construction(const FactoredSquarefree& n, u64 d) {
    if (!n.in_Qtilde()) raise(Errc::NotInQtilde, std::to_string(n.n) + " has a prime factor not 1 mod 8");
    if (d <= 1 || d >= n.n || n.n % d != 0) raise(Errc::BadInput, "d must be a proper divisor of n");
    std::vector<u64> left, right;
    for (u64 p : n.primes) (d % p == 0 ? left : right).push_back(p);
    const u64 dp = n.n / d;

    if (!cross_legendre_trivial(left, right)) return false;
    const FactoredSquarefree fd = FactoredSquarefree::from_primes(left);
    const FactoredSquarefree fdp = FactoredSquarefree::from_primes(right);
    if (redei(fd).h4 != 1 || redei(fdp).h4 != 1) return false;
    if (quartic_rational_composite(2, d) != sign_9_over_8(static_cast<int>(d % 16))) return false;
    if (quartic_rational_composite(2, dp) != sign_9_over_8(static_cast<int>(dp % 16))) return false;
    return quartic_rational_composite(static_cast<i64>(d), dp) == 1 &&
           quartic_rational_composite(static_cast<i64>(dp), d) == 1;
}

bool in_Ckk_sigma(const FactoredSquarefree& n, std::span<const int> alpha, const SymMatF2& B, const SymMatF2& Bprime,
                  std::span<const unsigned> sigma) {
    if (!n.in_Qtilde()) raise(Errc::NotInQtilde, std::to_string(n.n) + " has a prime factor not 1 mod 8");
    const unsigned total = n.k();
    if (alpha.size() != total) raise(Errc::BadAlpha, "alpha length differs from the number of prime factors");
    for (int a : alpha) {
        if (a != 1 && a != 9) raise(Errc::BadAlpha, "alpha entries must lie in {1,9}");
    }
    if (!in_B(B) || !in_B(Bprime)) raise(Errc::BadMatrix, "B and B' must have corank 1 and zero row sums");
    if (B.size() != sigma.size() || B.size() + Bprime.size() != total) raise(Errc::BadMatrix, "sizes do not add up");
    for (unsigned j = 0; j < sigma.size(); ++j) {
        if (sigma[j] >= total || (j > 0 && sigma[j] <= sigma[j - 1])) raise(Errc::BadInput, "sigma must ascend");
    }

    for (unsigned j = 0; j < total; ++j) {
        if (static_cast<int>(n.primes[j] % 16) != alpha[j]) return false;
    }
    std::vector<u64> left, right;
    int delta = 1, delta_p = 1;
    std::vector<bool> chosen(total, false);
    for (unsigned s : sigma) chosen[s] = true;
    for (unsigned j = 0; j < total; ++j) {
        if (chosen[j]) {
            left.push_back(n.primes[j]);
            delta = delta * alpha[j] % 16;
        } else {
            right.push_back(n.primes[j]);
            delta_p = delta_p * alpha[j] % 16;
        }
    }
    if (!(redei_A(left) == B) || !(redei_A(right) == Bprime)) return false;
    if (!cross_legendre_trivial(left, right)) return false;
    const u64 d = FactoredSquarefree::from_primes(left).n;
    const u64 dp = n.n / d;
    if (quartic_rational_composite(2, d) != sign_9_over_8(delta)) return false;
    if (quartic_rational_composite(2, dp) != sign_9_over_8(delta_p)) return false;
    return quartic_rational_composite(static_cast<i64>(d), dp) == 1 &&
           quartic_rational_composite(static_cast<i64>(dp), d) == 1;
}

mpz_class phi_16eps(std::span<const PrimaryPrime> epsilon) {
    mpz_class phi = 128;
    for (const auto& l : epsilon) phi *= l.norm() - 1;
    return phi;
}

u64 count_admissible_classes(const AdmissibleTarget& t) {
    const unsigned k = static_cast<unsigned>(t.alpha.size());
    require_admissible_alpha(t.alpha);
    if (t.B.size() != k || !in_B(t.B)) raise(Errc::BadMatrix, "B must be k x k with rank k-1 and zero row sums");
    if (t.epsilon.size() + 1 != k) raise(Errc::BadTarget, "epsilon must have k-1 prime factors");

    std::vector<u64> p;
    mpz_class norm_eps = 1;
    for (const auto& l : t.epsilon) {
        if (!l.in_P()) raise(Errc::BadTarget, "epsilon factors must lie in P");
        p.push_back(l.norm().get_ui());
        norm_eps *= l.norm();
    }
    if (256 * norm_eps > 1000000) raise(Errc::TooLarge, "N(16 epsilon) exceeds 10^6");
    for (unsigned j = 0; j + 1 < k; ++j) {
        if (j > 0 && p[j] <= p[j - 1]) raise(Errc::BadTarget, "epsilon factors must have ascending norms");
        if (static_cast<int>(p[j] % 16) != t.alpha[j]) raise(Errc::BadTarget, "N lambda_j != alpha_j mod 16");
        for (unsigned l = j + 1; l + 1 < k; ++l) {
            if (jacobi(static_cast<i64>(p[j]), p[l]) != (t.B.get(j, l) ? -1 : 1)) {
                raise(Errc::BadTarget, "epsilon does not match the Legendre pattern of B");
            }
        }
    }

    const VecF2 z = anchored_solution(t.B, two_vector(t.alpha));
    const int sign_parity = bucket_sign_parity(residue16_product(t.alpha), residue16_product(t.alpha, &z) % 8);
    const bool last_in_theta1 = z.get(k - 1);

    // Fixed right-hand factor: (2/epsilon)_4^{-1} times the Legendre symbol
    // between the parts of epsilon; the class a enters through the remaining
    // symbol over the primes S (those of theta1 when z_k = 0, of theta2 otherwise).
    GaussInt eps_in1{1, 0}, eps_out1{1, 0};
    QuarticValue two_eps = QuarticValue::one();
    for (unsigned j = 0; j + 1 < k; ++j) {
        two_eps *= quartic_symbol(GaussInt(2), t.epsilon[j]);
        (z.get(j) ? eps_in1 : eps_out1) *= t.epsilon[j].value();
    }
    // Both cases reduce to (theta2 part of epsilon / theta1 part of epsilon).
    const int eps_legendre = legendre_symbol_zi(eps_out1, eps_in1);
    QuarticValue rhs = QuarticValue::unit(2 * sign_parity) * two_eps.inverse();
    if (eps_legendre < 0) rhs *= QuarticValue::unit(2);
    std::vector<bool> in_S(k - 1);
    for (unsigned j = 0; j + 1 < k; ++j) in_S[j] = last_in_theta1 ? !z.get(j) : z.get(j);

    // Primary units of Z[i]/16: x + yi with x, y in [0, 16).
    struct Class16 {
        int norm16;
        QuarticValue two;
    };
    std::vector<Class16> classes16;
    for (int x = 0; x < 16; ++x) {
        for (int y = 0; y < 16; ++y) {
            if (!is_primary(GaussInt(x, y))) continue;
            classes16.push_back({(x * x + y * y) % 16, QuarticValue::unit(-(y / 2))});
        }
    }

    // Mixed-radix walk over prod (Z[i]/lambda_j)^x = prod F_{p_j}^x.
    std::vector<u64> digit(k - 1, 1);
    u64 count = 0;
    for (;;) {
        bool legendre_ok = true;
        int s_sign = 1;
        for (unsigned j = 0; j + 1 < k; ++j) {
            const int leg = jacobi(static_cast<i64>(digit[j]), p[j]);
            if (leg != (t.B.get(j, k - 1) ? -1 : 1)) legendre_ok = false;
            if (in_S[j]) s_sign *= leg;
        }
        if (legendre_ok) {
            for (const Class16& c : classes16) {
                if (c.norm16 != t.alpha[k - 1]) continue;
                QuarticValue lhs = c.two;
                if (s_sign < 0) lhs *= QuarticValue::unit(2);
                if (lhs == rhs) ++count;
            }
        }
        unsigned pos = 0;
        while (pos + 1 < k && ++digit[pos] == p[pos]) digit[pos++] = 1;
        if (pos + 1 >= k) break;
    }
    return count;
}

}  // namespace congruent
