#pragma once

// Genus-theory criteria for n = p_1 ... p_k with every p_i = 1 mod 4: the
// Redei matrix and 4-rank, the quartic-symbol 8-rank criteria, the P_k
// classification and the membership predicates of the residue-symbol buckets.

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "congruent/f2.hpp"
#include "congruent/gaussian.hpp"
#include "congruent/residue.hpp"

namespace congruent {

/// Squarefree n with its ascending prime factors.
struct FactoredSquarefree {
    u64 n = 1;
    std::vector<u64> primes;
    bool all_1mod4 = true;
    bool all_1mod8 = true;
    bool n_1mod8 = false;

    /// Builds from distinct primes in any order; raises BadInput on repeats.
    static FactoredSquarefree from_primes(std::vector<u64> primes);
    /// Factors n; raises BadInput unless n is squarefree and > 0.
    static FactoredSquarefree of(u64 n);

    unsigned k() const noexcept { return static_cast<unsigned>(primes.size()); }
    bool in_Qk() const noexcept { return n_1mod8 && all_1mod4 && !primes.empty(); }
    bool in_Qtilde() const noexcept { return all_1mod8 && !primes.empty(); }
};

/// Off-diagonal entries [p_j/p_i] with diagonal fixed by zero row sums.
SymMatF2 redei_A(std::span<const u64> primes);

struct RedeiData {
    SymMatF2 A;
    VecF2 b;
    unsigned rank_R = 0;
    unsigned rank_A = 0;
    unsigned h4 = 0;
};

RedeiData redei(const FactoredSquarefree& n);

enum class H8Case { RankA_kMinus1, RankA_kMinus2 };

struct H8Verdict {
    bool defined = false;
    int h8 = 0;
    H8Case case_tag = H8Case::RankA_kMinus1;
    u64 d = 1;
    u64 d_prime = 1;
    VecF2 x;
    /// Left side of the criterion (product of two rational quartic symbols).
    int symbol_product = 1;
    /// The comparison value: (-1)^((n-1)/8) in case (i), -1 in case (ii).
    int target = 1;
};

H8Verdict h8_criterion(const FactoredSquarefree& n, const RedeiData& r);

enum class Convention { D5, D1 };

struct PkVerdict {
    bool member = false;
    unsigned h4 = 0;
    std::optional<H8Verdict> h8;
    /// Kernel vector X of R (k+1 coordinates) and d built from it; set when h4 = 1.
    std::optional<VecF2> X;
    u64 d = 1;
    int parity = 0;
};

PkVerdict classify_Pk(const FactoredSquarefree& n, Convention convention);

/// (d - 1)/4 mod 2 for d = 1 mod 4.
int quarter_parity(u64 d);

using Alpha = std::vector<int>;

/// Validates alpha in {1,5,9,13}^k with product 1 mod 8; raises BadAlpha.
void require_admissible_alpha(std::span<const int> alpha);

bool in_Ck_alpha_B(const FactoredSquarefree& n, std::span<const int> alpha, const SymMatF2& B);

bool in_Ckprime_gaussian(std::span<const PrimaryPrime> eta, std::span<const int> alpha, const SymMatF2& B);

/// The product of the P-representatives of the primes of n, as a list.
std::vector<PrimaryPrime> gaussian_lift(const FactoredSquarefree& n);

bool in_Ck_alpha_B_prime(const FactoredSquarefree& n, std::span<const int> alpha, const SymMatF2& B);

/// Sufficient conditions for a rank-0 curve with 2-primary Sha of order 16,
/// evaluated on the split n = d * (n/d).
bool in_tilde_construction(const FactoredSquarefree& n, u64 d);

/// sigma holds 0-based ascending indices into n.primes picking the factors of d.
bool in_Ckk_sigma(const FactoredSquarefree& n, std::span<const int> alpha, const SymMatF2& B, const SymMatF2& Bprime,
                  std::span<const unsigned> sigma);

/// A target for the residue-class count: epsilon = lambda_1 ... lambda_{k-1}
/// (members of P by ascending norm), the full alpha tuple and B.
struct AdmissibleTarget {
    std::vector<PrimaryPrime> epsilon;
    Alpha alpha;
    SymMatF2 B;
};

/// Number of units of Z[i]/(16 epsilon).
mpz_class phi_16eps(std::span<const PrimaryPrime> epsilon);

/// Counts the primary invertible classes a mod 16 epsilon meeting the
/// norm-residue and quartic conditions of the target, by enumerating
/// (Z[i]/16)^x times prod (Z[i]/lambda_j)^x.
u64 count_admissible_classes(const AdmissibleTarget& target);

}  // namespace congruent
