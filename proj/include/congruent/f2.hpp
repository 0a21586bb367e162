#pragma once

// Linear algebra over F2 for the small dense matrices of genus theory, plus
// the exact counts of symmetric matrices by rank.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace congruent {

/// Bit vector of length <= 64.
class VecF2 {
  public:
    VecF2() = default;
    explicit VecF2(unsigned k, std::uint64_t bits = 0);
    static VecF2 ones(unsigned k);
    static VecF2 from_bits(std::span<const int> bits);

    unsigned size() const noexcept { return k_; }
    std::uint64_t bits() const noexcept { return bits_; }
    bool get(unsigned i) const { return (bits_ >> i) & 1u; }
    void set(unsigned i, bool v);
    bool is_zero() const noexcept { return bits_ == 0; }
    unsigned weight() const;

    VecF2 operator^(const VecF2& o) const;
    friend bool operator==(const VecF2& a, const VecF2& b) = default;

    /// Coordinates as '0'/'1' characters, first coordinate leftmost.
    std::string to_string() const;

  private:
    unsigned k_ = 0;
    std::uint64_t bits_ = 0;
};

struct AffineSolution {
    VecF2 particular;
    std::vector<VecF2> kernel;
};

/// Dense rows x cols matrix over F2 with cols <= 63 (one spare bit for an augmented column).
class MatF2 {
  public:
    MatF2(unsigned rows, unsigned cols);
    static MatF2 from_rows(std::span<const std::vector<int>> rows);

    unsigned rows() const noexcept { return static_cast<unsigned>(rows_.size()); }
    unsigned cols() const noexcept { return cols_; }
    bool get(unsigned i, unsigned j) const { return (rows_[i] >> j) & 1u; }
    void set(unsigned i, unsigned j, bool v);
    std::uint64_t row_bits(unsigned i) const { return rows_[i]; }

    /// Appends v as a new last column.
    MatF2 augment(const VecF2& v) const;
    VecF2 apply(const VecF2& x) const;

    unsigned rank() const;
    /// Affine solution space of M x = b, or nullopt when b is not in the image.
    std::optional<AffineSolution> try_solve(const VecF2& b) const;
    /// As try_solve, raising NoSolution.
    AffineSolution solve(const VecF2& b) const;
    /// Basis of {x : M x = 0}.
    std::vector<VecF2> kernel() const;

  private:
    unsigned cols_;
    std::vector<std::uint64_t> rows_;
};

/// Symmetric k x k matrix over F2. Only the upper triangle (with diagonal) is stored.
class SymMatF2 {
  public:
    SymMatF2() = default;
    explicit SymMatF2(unsigned k);
    /// Upper-triangle bits in row-major order (0,0),(0,1),...,(0,k-1),(1,1),...; requires k(k+1)/2 <= 64.
    static SymMatF2 from_upper_bits(unsigned k, std::uint64_t bits);
    static SymMatF2 from_rows(std::span<const std::vector<int>> rows);
    /// Matrix with the given off-diagonal pattern and each diagonal entry set
    /// so the row sums vanish.
    static SymMatF2 zero_row_sums(unsigned k, std::span<const std::vector<int>> off_diagonal);

    unsigned size() const noexcept { return k_; }
    bool get(unsigned i, unsigned j) const;
    void set(unsigned i, unsigned j, bool v);

    MatF2 to_mat() const;
    unsigned rank() const { return to_mat().rank(); }
    bool has_zero_row_sums() const;

    /// Compact text form: rows separated by '/', e.g. "11/11".
    std::string to_string() const;
    static SymMatF2 parse(const std::string& text);

    friend bool operator==(const SymMatF2& a, const SymMatF2& b) = default;

  private:
    std::size_t index(unsigned i, unsigned j) const;

    unsigned k_ = 0;
    std::vector<std::uint64_t> words_;
};

/// Exact rational number, always reduced with positive denominator.
class ExactRational {
  public:
    ExactRational() = default;
    explicit ExactRational(mpq_class v);
    ExactRational(long num, unsigned long den);

    const mpq_class& value() const noexcept { return v_; }
    mpz_class numerator() const { return v_.get_num(); }
    mpz_class denominator() const { return v_.get_den(); }
    double to_double() const { return v_.get_d(); }
    /// "3/8", or "1" for integers.
    std::string to_string() const { return v_.get_str(); }

    friend ExactRational operator+(const ExactRational& a, const ExactRational& b) { return ExactRational(a.v_ + b.v_); }
    friend ExactRational operator-(const ExactRational& a, const ExactRational& b) { return ExactRational(a.v_ - b.v_); }
    friend ExactRational operator*(const ExactRational& a, const ExactRational& b) { return ExactRational(a.v_ * b.v_); }
    friend bool operator==(const ExactRational& a, const ExactRational& b) { return a.v_ == b.v_; }
    friend bool operator<(const ExactRational& a, const ExactRational& b) { return a.v_ < b.v_; }

  private:
    mpq_class v_{0};
};

/// 2^e for any integer e, exactly.
ExactRational pow2(long e);

mpz_class binomial(unsigned n, unsigned k);

/// u_k = prod_{i=1}^{floor(k/2)} (1 - 2^(1-2i)).
ExactRational u(unsigned k);

/// Number of symmetric k x k matrices of rank r (closed form).
mpz_class count_sym_rank(unsigned k, unsigned r);

/// Closed-form size of the set of symmetric k x k matrices with rank k-1 and zero row sums.
mpz_class count_B(unsigned k);
/// Closed-form size of the rank k-2, zero-row-sum set.
mpz_class count_Bprime(unsigned k);

/// Brute force over all 2^(k(k+1)/2) symmetric matrices, k <= 5.
mpz_class brute_count_sym_rank(unsigned k, unsigned r);
std::vector<SymMatF2> enumerate_sym_with(unsigned k, unsigned rank, bool zero_row_sums);
std::vector<SymMatF2> enumerate_B(unsigned k);
std::vector<SymMatF2> enumerate_Bprime(unsigned k);

bool in_B(const SymMatF2& m);
bool in_Bprime(const SymMatF2& m);

/// The vector ([2/alpha_1], ..., [2/alpha_k]) for residues alpha_l mod 16.
VecF2 two_vector(std::span<const int> alpha);

/// All alpha in {1,5,9,13}^k with product = 1 mod 8.
std::vector<std::vector<int>> admissible_alphas(unsigned k);

/// The alpha tuples with rank(B | b_alpha) = k - 1, for B of rank k-2 with zero row sums.
std::vector<std::vector<int>> sigma_B(const SymMatF2& B);
mpz_class count_sigma_B(const SymMatF2& B);

/// The solution z of B z = b with z_1 = 1, for B of rank k-1 with zero row sums.
VecF2 anchored_solution(const SymMatF2& B, const VecF2& b);

}  // namespace congruent
