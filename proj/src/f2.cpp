#include "congruent/f2.hpp"

#include <bit>
#include <sstream>

#include "congruent/errors.hpp"

namespace congruent {

namespace {

std::uint64_t low_mask(unsigned k) { return k >= 64 ? ~0ull : ((1ull << k) - 1); }

}  // namespace

// ---------------------------------------------------------------- VecF2

VecF2::VecF2(unsigned k, std::uint64_t bits) : k_(k), bits_(bits & low_mask(k)) {
    if (k > 64) raise(Errc::TooLarge, "VecF2 supports at most 64 coordinates");
}

VecF2 VecF2::ones(unsigned k) { return VecF2(k, low_mask(k)); }

VecF2 VecF2::from_bits(std::span<const int> bits) {
    VecF2 v(static_cast<unsigned>(bits.size()));
    for (unsigned i = 0; i < bits.size(); ++i) v.set(i, bits[i] & 1);
    return v;
}

void VecF2::set(unsigned i, bool v) {
    if (v) bits_ |= 1ull << i;
    else bits_ &= ~(1ull << i);
}

unsigned VecF2::weight() const { return static_cast<unsigned>(std::popcount(bits_)); }

VecF2 VecF2::operator^(const VecF2& o) const {
    if (k_ != o.k_) raise(Errc::BadInput, "vector length mismatch");
    return VecF2(k_, bits_ ^ o.bits_);
}

std::string VecF2::to_string() const {
    std::string s;
    for (unsigned i = 0; i < k_; ++i) s.push_back(get(i) ? '1' : '0');
    return s;
}

// ---------------------------------------------------------------- MatF2

MatF2::MatF2(unsigned rows, unsigned cols) : cols_(cols), rows_(rows, 0) {
    if (cols > 63) raise(Errc::TooLarge, "MatF2 supports at most 63 columns");
}

MatF2 MatF2::from_rows(std::span<const std::vector<int>> rows) {
    const unsigned cols = rows.empty() ? 0 : static_cast<unsigned>(rows[0].size());
    MatF2 m(static_cast<unsigned>(rows.size()), cols);
    for (unsigned i = 0; i < rows.size(); ++i) {
        if (rows[i].size() != cols) raise(Errc::BadInput, "ragged matrix rows");
        for (unsigned j = 0; j < cols; ++j) m.set(i, j, rows[i][j] & 1);
    }
    return m;
}

void MatF2::set(unsigned i, unsigned j, bool v) {
    if (v) rows_[i] |= 1ull << j;
    else rows_[i] &= ~(1ull << j);
}

MatF2 MatF2::augment(const VecF2& v) const {
    if (v.size() != rows()) raise(Errc::BadInput, "augment: length mismatch");
    MatF2 out(rows(), cols_ + 1);
    for (unsigned i = 0; i < rows(); ++i) out.rows_[i] = rows_[i] | (static_cast<std::uint64_t>(v.get(i)) << cols_);
    return out;
}

VecF2 MatF2::apply(const VecF2& x) const {
    if (x.size() != cols_) raise(Errc::BadInput, "apply: length mismatch");
    VecF2 out(rows());
    for (unsigned i = 0; i < rows(); ++i) out.set(i, std::popcount(rows_[i] & x.bits()) & 1);
    return out;
}

unsigned MatF2::rank() const {
    std::vector<std::uint64_t> r = rows_;
    unsigned rank = 0;
    for (unsigned c = 0; c < cols_ && rank < r.size(); ++c) {
        const std::uint64_t bit = 1ull << c;
        std::size_t piv = rank;
        while (piv < r.size() && !(r[piv] & bit)) ++piv;
        if (piv == r.size()) continue;
        std::swap(r[piv], r[rank]);
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i != rank && (r[i] & bit)) r[i] ^= r[rank];
        }
        ++rank;
    }
    return rank;
}

std::optional<AffineSolution> MatF2::try_solve(const VecF2& b) const {
    if (b.size() != rows()) raise(Errc::BadInput, "solve: length mismatch");
    const std::uint64_t rhs_bit = 1ull << cols_;
    std::vector<std::uint64_t> r(rows_);
    for (unsigned i = 0; i < rows(); ++i) {
        if (b.get(i)) r[i] |= rhs_bit;
    }
    std::vector<int> pivot_row_of(cols_, -1);
    unsigned rank = 0;
    for (unsigned c = 0; c < cols_ && rank < r.size(); ++c) {
        const std::uint64_t bit = 1ull << c;
        std::size_t piv = rank;
        while (piv < r.size() && !(r[piv] & bit)) ++piv;
        if (piv == r.size()) continue;
        std::swap(r[piv], r[rank]);
        for (std::size_t i = 0; i < r.size(); ++i) {
            if (i != rank && (r[i] & bit)) r[i] ^= r[rank];
        }
        pivot_row_of[c] = static_cast<int>(rank);
        ++rank;
    }
    for (std::size_t i = rank; i < r.size(); ++i) {
        if (r[i] & rhs_bit) return std::nullopt;
    }
    AffineSolution sol{VecF2(cols_), {}};
    for (unsigned c = 0; c < cols_; ++c) {
        if (pivot_row_of[c] >= 0) sol.particular.set(c, r[static_cast<std::size_t>(pivot_row_of[c])] & rhs_bit);
    }
    for (unsigned f = 0; f < cols_; ++f) {
        if (pivot_row_of[f] >= 0) continue;
        VecF2 v(cols_);
        v.set(f, true);
        for (unsigned c = 0; c < cols_; ++c) {
            if (pivot_row_of[c] >= 0 && (r[static_cast<std::size_t>(pivot_row_of[c])] >> f & 1)) v.set(c, true);
        }
        sol.kernel.push_back(v);
    }
    return sol;
}

AffineSolution MatF2::solve(const VecF2& b) const {
    auto sol = try_solve(b);
    if (!sol) raise(Errc::NoSolution, "right-hand side " + b.to_string() + " is not in the image");
    return *std::move(sol);
}

std::vector<VecF2> MatF2::kernel() const { return solve(VecF2(rows())).kernel; }

// ---------------------------------------------------------------- SymMatF2

SymMatF2::SymMatF2(unsigned k) : k_(k), words_((static_cast<std::size_t>(k) * (k + 1) / 2 + 63) / 64, 0) {
    if (k > 63) raise(Errc::TooLarge, "SymMatF2 supports at most 63 rows");
}

std::size_t SymMatF2::index(unsigned i, unsigned j) const {
    if (i > j) std::swap(i, j);
    // Row i of the upper triangle starts after rows 0..i-1, of lengths k, k-1, ...
    return static_cast<std::size_t>(i) * k_ - static_cast<std::size_t>(i) * (i - 1) / 2 + (j - i);
}

bool SymMatF2::get(unsigned i, unsigned j) const {
    const std::size_t idx = index(i, j);
    return (words_[idx / 64] >> (idx % 64)) & 1u;
}

void SymMatF2::set(unsigned i, unsigned j, bool v) {
    const std::size_t idx = index(i, j);
    if (v) words_[idx / 64] |= 1ull << (idx % 64);
    else words_[idx / 64] &= ~(1ull << (idx % 64));
}

SymMatF2 SymMatF2::from_upper_bits(unsigned k, std::uint64_t bits) {
    if (k * (k + 1) / 2 > 64) raise(Errc::TooLarge, "upper-triangle code needs k(k+1)/2 <= 64");
    SymMatF2 m(k);
    if (!m.words_.empty()) m.words_[0] = bits & low_mask(k * (k + 1) / 2);
    return m;
}

SymMatF2 SymMatF2::from_rows(std::span<const std::vector<int>> rows) {
    const unsigned k = static_cast<unsigned>(rows.size());
    SymMatF2 m(k);
    for (unsigned i = 0; i < k; ++i) {
        if (rows[i].size() != k) raise(Errc::BadMatrix, "matrix is not square");
        for (unsigned j = 0; j < k; ++j) {
            if ((rows[i][j] & 1) != (rows[j][i] & 1)) raise(Errc::BadMatrix, "matrix is not symmetric");
            if (j >= i) m.set(i, j, rows[i][j] & 1);
        }
    }
    return m;
}

SymMatF2 SymMatF2::zero_row_sums(unsigned k, std::span<const std::vector<int>> off_diagonal) {
    std::vector<std::vector<int>> rows(off_diagonal.begin(), off_diagonal.end());
    for (unsigned i = 0; i < k; ++i) {
        int s = 0;
        for (unsigned j = 0; j < k; ++j) {
            if (j != i) s ^= rows[i][j] & 1;
        }
        rows[i][i] = s;
    }
    return from_rows(rows);
}

MatF2 SymMatF2::to_mat() const {
    MatF2 m(k_, k_);
    for (unsigned i = 0; i < k_; ++i) {
        for (unsigned j = 0; j < k_; ++j) m.set(i, j, get(i, j));
    }
    return m;
}

bool SymMatF2::has_zero_row_sums() const {
    for (unsigned i = 0; i < k_; ++i) {
        bool s = false;
        for (unsigned j = 0; j < k_; ++j) s ^= get(i, j);
        if (s) return false;
    }
    return true;
}

std::string SymMatF2::to_string() const {
    std::string s;
    for (unsigned i = 0; i < k_; ++i) {
        if (i) s.push_back('/');
        for (unsigned j = 0; j < k_; ++j) s.push_back(get(i, j) ? '1' : '0');
    }
    return s;
}

SymMatF2 SymMatF2::parse(const std::string& text) {
    std::vector<std::vector<int>> rows;
    std::stringstream ss(text);
    std::string row;
    while (std::getline(ss, row, '/')) {
        std::vector<int> r;
        for (char c : row) {
            if (c != '0' && c != '1') raise(Errc::BadInput, "matrix rows use 0/1 digits");
            r.push_back(c - '0');
        }
        rows.push_back(std::move(r));
    }
    return from_rows(rows);
}

// ---------------------------------------------------------------- ExactRational and counts

ExactRational::ExactRational(mpq_class v) : v_(std::move(v)) { v_.canonicalize(); }

ExactRational::ExactRational(long num, unsigned long den) : v_(num, den) {
    if (den == 0) raise(Errc::BadInput, "zero denominator");
    v_.canonicalize();
}

ExactRational pow2(long e) {
    mpz_class p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(e < 0 ? -e : e));
    return e >= 0 ? ExactRational(mpq_class(p)) : ExactRational(mpq_class(mpz_class(1), p));
}

mpz_class binomial(unsigned n, unsigned k) {
    mpz_class out;
    mpz_bin_uiui(out.get_mpz_t(), n, k);
    return out;
}

ExactRational u(unsigned k) {
    mpq_class acc = 1;
    for (unsigned i = 1; i <= k / 2; ++i) acc *= 1 - pow2(1 - 2 * static_cast<long>(i)).value();
    return ExactRational(acc);
}

mpz_class count_sym_rank(unsigned k, unsigned r) {
    if (r > k) return 0;
    mpq_class acc = pow2(static_cast<long>(binomial(r + 1, 2).get_ui())).value() * u(r + 1).value();
    const mpz_class two_k = mpz_class(1) << k;
    const mpz_class two_kr = mpz_class(1) << (k - r);
    for (unsigned i = 0; i + r < k; ++i) {
        const mpz_class two_i = mpz_class(1) << i;
        acc *= mpq_class(two_k - two_i, two_kr - two_i);
    }
    acc.canonicalize();
    if (acc.get_den() != 1) raise(Errc::InternalInconsistency, "symmetric rank count is not an integer");
    return acc.get_num();
}

mpz_class count_B(unsigned k) {
    if (k == 0) raise(Errc::BadInput, "k >= 1");
    mpq_class v = u(k).value() * pow2(static_cast<long>(binomial(k, 2).get_ui())).value();
    v.canonicalize();
    if (v.get_den() != 1) raise(Errc::InternalInconsistency, "count_B is not an integer");
    return v.get_num();
}

mpz_class count_Bprime(unsigned k) {
    if (k < 2) raise(Errc::BadInput, "k >= 2");
    mpq_class v = pow2(static_cast<long>(binomial(k - 1, 2).get_ui())).value() * u(k - 1).value() *
                  mpq_class((mpz_class(1) << (k - 1)) - 1);
    v.canonicalize();
    if (v.get_den() != 1) raise(Errc::InternalInconsistency, "count_Bprime is not an integer");
    return v.get_num();
}

std::vector<SymMatF2> enumerate_sym_with(unsigned k, unsigned rank, bool zero_row_sums) {
    if (k > 5) raise(Errc::TooLarge, "enumeration limited to k <= 5");
    std::vector<SymMatF2> out;
    const std::uint64_t total = 1ull << (k * (k + 1) / 2);
    for (std::uint64_t code = 0; code < total; ++code) {
        SymMatF2 m = SymMatF2::from_upper_bits(k, code);
        if (zero_row_sums && !m.has_zero_row_sums()) continue;
        if (m.rank() == rank) out.push_back(std::move(m));
    }
    return out;
}

mpz_class brute_count_sym_rank(unsigned k, unsigned r) {
    return static_cast<unsigned long>(enumerate_sym_with(k, r, false).size());
}

std::vector<SymMatF2> enumerate_B(unsigned k) {
    if (k == 0) raise(Errc::BadInput, "k >= 1");
    return enumerate_sym_with(k, k - 1, true);
}

std::vector<SymMatF2> enumerate_Bprime(unsigned k) {
    if (k < 2) raise(Errc::BadInput, "k >= 2");
    return enumerate_sym_with(k, k - 2, true);
}

bool in_B(const SymMatF2& m) { return m.size() >= 1 && m.has_zero_row_sums() && m.rank() + 1 == m.size(); }

bool in_Bprime(const SymMatF2& m) { return m.size() >= 2 && m.has_zero_row_sums() && m.rank() + 2 == m.size(); }

VecF2 two_vector(std::span<const int> alpha) {
    VecF2 b(static_cast<unsigned>(alpha.size()));
    for (unsigned l = 0; l < alpha.size(); ++l) {
        const int r = ((alpha[l] % 8) + 8) % 8;
        b.set(l, r == 3 || r == 5);
    }
    return b;
}

std::vector<std::vector<int>> admissible_alphas(unsigned k) {
    static constexpr int residues[] = {1, 5, 9, 13};
    std::vector<std::vector<int>> out;
    std::vector<int> alpha(k, 1);
    const std::uint64_t total = 1ull << (2 * k);
    for (std::uint64_t code = 0; code < total; ++code) {
        int prod = 1;
        for (unsigned l = 0; l < k; ++l) {
            alpha[l] = residues[(code >> (2 * l)) & 3];
            prod = prod * alpha[l] % 8;
        }
        if (prod == 1) out.push_back(alpha);
    }
    return out;
}

std::vector<std::vector<int>> sigma_B(const SymMatF2& B) {
    if (!in_Bprime(B)) raise(Errc::BadMatrix, "B must have rank k-2 and zero row sums");
    const MatF2 m = B.to_mat();
    std::vector<std::vector<int>> out;
    for (auto& alpha : admissible_alphas(B.size())) {
        if (m.augment(two_vector(alpha)).rank() + 1 == B.size()) out.push_back(std::move(alpha));
    }
    return out;
}

mpz_class count_sigma_B(const SymMatF2& B) { return static_cast<unsigned long>(sigma_B(B).size()); }

VecF2 anchored_solution(const SymMatF2& B, const VecF2& b) {
    if (!in_B(B)) raise(Errc::BadMatrix, "B must have rank k-1 and zero row sums");
    const AffineSolution sol = B.to_mat().solve(b);
    // The kernel is {0, (1,...,1)}, so the two solutions differ in every coordinate.
    return sol.particular.get(0) ? sol.particular : sol.particular ^ VecF2::ones(B.size());
}

}  // namespace congruent
