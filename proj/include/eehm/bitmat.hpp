#pragma once

#include <cstdint>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <vector>

namespace eehm {

using Word = std::uint64_t;
using Rng = std::mt19937_64;

constexpr std::size_t kWordBits = 64;

inline std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

/// Packed bit vector over F2.
class BitVec {
  public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_(words_for(n), 0) {}

    static BitVec from_indices(std::size_t n, std::span<const std::size_t> ones);
    static BitVec from_bits(std::initializer_list<int> bits);

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i / kWordBits] >> (i % kWordBits)) & 1u; }
    void set(std::size_t i, bool v) {
        Word m = Word(1) << (i % kWordBits);
        if (v) w_[i / kWordBits] |= m; else w_[i / kWordBits] &= ~m;
    }
    void flip(std::size_t i) { w_[i / kWordBits] ^= Word(1) << (i % kWordBits); }

    BitVec& operator^=(const BitVec& o);
    bool operator==(const BitVec& o) const = default;

    std::size_t weight() const;
    bool any() const;
    std::vector<std::size_t> ones() const;

    std::span<const Word> words() const { return w_; }
    std::span<Word> words() { return w_; }

    /// Inner product mod 2.
    bool dot(const BitVec& o) const;

    std::string to_string() const;

  private:
    std::size_t n_ = 0;
    std::vector<Word> w_;
};

/// Dense bit-packed matrix over F2, row-major. All arithmetic is mod 2.
class BitMatrix {
  public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), wpr_(words_for(cols)), bits_(rows * wpr_, 0) {}

    static BitMatrix identity(std::size_t n);
    static BitMatrix from_rows(const std::vector<std::vector<int>>& rows);
    static BitMatrix from_row_vecs(const std::vector<BitVec>& rows, std::size_t cols);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    bool get(std::size_t r, std::size_t c) const {
        return (bits_[r * wpr_ + c / kWordBits] >> (c % kWordBits)) & 1u;
    }
    void set(std::size_t r, std::size_t c, bool v) {
        Word m = Word(1) << (c % kWordBits);
        Word& w = bits_[r * wpr_ + c / kWordBits];
        if (v) w |= m; else w &= ~m;
    }

    std::span<const Word> row_words(std::size_t r) const { return {&bits_[r * wpr_], wpr_}; }
    std::span<Word> row_words(std::size_t r) { return {&bits_[r * wpr_], wpr_}; }

    BitVec row(std::size_t r) const;
    void set_row(std::size_t r, const BitVec& v);
    void xor_row(std::size_t dst, std::size_t src);       // row dst += row src
    void xor_row(std::size_t dst, const BitVec& v);
    void swap_rows(std::size_t a, std::size_t b);
    void append_row(const BitVec& v);

    std::size_t row_weight(std::size_t r) const;
    std::size_t col_weight(std::size_t c) const;
    std::size_t max_row_weight() const;
    std::size_t max_col_weight() const;
    bool is_zero() const;

    BitMatrix transposed() const;
    BitMatrix mul(const BitMatrix& o) const;              // this * o
    BitVec mul_vec(const BitVec& v) const;                // M v,  v indexed by columns
    BitVec vec_mul(const BitVec& v) const;                // v M,  v indexed by rows

    BitMatrix select_cols(std::span<const std::size_t> cols) const;
    BitMatrix select_rows(std::span<const std::size_t> rows) const;

    bool operator==(const BitMatrix& o) const = default;

    std::string to_string() const;

  private:
    std::size_t rows_ = 0, cols_ = 0, wpr_ = 0;
    std::vector<Word> bits_;
};

BitMatrix hstack(const BitMatrix& a, const BitMatrix& b);
BitMatrix vstack(const BitMatrix& a, const BitMatrix& b);

/// F2 rank via Gaussian elimination.
std::size_t rank(BitMatrix m);

struct Rref {
    BitMatrix mat;                     // reduced row echelon form, zero rows kept
    std::vector<std::size_t> pivots;   // pivot column per nonzero row
};
Rref rref(BitMatrix m);

/// Rows form a basis of { v : m vᵀ = 0 }. Row count = cols(m) − rank(m).
BitMatrix nullspace(const BitMatrix& m);

/// True iff v is an F2 combination of the rows of m.
bool row_space_contains(const BitMatrix& m, const BitVec& v);
/// Variant reusing a precomputed rref of m.
bool row_space_contains(const Rref& r, const BitVec& v);

/// Solves m x = b, x indexed by columns. Empty optional when inconsistent.
std::optional<BitVec> solve(const BitMatrix& m, const BitVec& b);

/// Kronecker product over F2.
BitMatrix kron(const BitMatrix& a, const BitMatrix& b);

BitMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);

/// Full-rank n×n matrix, deterministic for a fixed generator state.
/// Built rejection-free as P·L·U with unit-diagonal triangular factors.
BitMatrix random_invertible(std::size_t n, Rng& rng);

/// ℓ×ℓ circulant; column i holds the coefficients of x^i·g(x) mod (x^ℓ−1).
BitMatrix circulant_lift(std::span<const std::uint8_t> poly, std::size_t ell);

/// Coefficients of gᵀ(x) = g₀ + g_{ℓ−1}x + ⋯ + g₁x^{ℓ−1}.
std::vector<std::uint8_t> ring_transpose(std::span<const std::uint8_t> poly, std::size_t ell);

} // namespace eehm
