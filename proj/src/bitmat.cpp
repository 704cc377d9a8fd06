#include "eehm/bitmat.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <stdexcept>

namespace eehm {

BitVec BitVec::from_indices(std::size_t n, std::span<const std::size_t> ones) {
    BitVec v(n);
    for (std::size_t i : ones) {
        if (i >= n) throw std::invalid_argument("BitVec index out of range");
        v.set(i, true);
    }
    return v;
}

BitVec BitVec::from_bits(std::initializer_list<int> bits) {
    BitVec v(bits.size());
    std::size_t i = 0;
    for (int b : bits) v.set(i++, b != 0);
    return v;
}

BitVec& BitVec::operator^=(const BitVec& o) {
    if (n_ != o.n_) throw std::invalid_argument("BitVec size mismatch");
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
    return *this;
}

std::size_t BitVec::weight() const {
    std::size_t c = 0;
    for (Word w : w_) c += std::popcount(w);
    return c;
}

bool BitVec::any() const {
    for (Word w : w_) if (w) return true;
    return false;
}

std::vector<std::size_t> BitVec::ones() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < n_; ++i) if (get(i)) out.push_back(i);
    return out;
}

bool BitVec::dot(const BitVec& o) const {
    if (n_ != o.n_) throw std::invalid_argument("BitVec size mismatch");
    Word acc = 0;
    for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & o.w_[i];
    return std::popcount(acc) & 1u;
}

std::string BitVec::to_string() const {
    std::string s;
    s.reserve(n_);
    for (std::size_t i = 0; i < n_; ++i) s.push_back(get(i) ? '1' : '0');
    return s;
}

BitMatrix BitMatrix::identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<std::vector<int>>& rows) {
    std::size_t r = rows.size();
    std::size_t c = r ? rows[0].size() : 0;
    BitMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i) {
        if (rows[i].size() != c) throw std::invalid_argument("ragged row list");
        for (std::size_t j = 0; j < c; ++j) m.set(i, j, rows[i][j] != 0);
    }
    return m;
}

BitMatrix BitMatrix::from_row_vecs(const std::vector<BitVec>& rows, std::size_t cols) {
    BitMatrix m(rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
    return m;
}

BitVec BitMatrix::row(std::size_t r) const {
    BitVec v(cols_);
    std::copy_n(&bits_[r * wpr_], wpr_, v.words().data());
    return v;
}

void BitMatrix::set_row(std::size_t r, const BitVec& v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    std::copy_n(v.words().data(), wpr_, &bits_[r * wpr_]);
}

void BitMatrix::xor_row(std::size_t dst, std::size_t src) {
    Word* d = &bits_[dst * wpr_];
    const Word* s = &bits_[src * wpr_];
    for (std::size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
}

void BitMatrix::xor_row(std::size_t dst, const BitVec& v) {
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    Word* d = &bits_[dst * wpr_];
    const Word* s = v.words().data();
    for (std::size_t i = 0; i < wpr_; ++i) d[i] ^= s[i];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap_ranges(&bits_[a * wpr_], &bits_[a * wpr_] + wpr_, &bits_[b * wpr_]);
}

void BitMatrix::append_row(const BitVec& v) {
    if (cols_ == 0 && rows_ == 0) { cols_ = v.size(); wpr_ = words_for(cols_); }
    if (v.size() != cols_) throw std::invalid_argument("row length mismatch");
    bits_.resize((rows_ + 1) * wpr_, 0);
    std::copy_n(v.words().data(), wpr_, &bits_[rows_ * wpr_]);
    ++rows_;
}

std::size_t BitMatrix::row_weight(std::size_t r) const {
    std::size_t c = 0;
    for (Word w : row_words(r)) c += std::popcount(w);
    return c;
}

std::size_t BitMatrix::col_weight(std::size_t c) const {
    std::size_t n = 0;
    for (std::size_t r = 0; r < rows_; ++r) n += get(r, c);
    return n;
}

std::size_t BitMatrix::max_row_weight() const {
    std::size_t m = 0;
    for (std::size_t r = 0; r < rows_; ++r) m = std::max(m, row_weight(r));
    return m;
}

std::size_t BitMatrix::max_col_weight() const {
    std::size_t m = 0;
    for (std::size_t c = 0; c < cols_; ++c) m = std::max(m, col_weight(c));
    return m;
}

bool BitMatrix::is_zero() const {
    for (Word w : bits_) if (w) return false;
    return true;
}

BitMatrix BitMatrix::transposed() const {
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t w = 0; w < wpr_; ++w) {
            Word x = bits_[r * wpr_ + w];
            while (x) {
                std::size_t b = std::countr_zero(x);
                t.set(w * kWordBits + b, r, true);
                x &= x - 1;
            }
        }
    return t;
}

BitMatrix BitMatrix::mul(const BitMatrix& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    BitMatrix out(rows_, o.cols_);
    for (std::size_t r = 0; r < rows_; ++r) {
        Word* dst = out.row_words(r).data();
        for (std::size_t w = 0; w < wpr_; ++w) {
            Word x = bits_[r * wpr_ + w];
            while (x) {
                std::size_t k = w * kWordBits + std::countr_zero(x);
                const Word* src = o.row_words(k).data();
                for (std::size_t i = 0; i < o.wpr_; ++i) dst[i] ^= src[i];
                x &= x - 1;
            }
        }
    }
    return out;
}

BitVec BitMatrix::mul_vec(const BitVec& v) const {
    if (v.size() != cols_) throw std::invalid_argument("mul_vec length mismatch");
    BitVec out(rows_);
    const Word* vw = v.words().data();
    for (std::size_t r = 0; r < rows_; ++r) {
        Word acc = 0;
        const Word* rw = &bits_[r * wpr_];
        for (std::size_t i = 0; i < wpr_; ++i) acc ^= rw[i] & vw[i];
        if (std::popcount(acc) & 1u) out.set(r, true);
    }
    return out;
}

BitVec BitMatrix::vec_mul(const BitVec& v) const {
    if (v.size() != rows_) throw std::invalid_argument("vec_mul length mismatch");
    BitVec out(cols_);
    Word* ow = out.words().data();
    for (std::size_t r = 0; r < rows_; ++r)
        if (v.get(r)) {
            const Word* rw = &bits_[r * wpr_];
            for (std::size_t i = 0; i < wpr_; ++i) ow[i] ^= rw[i];
        }
    return out;
}

BitMatrix BitMatrix::select_cols(std::span<const std::size_t> cols) const {
    BitMatrix out(rows_, cols.size());
    for (std::size_t r = 0; r < rows_; ++r)
        for (std::size_t j = 0; j < cols.size(); ++j)
            if (get(r, cols[j])) out.set(r, j, true);
    return out;
}

BitMatrix BitMatrix::select_rows(std::span<const std::size_t> rows) const {
    BitMatrix out(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
        out.set_row(i, row(rows[i]));
    return out;
}

std::string BitMatrix::to_string() const {
    std::string s;
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) s.push_back(get(r, c) ? '1' : '0');
        s.push_back('\n');
    }
    return s;
}

BitMatrix hstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.rows() != b.rows()) throw std::invalid_argument("hstack row mismatch");
    BitMatrix out(a.rows(), a.cols() + b.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c) if (a.get(r, c)) out.set(r, c, true);
        for (std::size_t c = 0; c < b.cols(); ++c) if (b.get(r, c)) out.set(r, a.cols() + c, true);
    }
    return out;
}

BitMatrix vstack(const BitMatrix& a, const BitMatrix& b) {
    if (a.cols() != b.cols() && a.rows() != 0 && b.rows() != 0)
        throw std::invalid_argument("vstack col mismatch");
    std::size_t cols = a.rows() ? a.cols() : b.cols();
    BitMatrix out(a.rows() + b.rows(), cols);
    for (std::size_t r = 0; r < a.rows(); ++r) out.set_row(r, a.row(r));
    for (std::size_t r = 0; r < b.rows(); ++r) out.set_row(a.rows() + r, b.row(r));
    return out;
}

std::size_t rank(BitMatrix m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && !m.get(p, c)) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(p, r);
        for (std::size_t i = p + 1; i < m.rows(); ++i)
            if (m.get(i, c)) m.xor_row(i, r);
        ++r;
    }
    return r;
}

Rref rref(BitMatrix m) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t p = r;
        while (p < m.rows() && !m.get(p, c)) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(p, r);
        for (std::size_t i = 0; i < m.rows(); ++i)
            if (i != r && m.get(i, c)) m.xor_row(i, r);
        pivots.push_back(c);
        ++r;
    }
    return {std::move(m), std::move(pivots)};
}

BitMatrix nullspace(const BitMatrix& m) {
    Rref rr = rref(m);
    std::size_t n = m.cols();
    std::vector<bool> is_pivot(n, false);
    for (std::size_t c : rr.pivots) is_pivot[c] = true;

    BitMatrix basis(n - rr.pivots.size(), n);
    std::size_t k = 0;
    for (std::size_t f = 0; f < n; ++f) {
        if (is_pivot[f]) continue;
        basis.set(k, f, true);
        for (std::size_t i = 0; i < rr.pivots.size(); ++i)
            if (rr.mat.get(i, f)) basis.set(k, rr.pivots[i], true);
        ++k;
    }
    return basis;
}

bool row_space_contains(const Rref& r, const BitVec& v) {
    if (v.size() != r.mat.cols()) throw std::invalid_argument("row_space_contains length mismatch");
    BitVec w = v;
    for (std::size_t i = 0; i < r.pivots.size(); ++i)
        if (w.get(r.pivots[i])) w ^= r.mat.row(i);
    return !w.any();
}

bool row_space_contains(const BitMatrix& m, const BitVec& v) {
    return row_space_contains(rref(m), v);
}

std::optional<BitVec> solve(const BitMatrix& m, const BitVec& b) {
    if (b.size() != m.rows()) throw std::invalid_argument("solve length mismatch");
    BitMatrix aug = hstack(m, BitMatrix::from_row_vecs({b}, b.size()).transposed());
    Rref rr = rref(std::move(aug));
    BitVec x(m.cols());
    for (std::size_t i = 0; i < rr.pivots.size(); ++i) {
        if (rr.pivots[i] == m.cols()) return std::nullopt;   // pivot in augmented column
        if (rr.mat.get(i, m.cols())) x.set(rr.pivots[i], true);
    }
    return x;
}

BitMatrix kron(const BitMatrix& a, const BitMatrix& b) {
    BitMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (!a.get(i, j)) continue;
            for (std::size_t k = 0; k < b.rows(); ++k)
                for (std::size_t l = 0; l < b.cols(); ++l)
                    if (b.get(k, l)) out.set(i * b.rows() + k, j * b.cols() + l, true);
        }
    return out;
}

BitMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
    BitMatrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        auto w = m.row_words(r);
        for (auto& word : w) word = rng();
        // clear slack bits past the last column
        std::size_t slack = w.size() * kWordBits - cols;
        if (slack && !w.empty()) w.back() &= ~Word(0) >> slack;
    }
    return m;
}

BitMatrix random_invertible(std::size_t n, Rng& rng) {
    if (n == 0) throw std::invalid_argument("random_invertible needs n >= 1");
    BitMatrix l = BitMatrix::identity(n);
    BitMatrix u = BitMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) {
            if (rng() & 1u) l.set(i, j, true);
            if (rng() & 1u) u.set(j, i, true);
        }
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    for (std::size_t i = n; i > 1; --i)
        std::swap(perm[i - 1], perm[rng() % i]);
    return l.select_rows(perm).mul(u);
}

BitMatrix circulant_lift(std::span<const std::uint8_t> poly, std::size_t ell) {
    if (poly.size() > ell) throw std::invalid_argument("polynomial degree must be < ell");
    BitMatrix m(ell, ell);
    for (std::size_t r = 0; r < ell; ++r)
        for (std::size_t c = 0; c < ell; ++c) {
            std::size_t k = (r + ell - c) % ell;
            if (k < poly.size() && poly[k]) m.set(r, c, true);
        }
    return m;
}

std::vector<std::uint8_t> ring_transpose(std::span<const std::uint8_t> poly, std::size_t ell) {
    if (poly.size() > ell) throw std::invalid_argument("polynomial degree must be < ell");
    std::vector<std::uint8_t> out(ell, 0);
    for (std::size_t k = 0; k < poly.size(); ++k)
        if (poly[k]) out[(ell - k) % ell] = 1;
    return out;
}

} // namespace eehm
