#include "eehm/codes.hpp"

#include <sstream>
#include <stdexcept>

namespace eehm {

BitMatrix repetition(std::size_t r) {
    if (r < 2) throw std::invalid_argument("repetition code needs r >= 2");
    BitMatrix h(r - 1, r);
    for (std::size_t i = 0; i + 1 < r; ++i) {
        h.set(i, i, true);
        h.set(i, i + 1, true);
    }
    return h;
}

BitMatrix ring_repetition(std::size_t r) {
    if (r < 2) throw std::invalid_argument("ring repetition needs r >= 2");
    std::vector<std::uint8_t> one_plus_x{1, 1};
    return circulant_lift(one_plus_x, r);
}

CssCode hgp(const BitMatrix& h1, const BitMatrix& h2) {
    std::size_t n1 = h1.cols(), m1 = h1.rows();
    std::size_t n2 = h2.cols(), m2 = h2.rows();
    BitMatrix hx = hstack(kron(h1, BitMatrix::identity(n2)),
                          kron(BitMatrix::identity(m1), h2.transposed()));
    BitMatrix hz = hstack(kron(BitMatrix::identity(n1), h2),
                          kron(h1.transposed(), BitMatrix::identity(m2)));
    (void)m2;
    return CssCode(std::move(hx), std::move(hz));
}

CssCode surface(std::size_t d) {
    if (d < 2) throw std::invalid_argument("surface code needs d >= 2");
    BitMatrix h = repetition(d);
    return hgp(h, h);
}

CssCode toric(std::size_t d) {
    if (d < 2) throw std::invalid_argument("toric code needs d >= 2");
    BitMatrix h = ring_repetition(d);
    return hgp(h, h);
}

CssCode steane() {
    BitMatrix h = BitMatrix::from_rows({
        {0, 0, 0, 1, 1, 1, 1},
        {0, 1, 1, 0, 0, 1, 1},
        {1, 0, 1, 0, 1, 0, 1},
    });
    return CssCode(h, h);
}

CssCode hamming15() {
    BitMatrix h = BitMatrix::from_rows({
        {0, 0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 1},
        {0, 0, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 1, 1, 1},
        {0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1},
        {1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1, 0, 1},
    });
    return CssCode(h, h);
}

BitVec surface_logical_x(std::size_t d) {
    BitVec v(d * d + (d - 1) * (d - 1));
    for (std::size_t j = 0; j < d; ++j) v.set(j, true);
    return v;
}

BitVec toric_logical_x(std::size_t d) {
    BitVec v(2 * d * d);
    for (std::size_t j = 0; j < d; ++j) v.set(j, true);
    return v;
}

Poly Poly::monomial(std::size_t k) {
    Poly p;
    p.coeffs.assign(k + 1, 0);
    p.coeffs[k] = 1;
    return p;
}

Poly poly_add(const Poly& a, const Poly& b) {
    Poly out;
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i) out.coeffs[i] ^= a.coeffs[i];
    for (std::size_t i = 0; i < b.coeffs.size(); ++i) out.coeffs[i] ^= b.coeffs[i];
    return out;
}

Poly poly_mul(const Poly& a, const Poly& b, std::size_t ell) {
    Poly out;
    out.coeffs.assign(ell, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        if (a.coeffs[i])
            for (std::size_t j = 0; j < b.coeffs.size(); ++j)
                if (b.coeffs[j]) out.coeffs[(i + j) % ell] ^= 1;
    return out;
}

PolyMatrix PolyMatrix::identity(std::size_t n) {
    PolyMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Poly::one();
    return m;
}

PolyMatrix PolyMatrix::transposed(std::size_t ell) const {
    PolyMatrix out(cols, rows);
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            out.at(c, r) = Poly{ring_transpose(at(r, c).coeffs, ell)};
    return out;
}

PolyMatrix poly_kron(const PolyMatrix& a, const PolyMatrix& b, std::size_t ell) {
    PolyMatrix out(a.rows * b.rows, a.cols * b.cols);
    for (std::size_t i = 0; i < a.rows; ++i)
        for (std::size_t j = 0; j < a.cols; ++j)
            for (std::size_t k = 0; k < b.rows; ++k)
                for (std::size_t l = 0; l < b.cols; ++l)
                    out.at(i * b.rows + k, j * b.cols + l) = poly_mul(a.at(i, j), b.at(k, l), ell);
    return out;
}

PolyMatrix poly_hstack(const PolyMatrix& a, const PolyMatrix& b) {
    if (a.rows != b.rows) throw std::invalid_argument("poly_hstack row mismatch");
    PolyMatrix out(a.rows, a.cols + b.cols);
    for (std::size_t r = 0; r < a.rows; ++r) {
        for (std::size_t c = 0; c < a.cols; ++c) out.at(r, c) = a.at(r, c);
        for (std::size_t c = 0; c < b.cols; ++c) out.at(r, a.cols + c) = b.at(r, c);
    }
    return out;
}

BitMatrix lift(const PolyMatrix& a, std::size_t ell) {
    BitMatrix out(a.rows * ell, a.cols * ell);
    for (std::size_t r = 0; r < a.rows; ++r)
        for (std::size_t c = 0; c < a.cols; ++c) {
            const Poly& p = a.at(r, c);
            if (p.coeffs.size() > ell) throw std::invalid_argument("entry degree exceeds lift size");
            BitMatrix blk = circulant_lift(p.coeffs, ell);
            for (std::size_t i = 0; i < ell; ++i)
                for (std::size_t j = 0; j < ell; ++j)
                    if (blk.get(i, j)) out.set(r * ell + i, c * ell + j, true);
        }
    return out;
}

CssCode lifted_product(const PolyMatrix& a1, const PolyMatrix& a2, std::size_t ell) {
    PolyMatrix hx_poly = poly_hstack(poly_kron(a1, PolyMatrix::identity(a2.rows), ell),
                                     poly_kron(PolyMatrix::identity(a1.rows), a2, ell));
    PolyMatrix hz_poly = poly_hstack(poly_kron(PolyMatrix::identity(a1.cols), a2.transposed(ell), ell),
                                     poly_kron(a1.transposed(ell), PolyMatrix::identity(a2.cols), ell));
    return CssCode(lift(hx_poly, ell), lift(hz_poly, ell));
}

namespace {

PolyMatrix monomial_matrix(const std::vector<std::vector<int>>& exps) {
    PolyMatrix m(exps.size(), exps[0].size());
    for (std::size_t r = 0; r < exps.size(); ++r)
        for (std::size_t c = 0; c < exps[0].size(); ++c)
            m.at(r, c) = Poly::monomial(static_cast<std::size_t>(exps[r][c]));
    return m;
}

BitMatrix parse_bits(const char* text, std::size_t rows, std::size_t cols) {
    BitMatrix m(rows, cols);
    std::size_t idx = 0;
    for (const char* p = text; *p; ++p) {
        if (*p != '0' && *p != '1') continue;
        if (idx >= rows * cols) throw std::logic_error("fixture bit overflow");
        if (*p == '1') m.set(idx / cols, idx % cols, true);
        ++idx;
    }
    if (idx != rows * cols) throw std::logic_error("fixture bit count mismatch");
    return m;
}

constexpr const char* kHgp1Bits = R"(
0 0 0 1 1 0 0 0 0 0 0 0 0 0 0 0 0 1 0 1
0 1 0 0 0 0 1 0 0 0 0 0 0 0 1 0 0 0 0 1
0 0 0 0 0 1 0 0 0 1 0 0 0 0 0 1 1 0 0 0
0 0 1 0 0 0 1 0 0 0 0 0 0 1 0 0 1 0 0 0
0 0 0 0 0 0 0 0 1 1 0 1 0 0 0 0 0 0 1 0
0 0 0 0 1 0 0 0 0 0 1 0 0 0 1 1 0 0 0 0
0 0 0 0 0 0 0 1 0 1 0 0 1 0 0 0 0 1 0 0
0 1 1 1 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0
0 0 0 0 0 1 0 0 1 0 0 0 1 0 1 0 0 0 0 0
0 0 0 0 0 0 0 1 0 0 1 1 0 0 0 0 1 0 0 0
0 0 0 1 0 1 0 1 0 0 0 0 0 0 0 0 0 0 1 0
1 0 0 0 0 0 0 0 0 0 0 1 0 1 0 0 0 0 0 1
1 0 0 0 1 0 1 0 0 0 0 0 0 0 0 0 0 0 1 0
1 0 1 0 0 0 0 0 1 0 0 0 0 0 0 1 0 0 0 0
0 1 0 0 0 0 0 0 0 0 1 0 0 1 0 0 0 1 0 0
)";

constexpr const char* kHgp2Bits = R"(
0 1 0 0 0 0 0 0 0 0 0 0 0 0 1 1 0 0 1 0 0 0 0 0
0 0 0 0 0 0 1 1 0 0 0 0 0 0 0 1 0 0 0 0 0 0 1 0
0 0 0 1 0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 1 0 0 0 1
0 0 1 0 0 0 0 0 0 0 0 1 0 1 0 0 0 0 0 0 0 0 0 1
0 0 0 0 0 0 0 0 0 1 0 1 0 0 0 0 1 0 0 1 0 0 0 0
0 0 0 0 0 1 0 0 1 0 0 0 0 0 0 0 0 1 0 0 0 0 1 0
1 1 0 0 0 0 0 1 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0
0 0 0 0 0 1 0 0 0 0 0 0 1 1 1 0 0 0 0 0 0 0 0 0
1 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0 1 0 0 0 0 1
0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 1 1 0
0 1 0 0 1 0 1 0 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 1 0 0 0 1 0 0 0 0 0 0 1 0 0 1 0 0 0 0 0 0
0 0 0 0 0 0 0 0 1 0 1 0 0 0 0 0 0 0 0 0 1 1 0 0
1 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 1 0 0 0
0 0 1 0 0 1 1 0 0 0 1 0 0 0 0 0 0 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 1 0 0 0 1 0 0 0 0 1 0 0 1 0 0
0 0 1 0 0 0 0 0 0 0 0 0 1 0 0 1 0 1 0 0 0 0 0 0
0 0 0 1 0 0 0 0 0 1 0 0 1 0 0 0 0 0 0 0 1 0 0 0
)";

} // namespace

PolyMatrix lp1_base() {
    return monomial_matrix({{0, 0, 0, 0}, {0, 1, 2, 5}, {0, 6, 3, 1}});
}

PolyMatrix lp2_base() {
    return monomial_matrix({{0, 0, 0, 0}, {0, 1, 6, 7}, {0, 4, 5, 2}});
}

const BitMatrix& hgp1_pcm() {
    static const BitMatrix m = parse_bits(kHgp1Bits, 15, 20);
    return m;
}

const BitMatrix& hgp2_pcm() {
    static const BitMatrix m = parse_bits(kHgp2Bits, 18, 24);
    return m;
}

CssCode lp1() {
    PolyMatrix a = lp1_base();
    return lifted_product(a, a.transposed(7), 7);
}

CssCode lp2() {
    PolyMatrix a = lp2_base();
    return lifted_product(a, a.transposed(9), 9);
}

CssCode hgp1() { return hgp(hgp1_pcm(), hgp1_pcm()); }

CssCode hgp2() { return hgp(hgp2_pcm(), hgp2_pcm()); }

CssCode fixture_code(FixtureCode which) {
    switch (which) {
        case FixtureCode::LP1: return lp1();
        case FixtureCode::LP2: return lp2();
        case FixtureCode::HGP1: return hgp1();
        case FixtureCode::HGP2: return hgp2();
    }
    throw std::logic_error("unknown fixture");
}

std::string fixture_name(FixtureCode which) {
    switch (which) {
        case FixtureCode::LP1: return "LP1";
        case FixtureCode::LP2: return "LP2";
        case FixtureCode::HGP1: return "HGP1";
        case FixtureCode::HGP2: return "HGP2";
    }
    throw std::logic_error("unknown fixture");
}

std::string fixture_operator(FixtureCode which) {
    switch (which) {
        case FixtureCode::LP1:
            return "X30 X37 X38 X39 X44 X45 X47 X51 X53 X54";
        case FixtureCode::LP2:
            return "X41 X42 X53 X55 X56 X60 X62 X63 X64 X65 X68 X72";
        case FixtureCode::HGP1:
            return "X282 X286 X288 X290 X292 X293 X298 X300";
        case FixtureCode::HGP2:
            return "X217 X219 X220 X222 X224 X225 X230 X232 X235 X237";
    }
    throw std::logic_error("unknown fixture");
}

std::uint64_t matrix_checksum(const BitMatrix& m) {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    mix(m.rows());
    mix(m.cols());
    for (std::size_t r = 0; r < m.rows(); ++r)
        for (std::size_t c = 0; c < m.cols(); ++c) {
            h ^= m.get(r, c) ? 1u : 0u;
            h *= 1099511628211ull;
        }
    return h;
}

} // namespace eehm
