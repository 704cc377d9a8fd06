#include <doctest.h>

#include <stdexcept>

#include "eehm/chain.hpp"
#include "eehm/codes.hpp"

using namespace eehm;

namespace {

// Steane measurement ancilla data for the X1X2X3 logical:
// two edges {v1,v2} and {v0,v2} on three vertices.
BitMatrix steane_d1() { return BitMatrix::from_rows({{0, 1, 1}, {1, 0, 1}}); }

BitMatrix steane_f1() {
    BitMatrix f1(7, 3);
    for (std::size_t j = 0; j < 3; ++j) f1.set(j, j, true);
    return f1;
}

BitMatrix steane_f0() { return BitMatrix::from_rows({{0, 0}, {1, 0}, {0, 1}}); }

ChainComplex ancilla_complex(const BitMatrix& d1, const BitMatrix& d0) {
    return ChainComplex(-1, {d0.rows(), d1.rows(), d1.cols()}, {d0, d1});
}

ChainMap restriction_chain_map(const CssCode& code, const BitMatrix& d1, const BitMatrix& d0,
                               const BitMatrix& f1, const BitMatrix& f0) {
    return ChainMap(ancilla_complex(d1, d0), css_to_chain(code), 0, {f0, f1});
}

// Hamming-15 restriction data for X3 X4 X5 X12 X14 (1-based), no expansion.
struct HammingFixture {
    CssCode code = hamming15();
    BitMatrix d1 = BitMatrix::from_rows(
        {{0, 0, 0, 1, 1}, {0, 1, 1, 1, 1}, {1, 0, 0, 0, 1}, {1, 0, 1, 0, 0}});
    BitMatrix f0 = BitMatrix::identity(4);
    BitMatrix f1 = [] {
        BitMatrix m(15, 5);
        const std::size_t q[5] = {2, 3, 4, 11, 13};
        for (std::size_t j = 0; j < 5; ++j) m.set(q[j], j, true);
        return m;
    }();
};

} // namespace

TEST_CASE("css_to_chain") {
    ChainComplex c = css_to_chain(steane());
    CHECK(c.dim(2) == 3);
    CHECK(c.dim(1) == 7);
    CHECK(c.dim(0) == 3);
    CHECK(c.dim(5) == 0);

    CssCode empty(BitMatrix(0, 5), BitMatrix(0, 5));
    ChainComplex e = css_to_chain(empty);
    CHECK(e.dim(2) == 0);
    CHECK(e.dim(1) == 5);
    CHECK(e.dim(0) == 0);

    CHECK(chain_to_css(c, 1) == steane());
}

TEST_CASE("chain_to_css on a classical chain") {
    // F2^n → F2^{n−k} at top grade: a classical code, vacuously a complex
    BitMatrix h = repetition(4);
    ChainComplex chain(0, {3, 4}, {h});
    CssCode as_css = chain_to_css(chain, 1);
    CHECK(as_css.hx.rows() == 0);
    CHECK(as_css.hz == h);
}

TEST_CASE("invalid complexes and maps are rejected") {
    BitMatrix a = BitMatrix::from_rows({{1, 0}, {0, 1}});
    CHECK_THROWS_AS(ChainComplex(0, {2, 2, 2}, {a, a}), std::invalid_argument);

    // non-commuting square
    ChainComplex line(0, {1, 2}, {BitMatrix::from_rows({{1, 1}})});
    ChainComplex line2(0, {1, 2}, {BitMatrix::from_rows({{1, 0}})});
    BitMatrix f1 = BitMatrix::identity(2);
    BitMatrix f0 = BitMatrix::identity(1);
    CHECK_THROWS_AS(ChainMap(line, line2, 0, {f0, f1}), std::invalid_argument);
}

TEST_CASE("homology dimensions") {
    CHECK(homology_dim(css_to_chain(steane()), 1) == 1);

    // an exact sequence has trivial homology at interior grades
    Rng rng(21);
    for (int t = 0; t < 10; ++t) {
        BitMatrix m = random_matrix(4, 7, rng);
        Rref r = rref(m);
        std::vector<std::size_t> idx(r.pivots.size());
        for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
        BitMatrix surj = r.mat.select_rows(idx);
        BitMatrix incl = nullspace(m).transposed();
        ChainComplex exact(0, {surj.rows(), m.cols(), incl.cols()}, {surj, incl});
        CHECK(homology_dim(exact, 1) == 0);
        // alternating-sum identity for the exact sequence
        long long alt = static_cast<long long>(exact.dim(0)) - static_cast<long long>(exact.dim(1)) +
                        static_cast<long long>(exact.dim(2));
        CHECK(alt == 0);
    }
}

TEST_CASE("mapping cone against a zero ancilla") {
    ChainComplex c = css_to_chain(steane());
    ChainComplex zero(0, {0}, {});
    ChainMap f(zero, c, 0, {});
    CHECK(mapping_cone(f) == c);
}

TEST_CASE("mapping cone reproduces the Steane merged code") {
    CssCode code = steane();
    ChainMap f = restriction_chain_map(code, steane_d1(), BitMatrix(0, 2), steane_f1(), steane_f0());
    ChainComplex cone = mapping_cone(f);
    CssCode merged = chain_to_css(cone, 1);

    BitMatrix expected_hx = BitMatrix::from_rows({
        {0, 0, 0, 1, 1, 1, 1, 0, 0},
        {0, 1, 1, 0, 0, 1, 1, 0, 0},
        {1, 0, 1, 0, 1, 0, 1, 0, 0},
        {1, 0, 0, 0, 0, 0, 0, 0, 1},
        {0, 1, 0, 0, 0, 0, 0, 1, 0},
        {0, 0, 1, 0, 0, 0, 0, 1, 1},
    });
    BitMatrix expected_hz = BitMatrix::from_rows({
        {0, 0, 0, 1, 1, 1, 1, 0, 0},
        {0, 1, 1, 0, 0, 1, 1, 1, 0},
        {1, 0, 1, 0, 1, 0, 1, 0, 1},
    });
    CHECK(merged.hx == expected_hx);
    CHECK(merged.hz == expected_hz);
    CHECK(params(merged) == std::pair<std::size_t, std::size_t>{9, 0});

    auto [kt, rt] = logical_gauge_counts(code, ancilla_complex(steane_d1(), BitMatrix(0, 2)), f);
    CHECK(kt == 0);
    CHECK(rt == 0);
}

TEST_CASE("mapping cone reproduces the Hamming no-expansion merged code") {
    HammingFixture fx;
    ChainMap f = restriction_chain_map(fx.code, fx.d1, BitMatrix(0, 4), fx.f1, fx.f0);
    CssCode merged = chain_to_css(mapping_cone(f), 1);
    CHECK(params(merged) == std::pair<std::size_t, std::size_t>{19, 6});

    auto [kt, rt] = logical_gauge_counts(fx.code, ancilla_complex(fx.d1, BitMatrix(0, 4)), f);
    CHECK(kt == 6);
    CHECK(rt == 0);
}

TEST_CASE("cone and cylinder satisfy dd = 0; cyl(f) = cone(g)") {
    HammingFixture fx;
    ChainMap f = restriction_chain_map(fx.code, fx.d1, BitMatrix(0, 4), fx.f1, fx.f0);

    ChainComplex cone = mapping_cone(f);          // constructor checks dd = 0
    ChainComplex cyl = mapping_cylinder(f);
    CHECK(cone.dim(1) == 19);
    CHECK(cyl.dim(1) == 19 + 5);

    ChainMap g = cylinder_as_cone_map(f);
    CHECK(mapping_cone(g) == cyl);

    // identity chain maps on random CSS chains give valid cones too
    Rng rng(31);
    for (int t = 0; t < 10; ++t) {
        BitMatrix h = random_matrix(3, 6, rng);
        BitMatrix hxT = nullspace(h).transposed();
        ChainComplex c(0, {h.rows(), h.cols(), hxT.cols()}, {h, hxT});
        ChainMap id(c, c, 0, {BitMatrix::identity(h.rows()), BitMatrix::identity(h.cols()),
                              BitMatrix::identity(hxT.cols())});
        ChainComplex cn = mapping_cone(id);
        ChainComplex cl = mapping_cylinder(id);
        CHECK(mapping_cone(cylinder_as_cone_map(id)) == cl);
        CHECK(homology_dim(cn, 1) == 0);   // cone of the identity is acyclic
    }
}

TEST_CASE("cylinder d0 rows are redundant in the cylinder code") {
    CssCode code = steane();
    // give the ancilla a nontrivial d0 by using the cycle on a triangle graph
    BitMatrix d1 = BitMatrix::from_rows({{1, 1, 0}, {0, 1, 1}, {1, 0, 1}});
    BitMatrix d0 = BitMatrix::from_rows({{1, 1, 1}});
    BitMatrix f1(7, 3);
    for (std::size_t j = 0; j < 3; ++j) f1.set(j, j, true);
    // f0 d1 = hz f1 must hold: hz f1 = hz restricted to {0,1,2}
    BitMatrix target = code.hz.mul(f1);
    // rows of target: (0,0,0), (0,1,1), (1,0,1): expressible over d1 rows
    BitMatrix f0(3, 3);
    f0.set(1, 1, true);              // row 2 = edge {v1,v2}
    f0.set(2, 0, true);              // (1,1,0)
    f0.set(2, 1, true);              // + (0,1,1) = (1,0,1)
    REQUIRE(f0.mul(d1) == target);

    ChainMap f(ancilla_complex(d1, d0), css_to_chain(code), 0, {f0, f1});
    ChainComplex cyl = mapping_cylinder(f);
    CssCode cyl_code = chain_to_css(cyl, 1);
    // rows arising from d0 sit inside the row space of the remaining rows
    std::size_t n_z = code.hz.rows();
    std::vector<std::size_t> others;
    for (std::size_t r = 0; r < cyl_code.hz.rows(); ++r)
        if (r < n_z || r >= n_z + d0.rows()) others.push_back(r);
    BitMatrix rest = cyl_code.hz.select_rows(others);
    for (std::size_t r = n_z; r < n_z + d0.rows(); ++r)
        CHECK(row_space_contains(rest, cyl_code.hz.row(r)));
}

TEST_CASE("lemma 1: ker d1 carries measured stabilizers and logicals") {
    HammingFixture fx;
    BitMatrix k = nullspace(fx.d1);
    REQUIRE(k.rows() == 1);
    Rref hx_r = rref(fx.code.hx);
    std::size_t measured = 0;
    for (std::uint64_t m = 1; m < (1ull << k.rows()); ++m) {
        BitVec v(fx.d1.cols());
        for (std::size_t b = 0; b < k.rows(); ++b)
            if ((m >> b) & 1) v ^= k.row(b);
        BitVec on_code = fx.f1.mul_vec(v);
        CHECK_FALSE(fx.code.hz.mul_vec(on_code).any());   // commutes with Z checks
        ++measured;
    }
    CHECK(measured == (1ull << k.rows()) - 1);
}
