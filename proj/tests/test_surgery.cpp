#include <doctest.h>

#include <stdexcept>

#include "eehm/chain.hpp"
#include "eehm/codes.hpp"
#include "eehm/errors.hpp"
#include "eehm/surgery.hpp"

using namespace eehm;

namespace {

PauliOperator x_logical(const BitVec& v) {
    PauliOperator p = PauliOperator::identity(v.size());
    p.x = v;
    return p;
}

std::vector<std::size_t> seq(std::initializer_list<std::size_t> v) { return v; }

// The deletion-procedure route to the restriction maps: drop the columns of
// [H_Z; I_n] outside the support, then the rows whose H_Z|Q part vanishes.
void check_deletion_route(const CssCode& code, const std::vector<std::size_t>& support,
                          const RestrictionMaps& maps) {
    BitMatrix hq = code.hz.select_cols(support);
    std::vector<std::size_t> keep;
    for (std::size_t r = 0; r < hq.rows(); ++r)
        if (hq.row(r).any()) keep.push_back(r);
    BitMatrix d1 = hq.select_rows(keep);
    CHECK(d1 == maps.d1_star);
    BitMatrix f0t = BitMatrix::identity(code.hz.rows()).select_rows(keep);
    CHECK(f0t.transposed() == maps.f0_star);
    BitMatrix f1 = BitMatrix::identity(code.n()).select_cols(support);
    CHECK(f1 == maps.f1);
}

} // namespace

TEST_CASE("restriction maps") {
    CssCode code = steane();
    RestrictionMaps m = restriction_maps(code, seq({0, 1, 2}), Sector::X);
    CHECK(m.d1_star == BitMatrix::from_rows({{0, 1, 1}, {1, 0, 1}}));
    CHECK(m.nonzero_rows == std::vector<std::size_t>{1, 2});
    CHECK(m.f0_star == BitMatrix::from_rows({{0, 0}, {1, 0}, {0, 1}}));
    check_deletion_route(code, {0, 1, 2}, m);

    // chain-map relation f0* d1* = H_Z f1
    CHECK(m.f0_star.mul(m.d1_star) == code.hz.mul(m.f1));

    CssCode ham = hamming15();
    RestrictionMaps hm = restriction_maps(ham, seq({2, 3, 4, 11, 13}), Sector::X);
    CHECK(hm.d1_star.rows() == 4);
    CHECK(cheeger(Hypergraph(5, hm.d1_star)) == Ratio{1, 2});
    check_deletion_route(ham, {2, 3, 4, 11, 13}, hm);

    CHECK_THROWS_AS((void)restriction_maps(code, seq({2, 1}), Sector::X), std::invalid_argument);
    CHECK_THROWS_AS((void)restriction_maps(code, seq({0, 1}), Sector::X), not_logical_error);
}

TEST_CASE("joint surface-pair restriction is two disjoint paths") {
    CssCode s = surface(3);
    std::size_t n = s.n();
    BitMatrix hx = vstack(hstack(s.hx, BitMatrix(s.hx.rows(), n)),
                          hstack(BitMatrix(s.hx.rows(), n), s.hx));
    BitMatrix hz = vstack(hstack(s.hz, BitMatrix(s.hz.rows(), n)),
                          hstack(BitMatrix(s.hz.rows(), n), s.hz));
    CssCode pair(hx, hz);
    std::vector<std::size_t> support{0, 1, 2, n, n + 1, n + 2};
    RestrictionMaps m = restriction_maps(pair, support, Sector::X);
    REQUIRE(m.d1_star.rows() == 4);
    Hypergraph g(6, m.d1_star);
    CHECK(cheeger(g) == Ratio{0, 1});   // disconnected: two paths
    for (std::size_t e = 0; e < 4; ++e) CHECK(m.d1_star.row_weight(e) == 2);
}

TEST_CASE("algorithm 2") {
    // tree graph: no cycles at all
    BitMatrix tree = Hypergraph::from_edges(4, {{0, 1}, {1, 2}, {2, 3}}).incidence();
    BitMatrix d0 = algorithm2_low_weight_d0(tree, BitMatrix(0, 4), BitMatrix(0, 3), 100, 1);
    CHECK(d0.rows() == 0);

    // abstract expanded 8-cycle: full 3-cycle basis, weight 5 reachable
    Hypergraph ex5 = Hypergraph::cycle(8);
    ex5.add_edge(0, 4);
    ex5.add_edge(2, 6);
    BitMatrix d0b =
        algorithm2_low_weight_d0(ex5.incidence(), BitMatrix(0, 8), BitMatrix(0, 10), 1000, 0);
    REQUIRE(d0b.rows() == 3);
    CHECK(d0b.max_row_weight() == 5);
    for (std::size_t r = 0; r < 3; ++r)
        CHECK_FALSE(ex5.incidence().transposed().mul_vec(d0b.row(r)).any());

    // toric H_Z redundancy removes a cycle from the basis
    CssCode t8 = toric(8);
    RestrictionMaps rm = restriction_maps(t8, toric_logical_x(8).ones(), Sector::X);
    ExpandResult ex = expand_edges(Hypergraph(8, rm.d1_star));
    BitMatrix f0 = hstack(rm.f0_star, BitMatrix(rm.f0_star.rows(), ex.added_edges.size()));
    BitMatrix d0t = algorithm2_low_weight_d0(ex.graph.incidence(), t8.hz, f0, 500, 0);
    BitMatrix full = cycle_basis(ex.graph);
    CHECK(d0t.rows() + 1 == full.rows());   // one cycle already implied by ker H_Zᵀ
}

TEST_CASE("algorithm 3 on the Steane code") {
    CssCode code = steane();
    PauliOperator op = x_logical(BitVec::from_bits({1, 1, 1, 0, 0, 0, 0}));
    MeasurementArtifact art = algorithm3_measure(code, op);

    CHECK(params(art.css()) == std::pair<std::size_t, std::size_t>{9, 0});
    CHECK(art.ancilla_count == 2);
    CHECK(art.k_merged == 0);
    CHECK(art.r_merged == 0);
    CHECK(art.edges_added == 0);
    CHECK(art.cheeger_final == Ratio{1, 1});

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
    CHECK(art.css().hx == expected_hx);
    CHECK(art.css().hz == expected_hz);

    // measurement law: d1 rows have even weight and the new rows sum to (X̄|0)
    BitVec sum(9);
    for (std::size_t r = 0; r < art.css().hx.rows(); ++r) {
        if (art.x_tags[r] == RowTag::new_x) sum ^= art.css().hx.row(r);
    }
    BitVec expect(9);
    for (std::size_t i : op.x.ones()) expect.set(i, true);
    CHECK(sum == expect);

    CHECK_THROWS_AS((void)algorithm3_measure(code, x_logical(BitVec::from_bits({1, 1, 0, 0, 0, 0, 0}))),
                    not_logical_error);
    CHECK_THROWS_AS((void)algorithm3_measure(code, x_logical(code.hx.row(0))), not_logical_error);
}

TEST_CASE("algorithm 3 on the Hamming code restores distance") {
    CssCode code = hamming15();
    BitVec xbar(15);
    for (std::size_t q : {2u, 3u, 4u, 11u, 13u}) xbar.set(q, true);
    MeasurementArtifact art = algorithm3_measure(code, x_logical(xbar));

    CHECK(art.edges_added == 2);
    CHECK(art.cheeger_final >= Ratio{1, 1});
    CHECK(art.k_merged == 6);
    CHECK(art.r_merged == 0);
    CHECK(exact_distance(art.css(), Sector::X) >= 3);
    CHECK(exact_distance(art.css(), Sector::Z) >= 3);

    // chain-map law holds for the artifact blocks
    CHECK(art.f0.mul(art.d1) == code.hz.mul(art.f1));
    // one connected component measures exactly one logical
    CHECK(art.d1.cols() - rank(art.d1) == 1);

    // each new X stabilizer weighs one more than its vertex degree
    Hypergraph g(art.d1.cols(), art.d1);
    std::size_t base = code.hx.rows();
    for (std::size_t v = 0; v < art.d1.cols(); ++v)
        CHECK(art.css().hx.row_weight(base + v) == 1 + g.degree(v));
}

TEST_CASE("no-expansion Hamming merge drops to distance two") {
    CssCode code = hamming15();
    RestrictionMaps m = restriction_maps(code, seq({2, 3, 4, 11, 13}), Sector::X);
    // cone of the bare restriction (r = 1 generalized lattice surgery)
    BitVec xbar(15);
    for (std::size_t q : m.support) xbar.set(q, true);
    MeasurementArtifact art = scheme_generalized_lattice_surgery(code, x_logical(xbar), 1);
    CHECK(params(art.css()) == std::pair<std::size_t, std::size_t>{19, 6});
    CHECK(exact_distance(art.css(), Sector::X) == 2);

    // the printed weight-two logicals: X1X19, X2X18, X8X16 (1-based)
    const CssCode& merged = art.css();
    auto is_logical = [&](std::size_t a, std::size_t b) {
        BitVec v(19);
        v.set(a, true);
        v.set(b, true);
        return !merged.hz.mul_vec(v).any() && !row_space_contains(merged.hx, v);
    };
    CHECK(is_logical(0, 18));
    CHECK(is_logical(1, 17));
    CHECK(is_logical(7, 15));
}

TEST_CASE("forcing the sparsity branch expands hyperedges and cellulates") {
    CssCode code = hamming15();
    BitVec xbar(15);
    for (std::size_t q : {2u, 3u, 4u, 11u, 13u}) xbar.set(q, true);
    PauliOperator op = PauliOperator::identity(15);
    op.x = xbar;

    MeasureOptions opts;
    opts.sparsity_threshold = 0;   // nothing is acceptable: take the fallback path
    opts.max_cycle_weight = 4;
    MeasurementArtifact art = algorithm3_measure(code, op, opts);

    CHECK(art.hyperedges_expanded);
    // the weight-4 restriction row is gone: every edge has weight two
    for (std::size_t e = 0; e < art.d1.rows(); ++e) CHECK(art.d1.row_weight(e) == 2);
    CHECK(art.cheeger_final >= Ratio{1, 1});
    CHECK(art.k_merged == 6);
    CHECK(art.r_merged == 0);
    CHECK(art.f0.mul(art.d1) == code.hz.mul(art.f1));
    CHECK(exact_distance(art.css(), Sector::X) >= 3);
    CHECK(exact_distance(art.css(), Sector::Z) >= 3);

    // the hyperedge covering keeps the restricted rows representable
    RestrictionMaps m = restriction_maps(code, xbar.ones(), Sector::X);
    for (std::size_t r = 0; r < m.d1_star.rows(); ++r) {
        BitVec padded(art.d1.cols());
        padded ^= m.d1_star.row(r);
        CHECK(row_space_contains(art.d1, padded));
    }

    // measurement law: new X rows sum to (X̄ | 0)
    BitVec sum(art.css().n());
    for (std::size_t r = 0; r < art.css().hx.rows(); ++r)
        if (art.x_tags[r] == RowTag::new_x) sum ^= art.css().hx.row(r);
    BitVec want(art.css().n());
    for (std::size_t i : xbar.ones()) want.set(i, true);
    CHECK(sum == want);

    // disabling cellulation leaves the cycle rows as the search produced them
    MeasureOptions plain = opts;
    plain.cellulation = false;
    MeasurementArtifact raw = algorithm3_measure(code, op, plain);
    CHECK(raw.chords_added == 0);
    CHECK(raw.k_merged == 6);
}

TEST_CASE("Z-sector measurement swaps roles") {
    CssCode code = steane();
    PauliOperator op = PauliOperator::identity(7);
    for (std::size_t q : {0u, 1u, 2u}) op.z.set(q, true);
    MeasurementArtifact art = algorithm3_measure(code, op);
    CHECK(art.sector == Sector::Z);
    CHECK(params(art.css()) == std::pair<std::size_t, std::size_t>{9, 0});
    // new Z rows live in hz, cycles (if any) in hx
    CHECK(art.z_tags.back() == RowTag::new_z);

    // asymmetric code: the surface-code Z logical takes the dual path
    CssCode s3 = surface(3);
    PauliOperator zop = PauliOperator::identity(13);
    zop.z = logical_basis(s3, Sector::Z).row(0);
    MeasurementArtifact zart = algorithm3_measure(s3, zop);
    CHECK(zart.sector == Sector::Z);
    CHECK(zart.k_merged == 0);
    CHECK(zart.r_merged == 0);
    CHECK(zart.cheeger_final >= Ratio{1, 1});
    CHECK(exact_distance(zart.css(), Sector::Z) >= exact_distance(s3, Sector::Z));
    CHECK(exact_distance(zart.css(), Sector::X) >= 3);
    // chain-map law in the dual frame: f0 d1 = H_X f1
    CHECK(zart.f0.mul(zart.d1) == s3.hx.mul(zart.f1));
}

TEST_CASE("mixed measurement") {
    // degenerate mixture: a pure X operator delegates to the CSS path
    CssCode code = steane();
    PauliOperator pure = x_logical(BitVec::from_bits({1, 1, 1, 0, 0, 0, 0}));
    MeasurementArtifact a0 = mixed_measure(code, pure);
    CHECK(a0.is_css());

    // Steane Ȳ on qubits 1..3
    PauliOperator ybar = PauliOperator::identity(7);
    for (std::size_t q : {0u, 1u, 2u}) {
        ybar.x.set(q, true);
        ybar.z.set(q, true);
    }
    ybar.phase_i = 3;
    MeasurementArtifact art = mixed_measure(code, ybar);
    CHECK_FALSE(art.is_css());
    const SymplecticCode& sc = art.symplectic();
    CHECK(sc.k() == 0);
    CHECK(art.interpretation_sign == +1);   // Y⊗Y⊗Y = i³·X̄Z̄ exactly

    // the negated operator flips the interpretation sign
    PauliOperator neg = ybar;
    neg.phase_i = 1;   // i·X̄Z̄ = −Ȳ
    CHECK(mixed_measure(code, neg).interpretation_sign == -1);
    PauliOperator skew = ybar;
    skew.phase_i = 2;  // −X̄Z̄ is not Hermitian for odd overlap
    CHECK_THROWS_AS((void)mixed_measure(code, skew), std::invalid_argument);
    // merged rows include single-qubit Y positions
    bool has_y = false;
    for (std::size_t r = 0; r < sc.stab.rows(); ++r)
        for (std::size_t q = 0; q < sc.n(); ++q)
            if (sc.stab.get(r, q) && sc.stab.get(r, sc.n() + q)) has_y = true;
    CHECK(has_y);

    // distance of a mixed merge on toric(2) stays at the input distance
    CssCode t2 = toric(2);
    BitMatrix lx = logical_basis(t2, Sector::X);
    BitMatrix lz = logical_basis(t2, Sector::Z);
    REQUIRE(lx.rows() == 2);
    // pick a Z logical anticommuting with the first X logical
    std::size_t zi = lz.row(0).dot(lx.row(0)) ? 0 : 1;
    PauliOperator mixed = PauliOperator::identity(8);
    mixed.x = lx.row(0);
    mixed.z = lz.row(zi);
    std::size_t overlap = 0;
    for (std::size_t q : mixed.x.ones())
        if (mixed.z.get(q)) ++overlap;
    mixed.phase_i = static_cast<int>(overlap % 4);
    MeasurementArtifact mart = mixed_measure(t2, mixed);
    CHECK(mart.symplectic().k() == 1);
    CHECK(symplectic_exact_distance(mart.symplectic()) >= 2);

    // disjoint supports: the sectors commute, one lowest-weight pair merges
    std::size_t zj = 1 - zi;
    PauliOperator disjoint = PauliOperator::identity(8);
    disjoint.x = lx.row(0);
    disjoint.z = lz.row(zj);
    bool shares = false;
    for (std::size_t q : disjoint.x.ones())
        if (disjoint.z.get(q)) shares = true;
    REQUIRE_FALSE(shares);
    MeasurementArtifact dart = mixed_measure(t2, disjoint);
    CHECK(dart.symplectic().k() == 1);
    CHECK(dart.interpretation_sign == +1);
    // exactly one generator carries both X and Z support
    std::size_t y_rows = 0;
    const SymplecticCode& dc = dart.symplectic();
    for (std::size_t r = 0; r < dc.stab.rows(); ++r) {
        bool has_x = false, has_z = false;
        for (std::size_t q = 0; q < dc.n(); ++q) {
            has_x |= dc.stab.get(r, q);
            has_z |= dc.stab.get(r, dc.n() + q);
        }
        if (has_x && has_z) ++y_rows;
    }
    CHECK(y_rows == 1);
    CHECK(symplectic_exact_distance(dart.symplectic()) >= 2);
}

TEST_CASE("parallel measurement") {
    // two X logicals on two disjoint Steane blocks
    CssCode s = steane();
    BitMatrix hx = vstack(hstack(s.hx, BitMatrix(3, 7)), hstack(BitMatrix(3, 7), s.hx));
    BitMatrix hz = vstack(hstack(s.hz, BitMatrix(3, 7)), hstack(BitMatrix(3, 7), s.hz));
    CssCode pair(hx, hz);
    PauliOperator xa = PauliOperator::identity(14), xb = PauliOperator::identity(14);
    for (std::size_t q : {0u, 1u, 2u}) {
        xa.x.set(q, true);
        xb.x.set(q + 7, true);
    }
    MeasurementArtifact art = parallel_measure(pair, {xa, xb});
    CHECK(art.k_merged == 0);
    CHECK(params(art.css()).second == 0);

    // X then Z on a k = 2 code: the Z support is extended over the ancillas
    CssCode t2 = toric(2);
    BitMatrix lx = logical_basis(t2, Sector::X);
    BitMatrix lz = logical_basis(t2, Sector::Z);
    std::size_t zi = lz.row(0).dot(lx.row(0)) ? 1 : 0;   // commuting partner
    PauliOperator px = PauliOperator::identity(8), pz = PauliOperator::identity(8);
    px.x = lx.row(0);
    pz.z = lz.row(zi);
    REQUIRE(symplectic_commutes(px, pz));
    MeasurementArtifact both = parallel_measure(t2, {px, pz});
    CHECK(both.k_merged == 0);
    CHECK(params(both.css()).second == 0);

    // reverse order: the X operator is the one extended over ancillas
    MeasurementArtifact reversed = parallel_measure(t2, {pz, px});
    CHECK(reversed.k_merged == 0);
    CHECK(params(reversed.css()).second == 0);

    // empty list: identity
    MeasurementArtifact none = parallel_measure(t2, {});
    CHECK(none.css() == t2);
    CHECK(none.k_merged == 2);

    PauliOperator anti = PauliOperator::identity(8);
    anti.z = lz.row(zi == 0 ? 1 : 0);
    if (!symplectic_commutes(px, anti))
        CHECK_THROWS_AS((void)parallel_measure(t2, {px, anti}), std::invalid_argument);
}

TEST_CASE("lattice surgery scheme") {
    CssCode s3 = surface(3);
    BitVec x = surface_logical_x(3);
    MeasurementArtifact art = scheme_lattice_surgery(s3, s3, x, x);
    CHECK(art.ancilla_count == 2);
    CHECK(art.k_merged == 1);   // two logicals merge into one

    // X̄₁X̄₂ is a stabilizer of the merged code
    BitVec prod(2 * s3.n() + 2);
    for (std::size_t i : x.ones()) {
        prod.set(i, true);
        prod.set(s3.n() + i, true);
    }
    CHECK(row_space_contains(art.css().hx, prod));

    // merged Z-distance does not drop
    CHECK(exact_distance(art.css(), Sector::Z) >= exact_distance(s3, Sector::Z));

    // smallest instance: d = 2 surface pair
    CssCode s2 = surface(2);
    MeasurementArtifact small = scheme_lattice_surgery(s2, s2, surface_logical_x(2),
                                                       surface_logical_x(2));
    CHECK(small.ancilla_count == 1);

    // structures that do not match the repetition form are rejected
    CssCode t2 = toric(2);
    BitMatrix lx = logical_basis(t2, Sector::X);
    CHECK_THROWS_AS(
        (void)scheme_lattice_surgery(t2, t2, lx.row(0), lx.row(0)), std::invalid_argument);
}

TEST_CASE("generalized lattice surgery scheme") {
    CssCode t8 = toric(8);
    PauliOperator op = x_logical(toric_logical_x(8));
    MeasurementArtifact gls = scheme_generalized_lattice_surgery(t8, op, 8);
    CHECK(gls.ancilla_count == 120);   // 8·8 + 7·8

    // r = 1 is the bare restriction cone
    MeasurementArtifact r1 = scheme_generalized_lattice_surgery(t8, op, 1);
    CHECK(r1.ancilla_count == 8);
    CHECK(r1.d0.rows() == 0);

    // with d0 dropped to zero, gauges appear (surface-code variant)
    CssCode s3 = surface(3);
    MeasurementArtifact sg = scheme_generalized_lattice_surgery(
        s3, x_logical(surface_logical_x(3)), 3);
    auto [kt, rt] = logical_gauge_counts(s3.hx, s3.hz, sg.f1, sg.f0, sg.d1,
                                         BitMatrix(0, sg.d1.rows()));
    CHECK(kt == 0);
    CHECK(rt > 0);

    // Z-sector variant mirrors the construction: r·n' + (r−1)·w ancillas
    PauliOperator zop = PauliOperator::identity(13);
    zop.z = logical_basis(s3, Sector::Z).row(0);
    std::size_t wz = zop.weight();
    RestrictionMaps zr = restriction_maps(s3, zop.z.ones(), Sector::Z);
    MeasurementArtifact zg = scheme_generalized_lattice_surgery(s3, zop, 3);
    CHECK(zg.sector == Sector::Z);
    CHECK(zg.ancilla_count == 3 * zr.d1_star.rows() + 2 * wz);
    CHECK(zg.k_merged == 0);
}

TEST_CASE("cylinder scheme") {
    CssCode code = steane();
    PauliOperator op = x_logical(BitVec::from_bits({1, 1, 1, 0, 0, 0, 0}));
    MeasurementArtifact art = scheme_cylinder(code, op);
    CHECK_FALSE(art.is_measurement);
    CHECK(art.ancilla_count == 2 + 3);   // A0 and A1 both join the qubits

    BitVec target(art.css().n());
    for (std::size_t i : op.x.ones()) target.set(i, true);
    CHECK_FALSE(row_space_contains(art.css().hx, target));

    CHECK_THROWS_AS((void)scheme_cylinder(code, op, true), std::invalid_argument);
}
