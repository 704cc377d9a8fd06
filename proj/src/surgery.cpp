#include "eehm/surgery.hpp"

#include <algorithm>
#include <stdexcept>

#include "eehm/chain.hpp"
#include "eehm/codes.hpp"
#include "eehm/errors.hpp"

namespace eehm {

const CssCode& MeasurementArtifact::css() const {
    if (!is_css()) throw std::logic_error("artifact holds a symplectic code");
    return std::get<CssCode>(merged);
}

const SymplecticCode& MeasurementArtifact::symplectic() const {
    if (is_css()) throw std::logic_error("artifact holds a CSS code");
    return std::get<SymplecticCode>(merged);
}

namespace {

struct Restriction {
    BitMatrix f1, d1_star, f0_star;
    std::vector<std::size_t> nonzero_rows;
};

Restriction restrict_to_support(const BitMatrix& h_restrict, std::size_t n,
                                std::span<const std::size_t> support) {
    for (std::size_t i = 0; i < support.size(); ++i) {
        if (support[i] >= n) throw std::invalid_argument("support index out of range");
        if (i && support[i] <= support[i - 1])
            throw std::invalid_argument("support must be strictly increasing");
    }
    BitVec ind = BitVec::from_indices(n, support);
    if (h_restrict.mul_vec(ind).any())
        throw not_logical_error("support does not commute with the opposing checks");

    Restriction r;
    r.f1 = BitMatrix(n, support.size());
    for (std::size_t j = 0; j < support.size(); ++j) r.f1.set(support[j], j, true);

    BitMatrix restricted = h_restrict.select_cols(support);
    std::vector<BitVec> rows;
    for (std::size_t i = 0; i < restricted.rows(); ++i)
        if (restricted.row(i).any()) {
            rows.push_back(restricted.row(i));
            r.nonzero_rows.push_back(i);
        }
    r.d1_star = BitMatrix::from_row_vecs(rows, support.size());
    r.f0_star = BitMatrix(h_restrict.rows(), rows.size());
    for (std::size_t j = 0; j < r.nonzero_rows.size(); ++j)
        r.f0_star.set(r.nonzero_rows[j], j, true);
    return r;
}

BitMatrix widen_with_zero_cols(const BitMatrix& m, std::size_t new_cols) {
    return hstack(m, BitMatrix(m.rows(), new_cols - m.cols()));
}

BitMatrix nonzero_rref_rows(Rref r) {
    std::vector<std::size_t> idx(r.pivots.size());
    for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
    return r.mat.select_rows(idx);
}

} // namespace

RestrictionMaps restriction_maps(const CssCode& code, std::span<const std::size_t> support,
                                 Sector sector) {
    const BitMatrix& h_restrict = code.checks(opposite(sector));
    Restriction r = restrict_to_support(h_restrict, code.n(), support);
    return {std::move(r.f1), std::move(r.d1_star), std::move(r.f0_star),
            std::vector<std::size_t>(support.begin(), support.end()), std::move(r.nonzero_rows)};
}

BitMatrix algorithm2_with_forced_cycles(const BitMatrix& d1, const BitMatrix& v_rows,
                                        std::size_t samples, std::uint64_t seed) {
    std::size_t a0 = d1.rows();
    BitMatrix d1t = d1.transposed();
    for (std::size_t r = 0; r < v_rows.rows(); ++r)
        if (d1t.mul_vec(v_rows.row(r)).any())
            throw std::invalid_argument("forced row is not a cycle of the d1 graph");

    BitMatrix v_basis = nonzero_rref_rows(rref(v_rows));
    std::vector<std::size_t> v_pivots;
    for (std::size_t i = 0; i < v_basis.rows(); ++i)
        v_pivots.push_back(v_basis.row(i).ones().front());

    BitMatrix w0 = nullspace(d1t);
    for (std::size_t r = 0; r < w0.rows(); ++r)
        for (std::size_t i = 0; i < v_basis.rows(); ++i)
            if (w0.get(r, v_pivots[i])) w0.xor_row(r, v_basis.row(i));
    BitMatrix w = nonzero_rref_rows(rref(std::move(w0)));

    if (w.rows() == 0) return BitMatrix(0, a0);

    BitMatrix best = w;
    std::size_t best_weight = best.max_row_weight();
    Rng rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
        BitMatrix a = random_invertible(w.rows(), rng);
        BitMatrix cand = a.mul(w);
        if (v_basis.rows() > 0) {
            BitMatrix b = random_matrix(w.rows(), v_basis.rows(), rng);
            BitMatrix mixed = cand;
            BitMatrix bv = b.mul(v_basis);
            for (std::size_t r = 0; r < mixed.rows(); ++r) mixed.xor_row(r, bv.row(r));
            if (mixed.max_row_weight() < best_weight) {
                best = mixed;
                best_weight = best.max_row_weight();
            }
        }
        if (cand.max_row_weight() < best_weight) {
            best = cand;
            best_weight = cand.max_row_weight();
        }
    }
    return best;
}

BitMatrix algorithm2_low_weight_d0(const BitMatrix& d1, const BitMatrix& hz, const BitMatrix& f0,
                                   std::size_t samples, std::uint64_t seed) {
    BitMatrix left_kernel = nullspace(hz.transposed());
    BitMatrix forced(0, d1.rows());
    for (std::size_t r = 0; r < left_kernel.rows(); ++r)
        forced.append_row(f0.vec_mul(left_kernel.row(r)));
    return algorithm2_with_forced_cycles(d1, forced, samples, seed);
}

namespace {

struct EehmCore {
    BitMatrix f1, f0, d1, d0;
    Ratio cheeger_final{0, 1};
    std::vector<Ratio> cheeger_trace;
    std::size_t edges_added = 0;
    std::size_t chords_added = 0;
    bool hyperedges_expanded = false;
};

// Sector-agnostic pipeline: h_same holds the measured operator's own checks,
// h_opp the opposing ones (for an X measurement: hx and hz).
EehmCore build_eehm(const BitMatrix& h_same, const BitMatrix& h_opp, const BitVec& opvec,
                    const MeasureOptions& o) {
    std::vector<std::size_t> support = opvec.ones();
    std::size_t w = support.size();
    if (w > o.cheeger_cap)
        throw resource_limit_error("operator weight exceeds the Cheeger enumeration cap");
    CheegerOptions copts{o.cheeger_cap};

    Restriction base = restrict_to_support(h_opp, opvec.size(), support);
    EehmCore core;

    ExpandResult ex = expand_edges(Hypergraph(w, base.d1_star), copts);
    core.d1 = ex.graph.incidence();
    core.f0 = widen_with_zero_cols(base.f0_star, core.d1.rows());
    core.f1 = base.f1;
    core.edges_added = ex.added_edges.size();
    core.cheeger_trace = ex.cheeger_trace;
    core.d0 = algorithm2_low_weight_d0(core.d1, h_opp, core.f0, o.samples, o.seed);

    std::size_t threshold = o.sparsity_threshold.value_or(
        std::max(h_same.max_row_weight(), h_opp.max_row_weight()) + o.sparsity_slack);
    if (core.d0.max_row_weight() > threshold) {
        // restart from the bare restriction, trading hyperedges for pairs
        HyperedgeExpansionResult hres = expand_hyperedges(Hypergraph(w, base.d1_star), copts);
        core.hyperedges_expanded = true;
        BitMatrix f0h(base.f0_star.rows(), hres.graph.edge_count());
        for (std::size_t e = 0; e < hres.source_edge.size(); ++e)
            for (std::size_t r = 0; r < f0h.rows(); ++r)
                if (base.f0_star.get(r, hres.source_edge[e])) f0h.set(r, e, true);

        ExpandResult ex2 = expand_edges(hres.graph, copts);
        core.d1 = ex2.graph.incidence();
        core.f0 = widen_with_zero_cols(f0h, core.d1.rows());
        core.edges_added = ex2.added_edges.size();
        core.cheeger_trace = ex2.cheeger_trace;
        core.d0 = algorithm2_low_weight_d0(core.d1, h_opp, core.f0, o.samples, o.seed);

        if (o.cellulation) {
            std::size_t bound = o.max_cycle_weight.value_or(threshold);
            CellulationResult cell = cellulate(ex2.graph, core.d0, bound, o.max_degree);
            if (cell.chords_added > 0) {
                core.chords_added = cell.chords_added;
                core.d1 = cell.graph.incidence();
                core.f0 = widen_with_zero_cols(core.f0, core.d1.rows());
                core.d0 = cell.cycles;
            }
        }
    }
    core.cheeger_final = cheeger(Hypergraph(w, core.d1), copts);
    return core;
}

// Merged stabilizer matrices of the cone code, in the measured sector's frame.
std::pair<BitMatrix, BitMatrix> cone_blocks(const BitMatrix& h_same, const BitMatrix& h_opp,
                                            const EehmCore& c) {
    BitMatrix same = vstack(hstack(h_same, BitMatrix(h_same.rows(), c.d1.rows())),
                            hstack(c.f1.transposed(), c.d1.transposed()));
    BitMatrix opp = vstack(hstack(h_opp, c.f0),
                           hstack(BitMatrix(c.d0.rows(), h_opp.cols()), c.d0));
    return {std::move(same), std::move(opp)};
}

void check_is_logical(const BitMatrix& h_same, const BitMatrix& h_opp, const BitVec& v) {
    if (!v.any()) throw not_logical_error("operator acts trivially");
    if (h_opp.mul_vec(v).any())
        throw not_logical_error("operator does not commute with the stabilizers");
    if (row_space_contains(h_same, v))
        throw not_logical_error("operator is a stabilizer, not a logical");
}

Sector pure_sector(const PauliOperator& op) {
    bool has_x = op.x.any(), has_z = op.z.any();
    if (has_x && has_z) throw std::invalid_argument("mixed operator: use mixed_measure");
    if (!has_x && !has_z) throw not_logical_error("identity operator");
    return has_x ? Sector::X : Sector::Z;
}

} // namespace

MeasurementArtifact algorithm3_measure(const CssCode& code, const PauliOperator& op,
                                       const MeasureOptions& opts) {
    Sector sector = pure_sector(op);
    const BitVec& opvec = sector == Sector::X ? op.x : op.z;
    const BitMatrix& h_same = code.checks(sector);
    const BitMatrix& h_opp = code.checks(opposite(sector));
    check_is_logical(h_same, h_opp, opvec);

    EehmCore core = build_eehm(h_same, h_opp, opvec, opts);
    auto [same, opp] = cone_blocks(h_same, h_opp, core);

    MeasurementArtifact art;
    art.sector = sector;
    art.input = code;
    art.f1 = core.f1;
    art.f0 = core.f0;
    art.d1 = core.d1;
    art.d0 = core.d0;
    art.ancilla_count = core.d1.rows();
    art.measured = op;
    art.cheeger_final = core.cheeger_final;
    art.cheeger_trace = core.cheeger_trace;
    art.edges_added = core.edges_added;
    art.chords_added = core.chords_added;
    art.hyperedges_expanded = core.hyperedges_expanded;
    art.seed = opts.seed;
    art.samples = opts.samples;
    art.workers = opts.workers;

    std::size_t w = opvec.weight();
    if (sector == Sector::X) {
        art.merged = CssCode(same, opp);
        art.x_tags.assign(h_same.rows(), RowTag::original_x);
        art.x_tags.insert(art.x_tags.end(), w, RowTag::new_x);
        art.z_tags.assign(h_opp.rows(), RowTag::original_z);
        art.z_tags.insert(art.z_tags.end(), core.d0.rows(), RowTag::new_z_cycle);
    } else {
        art.merged = CssCode(opp, same);
        art.z_tags.assign(h_same.rows(), RowTag::original_z);
        art.z_tags.insert(art.z_tags.end(), w, RowTag::new_z);
        art.x_tags.assign(h_opp.rows(), RowTag::original_x);
        art.x_tags.insert(art.x_tags.end(), core.d0.rows(), RowTag::new_x_cycle);
    }

    // construction guarantees; the counts live in the measured sector's frame
    auto [kt, rt] = logical_gauge_counts(h_same, h_opp, core.f1, core.f0, core.d1, core.d0);
    art.k_merged = kt;
    art.r_merged = rt;
    std::size_t k = params(code).second;
    BitVec extended(opvec.size() + art.ancilla_count);
    for (std::size_t i : opvec.ones()) extended.set(i, true);
    if (kt != k - 1 || rt != 0 || !(core.cheeger_final >= Ratio{1, 1}) ||
        !row_space_contains(same, extended))
        throw std::logic_error("edge expanded measurement construction invariants violated");
    return art;
}

MeasurementArtifact mixed_measure(const CssCode& code, const PauliOperator& op,
                                  const MeasureOptions& opts) {
    if (!op.x.any() || !op.z.any()) return algorithm3_measure(code, op, opts);

    check_is_logical(code.hx, code.hz, op.x);
    check_is_logical(code.hz, code.hx, op.z);

    std::size_t overlap = 0;
    for (std::size_t q : op.x.ones())
        if (op.z.get(q)) ++overlap;
    int phase_rel = ((op.phase_i - static_cast<int>(overlap)) % 4 + 4) % 4;
    if (phase_rel % 2 != 0) throw std::invalid_argument("operator is not Hermitian");
    int interpretation = phase_rel == 0 ? +1 : -1;

    std::size_t n = code.n();
    CheegerOptions copts{opts.cheeger_cap};
    std::vector<std::size_t> qx = op.x.ones(), qz = op.z.ones();
    if (qx.size() > opts.cheeger_cap || qz.size() > opts.cheeger_cap)
        throw resource_limit_error("operator weight exceeds the Cheeger enumeration cap");

    Restriction rx = restrict_to_support(code.hz, n, qx);
    Restriction rz = restrict_to_support(code.hx, n, qz);
    ExpandResult exx = expand_edges(Hypergraph(qx.size(), rx.d1_star), copts);
    ExpandResult exz = expand_edges(Hypergraph(qz.size(), rz.d1_star), copts);
    BitMatrix d1x = exx.graph.incidence();
    BitMatrix d1z = exz.graph.incidence();
    BitMatrix f0x = widen_with_zero_cols(rx.f0_star, d1x.rows());
    BitMatrix f0z = widen_with_zero_cols(rz.f0_star, d1z.rows());
    std::size_t ax = d1x.rows(), az = d1z.rows();

    // anticommuting generator pairs share a single original qubit
    std::vector<std::pair<std::size_t, std::size_t>> merged_pairs;
    for (std::size_t i = 0; i < qx.size(); ++i)
        for (std::size_t j = 0; j < qz.size(); ++j)
            if (qx[i] == qz[j]) merged_pairs.emplace_back(i, j);
    if (merged_pairs.empty()) {
        // commuting first-step matrices: merge one lowest-weight pair
        std::size_t best = SIZE_MAX, bi = 0, bj = 0;
        for (std::size_t i = 0; i < qx.size(); ++i)
            for (std::size_t j = 0; j < qz.size(); ++j) {
                std::size_t wgt = 2 + d1x.col_weight(i) + d1z.col_weight(j);
                if (wgt < best) {
                    best = wgt;
                    bi = i;
                    bj = j;
                }
            }
        merged_pairs.emplace_back(bi, bj);
    }

    // merged vertex layout: [X-only | merged | Z-only]
    std::vector<std::size_t> x_vertex_col(qx.size(), SIZE_MAX), z_vertex_col(qz.size(), SIZE_MAX);
    std::vector<bool> x_merged(qx.size(), false), z_merged(qz.size(), false);
    for (auto [i, j] : merged_pairs) {
        x_merged[i] = true;
        z_merged[j] = true;
    }
    std::size_t col = 0;
    for (std::size_t i = 0; i < qx.size(); ++i)
        if (!x_merged[i]) x_vertex_col[i] = col++;
    for (auto [i, j] : merged_pairs) {
        x_vertex_col[i] = col;
        z_vertex_col[j] = col;
        ++col;
    }
    for (std::size_t j = 0; j < qz.size(); ++j)
        if (!z_merged[j]) z_vertex_col[j] = col++;

    BitMatrix d1m(ax + az, col);
    for (std::size_t e = 0; e < ax; ++e)
        for (std::size_t i = 0; i < qx.size(); ++i)
            if (d1x.get(e, i)) d1m.set(e, x_vertex_col[i], true);
    for (std::size_t e = 0; e < az; ++e)
        for (std::size_t j = 0; j < qz.size(); ++j)
            if (d1z.get(e, j)) d1m.set(ax + e, z_vertex_col[j], true);

    // cycles represented through the original checks' redundancy
    BitMatrix forced(0, ax + az);
    BitMatrix kz = nullspace(code.hz.transposed());
    for (std::size_t r = 0; r < kz.rows(); ++r) {
        BitVec row(ax + az);
        BitVec vx = f0x.vec_mul(kz.row(r));
        for (std::size_t e = 0; e < ax; ++e)
            if (vx.get(e)) row.set(e, true);
        forced.append_row(row);
    }
    BitMatrix kx = nullspace(code.hx.transposed());
    for (std::size_t r = 0; r < kx.rows(); ++r) {
        BitVec row(ax + az);
        BitVec vz = f0z.vec_mul(kx.row(r));
        for (std::size_t e = 0; e < az; ++e)
            if (vz.get(e)) row.set(ax + e, true);
        forced.append_row(row);
    }
    BitMatrix d0m = algorithm2_with_forced_cycles(d1m, forced, opts.samples, opts.seed);

    // assemble the symplectic stabilizer matrix over n + ax + az qubits
    std::size_t nn = n + ax + az;
    auto ancx = [&](std::size_t e) { return n + e; };
    auto ancz = [&](std::size_t e) { return n + ax + e; };
    std::vector<BitVec> rows;

    for (std::size_t r = 0; r < code.hx.rows(); ++r) {   // [H_X 0 f0Z | 0]
        BitVec v(2 * nn);
        for (std::size_t q = 0; q < n; ++q)
            if (code.hx.get(r, q)) v.set(q, true);
        for (std::size_t e = 0; e < az; ++e)
            if (f0z.get(r, e)) v.set(ancz(e), true);
        rows.push_back(v);
    }
    for (std::size_t i = 0; i < qx.size(); ++i) {        // new X generators (merged carry Z too)
        BitVec v(2 * nn);
        v.set(qx[i], true);
        for (std::size_t e = 0; e < ax; ++e)
            if (d1x.get(e, i)) v.set(ancx(e), true);
        if (x_merged[i]) {
            std::size_t j = SIZE_MAX;
            for (auto [pi, pj] : merged_pairs)
                if (pi == i) j = pj;
            v.set(nn + qz[j], true);
            for (std::size_t e = 0; e < az; ++e)
                if (d1z.get(e, j)) v.set(nn + ancz(e), true);
        }
        rows.push_back(v);
    }
    for (std::size_t r = 0; r < code.hz.rows(); ++r) {   // [0 | H_Z f0X 0]
        BitVec v(2 * nn);
        for (std::size_t q = 0; q < n; ++q)
            if (code.hz.get(r, q)) v.set(nn + q, true);
        for (std::size_t e = 0; e < ax; ++e)
            if (f0x.get(r, e)) v.set(nn + ancx(e), true);
        rows.push_back(v);
    }
    for (std::size_t j = 0; j < qz.size(); ++j) {        // unmerged new Z generators
        if (z_merged[j]) continue;
        BitVec v(2 * nn);
        v.set(nn + qz[j], true);
        for (std::size_t e = 0; e < az; ++e)
            if (d1z.get(e, j)) v.set(nn + ancz(e), true);
        rows.push_back(v);
    }
    for (std::size_t r = 0; r < d0m.rows(); ++r) {       // [0 0 d0Z | 0 d0X 0]
        BitVec v(2 * nn);
        for (std::size_t e = 0; e < az; ++e)
            if (d0m.get(r, ax + e)) v.set(ancz(e), true);
        for (std::size_t e = 0; e < ax; ++e)
            if (d0m.get(r, e)) v.set(nn + ancx(e), true);
        rows.push_back(v);
    }

    SymplecticCode sc(BitMatrix::from_row_vecs(rows, 2 * nn), std::vector<int>(rows.size(), +1));

    MeasurementArtifact art;
    art.sector = Sector::X;   // mixed; the X block leads in the layout
    art.input = code;
    art.f1 = rx.f1;
    art.f0 = f0x;
    art.d1 = d1m;
    art.d0 = d0m;
    art.merged = sc;
    art.ancilla_count = ax + az;
    art.measured = op;
    art.interpretation_sign = interpretation;
    art.cheeger_final = std::min(cheeger(exx.graph, copts), cheeger(exz.graph, copts));
    art.edges_added = exx.added_edges.size() + exz.added_edges.size();
    art.seed = opts.seed;
    art.samples = opts.samples;
    art.workers = opts.workers;
    art.k_merged = sc.k();
    if (art.k_merged != params(code).second - 1)
        throw std::logic_error("mixed measurement did not reduce k by one");
    return art;
}

MeasurementArtifact parallel_measure(const CssCode& code, const std::vector<PauliOperator>& ops,
                                     const MeasureOptions& opts) {
    for (std::size_t i = 0; i < ops.size(); ++i)
        for (std::size_t j = i + 1; j < ops.size(); ++j)
            if (!symplectic_commutes(ops[i], ops[j]))
                throw std::invalid_argument("parallel measurement needs commuting operators");

    if (ops.empty()) {
        MeasurementArtifact art;
        art.input = code;
        art.merged = code;
        art.measured = PauliOperator::identity(code.n());
        art.f1 = BitMatrix(code.n(), 0);
        art.f0 = BitMatrix(code.hz.rows(), 0);
        art.k_merged = params(code).second;
        art.cheeger_final = Ratio{1, 1};
        return art;
    }

    CssCode cur = code;
    MeasurementArtifact art;
    for (const PauliOperator& op : ops) {
        Sector sector = pure_sector(op);
        const BitVec& base = sector == Sector::X ? op.x : op.z;
        BitVec vec(cur.n());
        for (std::size_t i : base.ones()) vec.set(i, true);

        // extend the support over ancillas until it commutes again
        const BitMatrix& h_opp = cur.checks(opposite(sector));
        BitVec violation = h_opp.mul_vec(vec);
        if (violation.any()) {
            std::vector<std::size_t> anc_cols;
            for (std::size_t c = code.n(); c < cur.n(); ++c) anc_cols.push_back(c);
            auto fix = solve(h_opp.select_cols(anc_cols), violation);
            if (!fix) throw std::logic_error("support extension system is inconsistent");
            for (std::size_t i : fix->ones()) vec.flip(anc_cols[i]);
        }

        PauliOperator ext = PauliOperator::identity(cur.n());
        (sector == Sector::X ? ext.x : ext.z) = vec;
        art = algorithm3_measure(cur, ext, opts);
        cur = art.css();
    }
    art.input = code;
    art.ancilla_count = cur.n() - code.n();
    return art;
}

MeasurementArtifact scheme_lattice_surgery(const CssCode& code1, const CssCode& code2,
                                           const BitVec& x1, const BitVec& x2) {
    std::size_t d = x1.weight();
    if (d < 2 || x2.weight() != d)
        throw std::invalid_argument("lattice surgery needs equal-weight logicals, weight >= 2");
    check_is_logical(code1.hx, code1.hz, x1);
    check_is_logical(code2.hx, code2.hz, x2);

    std::size_t n1 = code1.n(), n2 = code2.n();
    BitMatrix hx = vstack(hstack(code1.hx, BitMatrix(code1.hx.rows(), n2)),
                          hstack(BitMatrix(code2.hx.rows(), n1), code2.hx));
    BitMatrix hz = vstack(hstack(code1.hz, BitMatrix(code1.hz.rows(), n2)),
                          hstack(BitMatrix(code2.hz.rows(), n1), code2.hz));
    CssCode sum(hx, hz);

    std::vector<std::size_t> q1 = x1.ones(), q2 = x2.ones();
    for (std::size_t& q : q2) q += n1;

    // both restrictions must carry the repetition structure
    BitMatrix rep = repetition(d);
    for (const BitMatrix& h : {code1.hz.select_cols(x1.ones()), code2.hz.select_cols(x2.ones())}) {
        std::vector<std::string> got, want;
        for (std::size_t r = 0; r < h.rows(); ++r)
            if (h.row(r).any()) got.push_back(h.row(r).to_string());
        for (std::size_t r = 0; r < rep.rows(); ++r) want.push_back(rep.row(r).to_string());
        std::sort(got.begin(), got.end());
        std::sort(want.begin(), want.end());
        if (got != want)
            throw std::invalid_argument("restriction does not match the repetition structure");
    }

    BitMatrix f1(sum.n(), d);
    for (std::size_t j = 0; j < d; ++j) {
        f1.set(q1[j], j, true);
        f1.set(q2[j], j, true);
    }
    BitMatrix f0(hz.rows(), d - 1);
    for (std::size_t i = 0; i < hz.rows(); ++i)
        for (std::size_t j = 0; j + 1 < d; ++j)
            if ((hz.get(i, q1[j]) && hz.get(i, q1[j + 1])) ||
                (hz.get(i, q2[j]) && hz.get(i, q2[j + 1])))
                f0.set(i, j, true);
    if (!(f0.mul(rep) == hz.mul(f1)))
        throw std::invalid_argument("lattice surgery chain-map structure mismatch");

    EehmCore core;
    core.f1 = f1;
    core.f0 = f0;
    core.d1 = rep;
    core.d0 = BitMatrix(0, d - 1);
    auto [same, opp] = cone_blocks(hx, hz, core);

    MeasurementArtifact art;
    art.sector = Sector::X;
    art.input = sum;
    art.f1 = core.f1;
    art.f0 = core.f0;
    art.d1 = core.d1;
    art.d0 = core.d0;
    art.merged = CssCode(same, opp);
    art.ancilla_count = d - 1;
    art.measured = PauliOperator::identity(sum.n());
    for (std::size_t j = 0; j < d; ++j) {
        art.measured.x.set(q1[j], true);
        art.measured.x.set(q2[j], true);
    }
    art.x_tags.assign(hx.rows(), RowTag::original_x);
    art.x_tags.insert(art.x_tags.end(), d, RowTag::new_x);
    art.z_tags.assign(hz.rows(), RowTag::original_z);
    auto [kt, rt] = logical_gauge_counts(hx, hz, core.f1, core.f0, core.d1, core.d0);
    art.k_merged = kt;
    art.r_merged = rt;

    BitVec extended(sum.n() + d - 1);
    for (std::size_t i : art.measured.x.ones()) extended.set(i, true);
    if (!row_space_contains(same, extended))
        throw std::logic_error("merged lattice surgery code does not contain the product logical");
    return art;
}

MeasurementArtifact scheme_generalized_lattice_surgery(const CssCode& code,
                                                       const PauliOperator& op, std::size_t r) {
    if (r < 1) throw std::invalid_argument("generalized lattice surgery needs r >= 1");
    Sector sector = pure_sector(op);
    const BitVec& opvec = sector == Sector::X ? op.x : op.z;
    const BitMatrix& h_same = code.checks(sector);
    const BitMatrix& h_opp = code.checks(opposite(sector));
    check_is_logical(h_same, h_opp, opvec);

    std::vector<std::size_t> support = opvec.ones();
    std::size_t w = support.size();
    Restriction base = restrict_to_support(h_opp, code.n(), support);
    std::size_t nzp = base.d1_star.rows();

    EehmCore core;
    if (r == 1) {
        core.d1 = base.d1_star;
        core.d0 = BitMatrix(0, nzp);
        core.f1 = base.f1;
        core.f0 = base.f0_star;
    } else {
        BitMatrix hr = repetition(r);
        core.d1 = vstack(kron(BitMatrix::identity(r), base.d1_star),
                         kron(hr, BitMatrix::identity(w)));
        core.d0 = hstack(kron(hr, BitMatrix::identity(nzp)),
                         kron(BitMatrix::identity(r - 1), base.d1_star));
        core.f1 = hstack(base.f1, BitMatrix(code.n(), (r - 1) * w));
        core.f0 = widen_with_zero_cols(base.f0_star, core.d1.rows());
    }

    auto [same, opp] = cone_blocks(h_same, h_opp, core);
    MeasurementArtifact art;
    art.sector = sector;
    art.input = code;
    art.f1 = core.f1;
    art.f0 = core.f0;
    art.d1 = core.d1;
    art.d0 = core.d0;
    art.merged = sector == Sector::X ? CssCode(same, opp) : CssCode(opp, same);
    art.ancilla_count = core.d1.rows();
    art.measured = op;
    auto [kt, rt] = logical_gauge_counts(h_same, h_opp, core.f1, core.f0, core.d1, core.d0);
    art.k_merged = kt;
    art.r_merged = rt;
    return art;
}

MeasurementArtifact scheme_cylinder(const CssCode& code, const PauliOperator& op,
                                    bool all_ones_d2) {
    if (all_ones_d2)
        throw std::invalid_argument(
            "the all-ones d2 has the same weight as the measured logical; not useful");
    Sector sector = pure_sector(op);
    const BitVec& opvec = sector == Sector::X ? op.x : op.z;
    const BitMatrix& h_same = code.checks(sector);
    const BitMatrix& h_opp = code.checks(opposite(sector));
    check_is_logical(h_same, h_opp, opvec);

    std::vector<std::size_t> support = opvec.ones();
    std::size_t w = support.size();
    Restriction base = restrict_to_support(h_opp, code.n(), support);
    std::size_t nzp = base.d1_star.rows();
    if (base.d1_star.cols() - rank(base.d1_star) != 1)
        throw std::invalid_argument("cylinder scheme expects dim ker d1 = 1");

    // qubits: C1 ⊕ A0 ⊕ A1, with d2 = 0
    BitMatrix same = vstack(
        hstack(hstack(h_same, BitMatrix(h_same.rows(), nzp)), BitMatrix(h_same.rows(), w)),
        hstack(hstack(base.f1.transposed(), base.d1_star.transposed()), BitMatrix::identity(w)));
    BitMatrix opp = vstack(
        hstack(hstack(h_opp, base.f0_star), BitMatrix(h_opp.rows(), w)),
        hstack(hstack(BitMatrix(nzp, h_opp.cols()), BitMatrix::identity(nzp)), base.d1_star));

    MeasurementArtifact art;
    art.sector = sector;
    art.input = code;
    art.f1 = base.f1;
    art.f0 = base.f0_star;
    art.d1 = base.d1_star;
    art.d0 = BitMatrix(0, nzp);
    art.merged = sector == Sector::X ? CssCode(same, opp) : CssCode(opp, same);
    art.ancilla_count = nzp + w;
    art.measured = op;
    art.is_measurement = false;
    art.advisory = "cylinder construction: the target logical is not in the stabilizer row space";
    art.k_merged = params(art.css()).second;

    BitVec extended(code.n() + nzp + w);
    for (std::size_t i : opvec.ones()) extended.set(i, true);
    if (row_space_contains(same, extended))
        throw std::logic_error("cylinder unexpectedly contains the target logical");
    return art;
}

} // namespace eehm
