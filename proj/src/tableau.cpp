#include "eehm/tableau.hpp"

#include <algorithm>
#include <stdexcept>

#include "eehm/chain.hpp"
#include "eehm/errors.hpp"
#include "eehm/hypergraph.hpp"

namespace eehm {

namespace {

// Exponent of i contributed by multiplying single-qubit Paulis a·b, with each
// stored in the Hermitian convention (Aaronson–Gottesman g function).
int g_phase(bool x1, bool z1, bool x2, bool z2) {
    if (!x1 && !z1) return 0;
    if (x1 && z1) return (z2 ? 1 : 0) - (x2 ? 1 : 0);      // Y
    if (x1) return z2 ? (x2 ? 1 : -1) : 0;                 // X
    return x2 ? (z2 ? -1 : 1) : 0;                         // Z
}

int product_phase(const PauliOperator& a, const PauliOperator& b) {
    int total = 0;
    for (std::size_t q = 0; q < a.n(); ++q)
        total += g_phase(a.x.get(q), a.z.get(q), b.x.get(q), b.z.get(q));
    return ((total % 4) + 4) % 4;
}

} // namespace

StabilizerState::StabilizerState(std::vector<PauliOperator> generators, std::vector<int> signs,
                                 std::uint64_t seed)
    : n_(generators.empty() ? 0 : generators.front().n()),
      gens_(std::move(generators)),
      signs_(std::move(signs)),
      rng_(seed) {
    if (gens_.size() != n_ || signs_.size() != n_)
        throw std::invalid_argument("stabilizer state needs n generators and signs");
    for (std::size_t i = 0; i < gens_.size(); ++i)
        for (std::size_t j = i + 1; j < gens_.size(); ++j)
            if (!symplectic_commutes(gens_[i], gens_[j]))
                throw std::invalid_argument("stabilizer generators must commute");
    if (rank(symplectic_rows()) != n_)
        throw std::invalid_argument("stabilizer generators must be independent");
}

BitMatrix StabilizerState::symplectic_rows() const {
    BitMatrix m(gens_.size(), 2 * n_);
    for (std::size_t r = 0; r < gens_.size(); ++r)
        for (std::size_t q = 0; q < n_; ++q) {
            if (gens_[r].x.get(q)) m.set(r, q, true);
            if (gens_[r].z.get(q)) m.set(r, n_ + q, true);
        }
    return m;
}

void StabilizerState::multiply_into(std::size_t dst, std::size_t src) {
    int phase = product_phase(gens_[dst], gens_[src]);
    int sign_bits = (signs_[dst] < 0 ? 2 : 0) + (signs_[src] < 0 ? 2 : 0);
    int total = (phase + sign_bits) % 4;
    if (total % 2 != 0) throw std::logic_error("product of commuting generators is not Hermitian");
    gens_[dst].x ^= gens_[src].x;
    gens_[dst].z ^= gens_[src].z;
    signs_[dst] = total == 0 ? +1 : -1;
}

std::pair<int, bool> StabilizerState::measure(const PauliOperator& p, int sign) {
    if (p.n() != n_) throw std::invalid_argument("operator size mismatch");
    std::vector<std::size_t> anti;
    for (std::size_t i = 0; i < gens_.size(); ++i)
        if (!symplectic_commutes(gens_[i], p)) anti.push_back(i);

    if (!anti.empty()) {
        int outcome = (rng_() & 1u) ? -1 : +1;
        std::size_t pivot = anti.front();
        for (std::size_t i = 1; i < anti.size(); ++i) multiply_into(anti[i], pivot);
        gens_[pivot] = p;
        signs_[pivot] = outcome * sign;
        return {outcome, false};
    }

    // p is in the group up to sign: express it over the generators
    BitVec target(2 * n_);
    for (std::size_t q = 0; q < n_; ++q) {
        if (p.x.get(q)) target.set(q, true);
        if (p.z.get(q)) target.set(n_ + q, true);
    }
    auto combo = solve(symplectic_rows().transposed(), target);
    if (!combo) throw std::logic_error("commuting operator outside the full stabilizer group");

    PauliOperator acc = PauliOperator::identity(n_);
    int acc_sign = +1;
    for (std::size_t i : combo->ones()) {
        int phase = product_phase(acc, gens_[i]);
        int sign_bits = (acc_sign < 0 ? 2 : 0) + (signs_[i] < 0 ? 2 : 0);
        int total = (phase + sign_bits) % 4;
        if (total % 2 != 0) throw std::logic_error("inconsistent group phase");
        acc.x ^= gens_[i].x;
        acc.z ^= gens_[i].z;
        acc_sign = total == 0 ? +1 : -1;
    }
    if (!(acc.x == p.x) || !(acc.z == p.z))
        throw std::logic_error("group solve produced the wrong operator");
    return {acc_sign * sign, true};
}

namespace {


PauliOperator make_x(std::size_t n, const BitVec& bits) {
    PauliOperator p = PauliOperator::identity(n);
    for (std::size_t i : bits.ones()) p.x.set(i, true);
    return p;
}

PauliOperator make_z(std::size_t n, const BitVec& bits) {
    PauliOperator p = PauliOperator::identity(n);
    for (std::size_t i : bits.ones()) p.z.set(i, true);
    return p;
}

std::vector<BitVec> independent_rows(const BitMatrix& m) {
    std::vector<BitVec> out, reducers;
    std::vector<std::size_t> pivots;
    for (std::size_t i = 0; i < m.rows(); ++i) {
        BitVec v = m.row(i);
        for (std::size_t j = 0; j < reducers.size(); ++j)
            if (v.get(pivots[j])) v ^= reducers[j];
        if (!v.any()) continue;
        out.push_back(m.row(i));
        std::size_t piv = v.ones().front();
        for (auto& red : reducers)
            if (red.get(piv)) red ^= v;
        reducers.push_back(v);
        pivots.push_back(piv);
    }
    return out;
}

bool same_row_space(const BitMatrix& a, const BitMatrix& b) {
    std::size_t ra = rank(a), rb = rank(b);
    return ra == rb && rank(vstack(a, b)) == ra;
}

} // namespace

ProtocolReport run_protocol(const MeasurementArtifact& artifact, int prepared_eigenvalue,
                            std::size_t rounds, std::uint64_t seed) {
    if (!artifact.is_css()) throw std::invalid_argument("protocol execution needs a CSS artifact");
    if (rounds < 1) throw std::invalid_argument("at least one stabilizer round is required");
    if (prepared_eigenvalue != 1 && prepared_eigenvalue != -1)
        throw std::invalid_argument("prepared eigenvalue must be ±1");

    // Work in the measured sector's frame: for a Z measurement swap X and Z
    // everywhere (ancillas in |+⟩, roles of the check matrices exchanged).
    bool swapped = artifact.sector == Sector::Z;
    const CssCode& input = artifact.input;
    BitMatrix h_same = swapped ? input.hz : input.hx;
    BitMatrix h_opp = swapped ? input.hx : input.hz;
    const BitVec& opvec = swapped ? artifact.measured.z : artifact.measured.x;

    std::size_t n = input.n();
    std::size_t a = artifact.ancilla_count;
    std::size_t nn = n + a;

    auto lift_same = [&](const BitVec& bits) {   // X-type in the working frame
        BitVec padded(nn);
        for (std::size_t i : bits.ones()) padded.set(i, true);
        return swapped ? make_z(nn, padded) : make_x(nn, padded);
    };
    auto lift_opp = [&](const BitVec& bits) {
        BitVec padded(nn);
        for (std::size_t i : bits.ones()) padded.set(i, true);
        return swapped ? make_x(nn, padded) : make_z(nn, padded);
    };

    // --- prepare the original code with the measured logical fixed ---
    std::vector<PauliOperator> gens;
    std::vector<int> signs;
    for (const BitVec& row : independent_rows(h_same)) {
        gens.push_back(lift_same(row));
        signs.push_back(+1);
    }
    for (const BitVec& row : independent_rows(h_opp)) {
        gens.push_back(lift_opp(row));
        signs.push_back(+1);
    }
    gens.push_back(lift_same(opvec));
    signs.push_back(prepared_eigenvalue);

    // complete with opposing-sector logicals that commute with the target
    CssCode frame_code = swapped ? CssCode(input.hz, input.hx) : input;
    BitMatrix lz = logical_basis(frame_code, Sector::Z);
    std::vector<BitVec> spectators;
    {
        std::vector<BitVec> rows;
        for (std::size_t r = 0; r < lz.rows(); ++r) rows.push_back(lz.row(r));
        std::size_t pairing = SIZE_MAX;
        for (std::size_t r = 0; r < rows.size(); ++r)
            if (rows[r].dot(opvec)) {
                pairing = r;
                break;
            }
        if (pairing == SIZE_MAX && !rows.empty() && params(frame_code).second > 0)
            throw std::logic_error("no logical pairs with the measured operator");
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == pairing) continue;
            BitVec v = rows[r];
            if (v.dot(opvec)) v ^= rows[pairing];
            spectators.push_back(v);
        }
    }
    for (const BitVec& v : spectators) {
        gens.push_back(lift_opp(v));
        signs.push_back(+1);
    }

    // step 1: ancillas in |0⟩ (or |+⟩ for a Z-sector measurement)
    for (std::size_t q = n; q < nn; ++q) {
        PauliOperator p = PauliOperator::identity(nn);
        (swapped ? p.x : p.z).set(q, true);
        gens.push_back(p);
        signs.push_back(+1);
    }

    StabilizerState state(std::move(gens), std::move(signs), seed);

    const CssCode& merged = artifact.css();
    const BitMatrix& merged_same = swapped ? merged.hz : merged.hx;
    const BitMatrix& merged_opp = swapped ? merged.hx : merged.hz;
    const std::vector<RowTag>& same_tags = swapped ? artifact.z_tags : artifact.x_tags;
    const std::vector<RowTag>& opp_tags = swapped ? artifact.x_tags : artifact.z_tags;
    RowTag new_tag = swapped ? RowTag::new_z : RowTag::new_x;
    RowTag orig_opp_tag = swapped ? RowTag::original_x : RowTag::original_z;

    ProtocolReport report;
    report.rounds = rounds;

    // step 2: measure the new stabilizers; outcomes are random, record them
    std::vector<PauliOperator> new_rows;
    for (std::size_t r = 0; r < merged_same.rows(); ++r)
        if (same_tags[r] == new_tag) new_rows.push_back(swapped ? make_z(nn, merged_same.row(r))
                                                                : make_x(nn, merged_same.row(r)));
    int product = +1;
    for (const PauliOperator& p : new_rows) {
        auto [outcome, det] = state.measure(p);
        report.new_stabilizer_outcomes.push_back(outcome);
        product *= outcome;
    }
    report.inferred_outcome = product;

    // after step 2 the opposing group is [[H_opp f0]; [0 G]] with ker G = im ∂₁
    {
        BitMatrix opp_rows(0, 2 * nn);
        BitMatrix sym = state.symplectic_rows();
        BitMatrix part(sym.rows(), nn);
        for (std::size_t r = 0; r < sym.rows(); ++r)
            for (std::size_t q = 0; q < nn; ++q)
                if (sym.get(r, swapped ? nn + q : q)) part.set(r, q, true);
        BitMatrix combos = nullspace(part.transposed());
        BitMatrix group(0, nn);
        for (std::size_t r = 0; r < combos.rows(); ++r) {
            BitVec member(nn);
            for (std::size_t i : combos.row(r).ones()) {
                BitVec other(nn);
                for (std::size_t q = 0; q < nn; ++q)
                    if (sym.get(i, swapped ? q : nn + q)) other.set(q, true);
                member ^= other;
            }
            group.append_row(member);
        }
        // the opposing group is now [[H f0]; [0 G]] with ker G = im ∂₁, plus
        // the fixed spectator logicals carried along their extensions
        BitMatrix g = nullspace(artifact.d1.transposed());
        BitMatrix expected(0, nn);
        for (std::size_t r = 0; r < merged_opp.rows(); ++r)
            if (opp_tags[r] == orig_opp_tag) expected.append_row(merged_opp.row(r));
        for (std::size_t r = 0; r < g.rows(); ++r) {
            BitVec row(nn);
            for (std::size_t e = 0; e < g.cols(); ++e)
                if (g.get(r, e)) row.set(n + e, true);
            expected.append_row(row);
        }
        BitMatrix code_part = expected;
        for (const BitVec& spec : spectators) {
            BitVec rhs = artifact.f1.transposed().mul_vec(spec);
            auto u = solve(artifact.d1.transposed(), rhs);
            if (!u) throw std::logic_error("spectator extension system is inconsistent");
            BitVec row(nn);
            for (std::size_t i : spec.ones()) row.set(i, true);
            for (std::size_t e : u->ones()) row.set(n + e, true);
            expected.append_row(row);
        }
        report.z_group_matches =
            same_row_space(group, expected) &&
            rank(vstack(code_part, group)) == rank(group);   // code rows all present
    }

    // step 3: measure the [H_opp f0] stabilizers; gauges beyond ∂₀ stay unmeasured
    for (std::size_t r = 0; r < merged_opp.rows(); ++r) {
        if (opp_tags[r] != orig_opp_tag) continue;
        auto [outcome, det] = state.measure(swapped ? make_x(nn, merged_opp.row(r))
                                                    : make_z(nn, merged_opp.row(r)));
        if (!det || outcome != +1)
            throw std::logic_error("noiseless [H f0] measurement should be deterministic +1");
    }

    // step 4: repeat every merged stabilizer; noiseless repeats are deterministic
    report.rounds_deterministic = true;
    for (std::size_t round = 0; round < rounds; ++round) {
        std::vector<int> syndrome;
        for (std::size_t r = 0; r < merged_same.rows(); ++r) {
            auto [outcome, det] = state.measure(swapped ? make_z(nn, merged_same.row(r))
                                                        : make_x(nn, merged_same.row(r)));
            if (!det) report.rounds_deterministic = false;
            syndrome.push_back(outcome);
        }
        for (std::size_t r = 0; r < merged_opp.rows(); ++r) {
            auto [outcome, det] = state.measure(swapped ? make_x(nn, merged_opp.row(r))
                                                        : make_z(nn, merged_opp.row(r)));
            if (!det) report.rounds_deterministic = false;
            syndrome.push_back(outcome);
        }
        report.round_syndromes.push_back(std::move(syndrome));
    }

    // step 5: measure the ancillas out and restore the original code
    std::vector<int> anc_outcomes(a, +1);
    for (std::size_t e = 0; e < a; ++e) {
        PauliOperator p = PauliOperator::identity(nn);
        (swapped ? p.x : p.z).set(n + e, true);
        anc_outcomes[e] = state.measure(p).first;
    }

    // the spectators picked up the ancilla outcomes along their extensions;
    // solve for an extension of each to know which signs to expect
    std::vector<int> expected_spectator_sign(spectators.size(), +1);
    for (std::size_t s = 0; s < spectators.size(); ++s) {
        BitVec rhs = artifact.f1.transposed().mul_vec(spectators[s]);
        auto u = solve(artifact.d1.transposed(), rhs);
        if (!u) throw std::logic_error("spectator extension system is inconsistent");
        for (std::size_t e : u->ones()) expected_spectator_sign[s] *= anc_outcomes[e];
    }

    // Pauli frame on the original qubits: the opposing checks and spectator
    // logicals carry ancilla-outcome products along their f0 / extension
    // columns; solve for the frame restoring all of them to +1.
    {
        BitMatrix constraints(0, n);
        std::vector<int> want;
        for (std::size_t s = 0; s < spectators.size(); ++s) {
            constraints.append_row(spectators[s]);
            want.push_back(expected_spectator_sign[s]);
        }
        for (std::size_t r = 0; r < h_opp.rows(); ++r) {
            int sgn = +1;
            for (std::size_t e = 0; e < artifact.f0.cols(); ++e)
                if (artifact.f0.get(r, e)) sgn *= anc_outcomes[e];
            constraints.append_row(h_opp.row(r));
            want.push_back(sgn);
        }
        BitVec rhs(constraints.rows());
        for (std::size_t i = 0; i < want.size(); ++i)
            if (want[i] < 0) rhs.set(i, true);
        auto frame = solve(constraints, rhs);
        if (!frame) throw std::logic_error("no Pauli frame restores the code-space signs");
        // conjugation by the frame flips exactly the anticommuting operators
        bool ok = true;
        auto check = [&](const BitVec& row, const PauliOperator& p) {
            auto [outcome, det] = state.measure(p);
            int corrected = outcome * (frame->dot(row) ? -1 : +1);
            if (!det || corrected != +1) ok = false;
        };
        for (std::size_t s = 0; s < spectators.size(); ++s)
            check(spectators[s], lift_opp(spectators[s]));
        for (const BitVec& row : independent_rows(h_opp)) {
            // expected sign for a combined row follows from the measured ones
            check(row, lift_opp(row));
        }
        for (const BitVec& row : independent_rows(h_same)) {
            auto [outcome, det] = state.measure(lift_same(row));
            if (!det || outcome != +1) ok = false;
        }
        // the measured logical sits at the inferred eigenvalue
        auto [logical_outcome, logical_det] = state.measure(lift_same(opvec));
        if (!logical_det || logical_outcome != report.inferred_outcome) ok = false;
        report.logicals_restored = ok;
    }

    // final group = original code group (with the measured logical fixed)
    {
        BitMatrix final_rows = state.symplectic_rows();
        BitMatrix expected(0, 2 * nn);
        auto embed = [&](const PauliOperator& p) {
            BitVec row(2 * nn);
            for (std::size_t q = 0; q < nn; ++q) {
                if (p.x.get(q)) row.set(q, true);
                if (p.z.get(q)) row.set(nn + q, true);
            }
            return row;
        };
        for (const BitVec& row : independent_rows(h_same)) expected.append_row(embed(lift_same(row)));
        for (const BitVec& row : independent_rows(h_opp)) expected.append_row(embed(lift_opp(row)));
        expected.append_row(embed(lift_same(opvec)));
        for (const BitVec& v : spectators) expected.append_row(embed(lift_opp(v)));
        for (std::size_t e = 0; e < a; ++e) {
            PauliOperator p = PauliOperator::identity(nn);
            (swapped ? p.x : p.z).set(n + e, true);
            expected.append_row(embed(p));
        }
        report.final_group_matches = same_row_space(final_rows, expected);
    }
    return report;
}

} // namespace eehm
