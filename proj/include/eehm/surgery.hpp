#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "eehm/bitmat.hpp"
#include "eehm/css.hpp"
#include "eehm/hypergraph.hpp"

namespace eehm {

enum class RowTag { original_x, new_x, original_z, new_z, new_x_cycle, new_z_cycle };

struct RestrictionMaps {
    BitMatrix f1;                            // n × w
    BitMatrix d1_star;                       // n_Z' × w, zero rows removed
    BitMatrix f0_star;                       // n_Z × n_Z'
    std::vector<std::size_t> support;        // Q, sorted
    std::vector<std::size_t> nonzero_rows;   // h_j per column of f0_star
};

/// f₁, ∂₁*, f₀* for the support of a sector logical. The support indicator
/// must commute with the opposing checks; being a *nontrivial* logical is the
/// caller's concern.
RestrictionMaps restriction_maps(const CssCode& code, std::span<const std::size_t> support,
                                 Sector sector);

/// Random search for a low-weight ∂₀: rows span a complement of
/// V = { vᵀf₀ : v ∈ ker H_Zᵀ } inside the cycle space of the ∂₁ graph.
BitMatrix algorithm2_low_weight_d0(const BitMatrix& d1, const BitMatrix& hz, const BitMatrix& f0,
                                   std::size_t samples, std::uint64_t seed);

/// Variant with the forced-cycle rows V supplied directly.
BitMatrix algorithm2_with_forced_cycles(const BitMatrix& d1, const BitMatrix& v_rows,
                                        std::size_t samples, std::uint64_t seed);

struct MeasureOptions {
    std::uint64_t seed = 0;
    std::size_t samples = 1000;              // low-weight ∂₀ search candidates
    std::size_t cheeger_cap = 24;
    bool cellulation = true;
    std::size_t sparsity_slack = 2;          // ∂₀ acceptable while ≤ max(w_X, w_Z) + slack
    std::optional<std::size_t> sparsity_threshold;   // overrides the slack-based default
    std::optional<std::size_t> max_cycle_weight;     // defaults to the sparsity threshold
    std::size_t max_degree = 3;
    unsigned workers = 1;
};

struct MeasurementArtifact {
    Sector sector = Sector::X;
    CssCode input;
    BitMatrix f1, f0, d1, d0;
    std::variant<CssCode, SymplecticCode> merged;
    std::size_t ancilla_count = 0;           // dim A₀ = rows of ∂₁
    std::vector<RowTag> x_tags, z_tags;      // per merged check row (CSS case)
    PauliOperator measured;
    int interpretation_sign = +1;            // relates outcome products to the operator
    std::size_t k_merged = 0, r_merged = 0;
    Ratio cheeger_final{0, 1};
    std::vector<Ratio> cheeger_trace;        // after each Algorithm-1 edge
    std::size_t edges_added = 0;
    std::size_t chords_added = 0;
    bool hyperedges_expanded = false;
    bool is_measurement = true;              // cylinder scheme sets this false
    std::string advisory;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
    unsigned workers = 1;

    const CssCode& css() const;
    const SymplecticCode& symplectic() const;
    bool is_css() const { return std::holds_alternative<CssCode>(merged); }
};

/// Edge expanded homological measurement of a pure X- or Z-logical operator.
/// Guarantees k̃ = k−1, r̃ = 0, the operator lands in the stabilizer row
/// space, and the ∂₁ graph has Cheeger constant ≥ 1.
MeasurementArtifact algorithm3_measure(const CssCode& code, const PauliOperator& op,
                                       const MeasureOptions& opts = {});

/// Joint measurement of a mixed X/Z (possibly Y-containing) logical; the
/// merged code is returned in symplectic form.
MeasurementArtifact mixed_measure(const CssCode& code, const PauliOperator& op,
                                  const MeasureOptions& opts = {});

/// Iterative measurement of pairwise-commuting logicals; opposite-sector
/// operators get their support extended over earlier ancillas.
MeasurementArtifact parallel_measure(const CssCode& code, const std::vector<PauliOperator>& ops,
                                     const MeasureOptions& opts = {});

/// Surface-code lattice surgery (repetition-structured restriction) across
/// two codes; measures X̄₁X̄₂.
MeasurementArtifact scheme_lattice_surgery(const CssCode& code1, const CssCode& code2,
                                           const BitVec& x1, const BitVec& x2);

/// Generalized lattice surgery: the ancilla chain is the hypergraph product
/// of ∂₁* with the length-r repetition check. r = 1 is the bare restriction
/// cone. May leave gauges (r̃ > 0).
MeasurementArtifact scheme_generalized_lattice_surgery(const CssCode& code,
                                                       const PauliOperator& op, std::size_t r);

/// Mapping-cylinder construction with ∂₂ = 0. Kept for comparison only: the
/// target logical never enters the X row space, so this is not a measurement.
MeasurementArtifact scheme_cylinder(const CssCode& code, const PauliOperator& op,
                                    bool all_ones_d2 = false);

} // namespace eehm
