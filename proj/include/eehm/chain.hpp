#pragma once

#include <vector>

#include "eehm/bitmat.hpp"
#include "eehm/css.hpp"

namespace eehm {

/// Chain complex over F2 with explicit integer grades. The boundary map
/// ∂_i sends grade i to grade i−1 and is stored as a dim(i−1) × dim(i)
/// matrix acting on column vectors. Grades outside [lo, hi] have dimension
/// zero; the constructor checks ∂_i ∘ ∂_{i+1} = 0.
class ChainComplex {
  public:
    ChainComplex() = default;
    ChainComplex(int lo, std::vector<std::size_t> dims, std::vector<BitMatrix> boundaries);

    int lo() const { return lo_; }
    int hi() const { return lo_ + static_cast<int>(dims_.size()) - 1; }
    std::size_t dim(int grade) const;
    /// ∂_grade; materializes a zero map of the right shape off the stored range.
    BitMatrix boundary(int grade) const;

    bool operator==(const ChainComplex&) const = default;

  private:
    int lo_ = 0;
    std::vector<std::size_t> dims_;
    std::vector<BitMatrix> bnd_;   // bnd_[j] = ∂_{lo+j+1} : grade lo+j+1 → lo+j
};

/// Chain map f : A → C; component f_i is dim C_i × dim A_i. Components may be
/// omitted for grades where either side is zero. Construction is eager about
/// the commutation law ∂ᶜ f = f ∂ᴬ.
class ChainMap {
  public:
    ChainMap(ChainComplex source, ChainComplex target, int lo, std::vector<BitMatrix> components);

    const ChainComplex& source() const { return source_; }
    const ChainComplex& target() const { return target_; }
    BitMatrix component(int grade) const;   // zero map off the stored range

  private:
    ChainComplex source_, target_;
    int lo_ = 0;
    std::vector<BitMatrix> comp_;
};

/// CSS code as the 3-term complex C₂ →(H_Xᵀ) C₁ →(H_Z) C₀ on grades [0, 2].
ChainComplex css_to_chain(const CssCode& code);

/// CSS code from consecutive boundary maps: H_Xᵀ = ∂_{qubit_grade+1},
/// H_Z = ∂_{qubit_grade}; missing grades act as dimension-0 spaces.
CssCode chain_to_css(const ChainComplex& chain, int qubit_grade);

/// dim ker ∂_i − rank ∂_{i+1}.
std::size_t homology_dim(const ChainComplex& chain, int grade);

/// cone(f)_i = C_i ⊕ A_{i−1} with boundary [[∂ᶜ, f],[0, ∂ᴬ]] (signs dropped over F2).
ChainComplex mapping_cone(const ChainMap& f);

/// cyl(f)_i = C_i ⊕ A_{i−1} ⊕ A_i.
ChainComplex mapping_cylinder(const ChainMap& f);

/// The auxiliary complex B (B_i = A_i ⊕ A_{i+1}) and map g : B → C with
/// cyl(f) = cone(g), block for block.
ChainMap cylinder_as_cone_map(const ChainMap& f);

/// Logical and gauge counts (k̃, r̃) of the cone code built from a CSS code,
/// a 3-term ancilla complex on grades [−1, 1], and a chain map f : A → C.
std::pair<std::size_t, std::size_t> logical_gauge_counts(const CssCode& code,
                                                         const ChainComplex& ancilla,
                                                         const ChainMap& f);

/// Same counts computed from the raw cone-code blocks.
std::pair<std::size_t, std::size_t> logical_gauge_counts(const BitMatrix& hx, const BitMatrix& hz,
                                                         const BitMatrix& f1, const BitMatrix& f0,
                                                         const BitMatrix& d1, const BitMatrix& d0);

} // namespace eehm
