#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "eehm/bitmat.hpp"

namespace eehm {

/// Sentinel distance for codes with no nontrivial logical operators.
constexpr std::size_t kInfiniteDistance = std::numeric_limits<std::size_t>::max();

enum class Sector { X, Z };

inline Sector opposite(Sector s) { return s == Sector::X ? Sector::Z : Sector::X; }

/// CSS stabilizer code given by its X- and Z-check matrices.
/// Constructor enforces hz·hxᵀ = 0 and matching qubit counts.
struct CssCode {
    BitMatrix hx;   // n_X × n
    BitMatrix hz;   // n_Z × n

    CssCode() = default;
    CssCode(BitMatrix hx_, BitMatrix hz_);

    std::size_t n() const { return hx.cols(); }
    const BitMatrix& checks(Sector s) const { return s == Sector::X ? hx : hz; }

    bool operator==(const CssCode&) const = default;
};

/// n-qubit Pauli operator in (x|z) form; Y on qubit q sets bit q in both parts.
/// phase_i counts powers of i: the operator is i^phase_i · X^x Z^z.
struct PauliOperator {
    BitVec x;
    BitVec z;
    int phase_i = 0;

    static PauliOperator identity(std::size_t n) { return {BitVec(n), BitVec(n), 0}; }
    std::size_t n() const { return x.size(); }
    std::size_t weight() const;   // number of qubits acted on
    bool pure(Sector s) const { return s == Sector::X ? !z.any() : !x.any(); }
};

bool symplectic_commutes(const PauliOperator& a, const PauliOperator& b);

/// Stabilizer code in symplectic form; row i of stab is (x-part | z-part) over
/// 2n columns, with signs[i] the ±1 phase of the (Hermitian) generator.
struct SymplecticCode {
    BitMatrix stab;            // rows × 2n
    std::vector<int> signs;    // ±1 per row

    SymplecticCode() = default;
    SymplecticCode(BitMatrix stab_, std::vector<int> signs_);

    std::size_t n() const { return stab.cols() / 2; }
    PauliOperator generator(std::size_t r) const;
    std::size_t k() const;     // n − rank(stab)
};

std::pair<std::size_t, std::size_t> params(const CssCode& code);   // (n, k)

/// Row/column weight statistics per sector plus the stacked [hx; hz] totals.
struct WeightProfile {
    std::size_t q_x = 0, w_x = 0, q_z = 0, w_z = 0;   // max column / row weights
    std::size_t q = 0, w = 0;                          // over the stacked matrix
    double q_x_avg = 0, w_x_avg = 0, q_z_avg = 0, w_z_avg = 0;
    double q_avg = 0, w_avg = 0;
};
WeightProfile weight_profile(const CssCode& code);

/// Coset representatives of ker H_opp / im H_sameᵀ; k rows.
BitMatrix logical_basis(const CssCode& code, Sector sector);

struct DistanceOptions {
    std::size_t cap = 26;        // max kernel dimension for exhaustive search
    unsigned workers = 1;
};

/// Minimum weight over ker H_opp ∖ rowspace(H_same ∪ gauge_rows) by exhaustive
/// kernel enumeration (Gray-code order). Returns kInfiniteDistance when the
/// quotient is trivial. Appending gauge rows yields the dressed distance.
std::size_t exact_distance(const CssCode& code, Sector sector,
                           const std::optional<BitMatrix>& gauge_rows = std::nullopt,
                           const DistanceOptions& opts = {});

/// Randomized upper bound on the sector distance: column permutations plus
/// elimination, keeping low-weight kernel vectors outside the stabilizer
/// row space. Deterministic for fixed (seed, workers).
std::size_t distance_upper_bound(const CssCode& code, Sector sector, std::size_t trials,
                                 std::uint64_t seed, unsigned workers = 1);

/// Minimum symplectic weight over logicals of a symplectic-form code.
std::size_t symplectic_exact_distance(const SymplecticCode& code, std::size_t cap = 26);

} // namespace eehm
