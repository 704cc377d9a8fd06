#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "eehm/bitmat.hpp"
#include "eehm/css.hpp"

namespace eehm {

/// (r−1)×r bidiagonal parity-check matrix of the [r, 1, r] repetition code.
BitMatrix repetition(std::size_t r);

/// Cyclic repetition check (1+x lifted to r×r); parity checks of a ring.
BitMatrix ring_repetition(std::size_t r);

/// Hypergraph product code: H_X = (H₁⊗I | I⊗H₂ᵀ), H_Z = (I⊗H₂ | H₁ᵀ⊗I).
/// Qubit ordering: block one is (row of code 1)·n₂ + (row of code 2) over the
/// n₁n₂ bit–bit sector, block two starts at n₁n₂ with check–check index
/// (s·m₂ + t). Table fixtures depend on this ordering staying put.
CssCode hgp(const BitMatrix& h1, const BitMatrix& h2);

/// Planar surface code of distance d as hgp(repetition(d), repetition(d)).
CssCode surface(std::size_t d);
/// Toric code of distance d from cyclic repetition checks.
CssCode toric(std::size_t d);

CssCode steane();
CssCode hamming15();

/// Weight-d X-logical of surface(d) supported on qubits {0,…,d−1}.
BitVec surface_logical_x(std::size_t d);
/// Weight-d X-logical of toric(d) on the first horizontal line {0,…,d−1};
/// its H_Z restriction graph is the cycle C_d.
BitVec toric_logical_x(std::size_t d);

/// Polynomial in F2[x]/(x^ℓ−1), dense coefficient vector.
struct Poly {
    std::vector<std::uint8_t> coeffs;
    static Poly zero() { return {}; }
    static Poly one() { return {{1}}; }
    static Poly monomial(std::size_t k);
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b, std::size_t ell);

/// Matrix over F2[x]/(x^ℓ−1), row-major.
struct PolyMatrix {
    std::size_t rows = 0, cols = 0;
    std::vector<Poly> entries;

    PolyMatrix() = default;
    PolyMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), entries(r * c) {}
    Poly& at(std::size_t r, std::size_t c) { return entries[r * cols + c]; }
    const Poly& at(std::size_t r, std::size_t c) const { return entries[r * cols + c]; }

    static PolyMatrix identity(std::size_t n);
    /// Transpose with ring-transposed entries.
    PolyMatrix transposed(std::size_t ell) const;
};

PolyMatrix poly_kron(const PolyMatrix& a, const PolyMatrix& b, std::size_t ell);
PolyMatrix poly_hstack(const PolyMatrix& a, const PolyMatrix& b);

/// Entry-wise circulant lift 𝔹(A).
BitMatrix lift(const PolyMatrix& a, std::size_t ell);

/// Quasi-cyclic lifted product code:
/// H_X = 𝔹([A₁⊗I | I⊗A₂]), H_Z = 𝔹([I⊗A₂ᵀ | A₁ᵀ⊗I]).
CssCode lifted_product(const PolyMatrix& a1, const PolyMatrix& a2, std::size_t ell);

// Benchmark fixtures: the lifted-product base matrices, the two classical
// LDPC parity checks used for the hypergraph products, and the logical
// operators measured in the reference runs (1-based "X<i>" tokens).
PolyMatrix lp1_base();   // ℓ = 7
PolyMatrix lp2_base();   // ℓ = 9
const BitMatrix& hgp1_pcm();
const BitMatrix& hgp2_pcm();

CssCode lp1();
CssCode lp2();
CssCode hgp1();
CssCode hgp2();

enum class FixtureCode { LP1, LP2, HGP1, HGP2 };
CssCode fixture_code(FixtureCode which);
std::string fixture_name(FixtureCode which);
std::string fixture_operator(FixtureCode which);

/// FNV-1a over dimensions and row-major bits; guards the embedded fixtures.
std::uint64_t matrix_checksum(const BitMatrix& m);

} // namespace eehm
