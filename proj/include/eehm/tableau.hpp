#pragma once

#include <cstdint>
#include <vector>

#include "eehm/css.hpp"
#include "eehm/surgery.hpp"

namespace eehm {

/// Stabilizer state over n qubits: n independent commuting generators with
/// ±1 signs. Generators are stored in the Hermitian convention
/// (−1)^s · i^{|x∧z|} · X^x Z^z. Measurement outcomes draw from the supplied
/// generator; the state owns its randomness.
class StabilizerState {
  public:
    StabilizerState(std::vector<PauliOperator> generators, std::vector<int> signs,
                    std::uint64_t seed);

    std::size_t n() const { return n_; }

    /// Standard stabilizer measurement update. `sign` is the ±1 phase of the
    /// measured operator. Returns (outcome, deterministic).
    std::pair<int, bool> measure(const PauliOperator& p, int sign = +1);

    /// Generator rows in (x|z) form, one per qubit.
    BitMatrix symplectic_rows() const;
    const std::vector<PauliOperator>& generators() const { return gens_; }
    const std::vector<int>& signs() const { return signs_; }

  private:
    std::size_t n_;
    std::vector<PauliOperator> gens_;
    std::vector<int> signs_;
    Rng rng_;

    void multiply_into(std::size_t dst, std::size_t src);   // gen dst ← dst·src
};

struct ProtocolReport {
    int inferred_outcome = 0;                     // product of the new-generator outcomes
    std::vector<int> new_stabilizer_outcomes;     // step-2 record
    std::size_t rounds = 0;
    bool rounds_deterministic = false;            // all step-4 repeats deterministic
    bool z_group_matches = false;                 // step-2 group equals [[H_Z f0];[0 G]]
    bool final_group_matches = false;             // step-5 returns the original group
    bool logicals_restored = false;               // spectator logicals back at +1
    std::vector<std::vector<int>> round_syndromes;
};

/// Noiseless five-step execution of a (CSS) measurement artifact: prepare the
/// code with the target logical fixed to prepared_eigenvalue, merge, repeat
/// the merged stabilizers, then measure out the ancillas and restore the
/// original code via a Pauli frame.
ProtocolReport run_protocol(const MeasurementArtifact& artifact, int prepared_eigenvalue,
                            std::size_t rounds, std::uint64_t seed);

} // namespace eehm
