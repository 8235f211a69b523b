// Copyright 2026 The Magic Ladder Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstddef>
#include <unordered_map>
#include <utility>
#include <vector>

#include "magic/circuit.hpp"
#include "magic/linalg.hpp"
#include "magic/pauli.hpp"
#include "magic/tableau.hpp"

namespace magic {

/// Entries below this magnitude are dropped after a channel update.
inline constexpr double kChiPruneTol = 1e-14;

struct BasisPair {
  BasisIndex i;
  BasisIndex j;
  friend bool operator==(const BasisPair&, const BasisPair&) = default;
};

struct BasisPairHash {
  std::size_t operator()(const BasisPair& p) const {
    return p.i.hash() * 0x100000001B3ull ^ p.j.hash();
  }
};

/// E(rho) = sum phi_mn P_m rho P_n^dagger.
struct PauliChannel {
  struct Entry {
    PauliString left;
    PauliString right;
    Complex phi;
  };
  std::size_t n = 0;
  std::vector<Entry> entries;

  /// Lambda(phi): number of nonzero coefficients.
  std::size_t lambda() const;
  /// Hermiticity of the coefficient map within tol.
  bool is_hermitian(double tol = 1e-10) const;
  /// sum phi_mn P_n^dagger P_m == I within tol.
  bool is_trace_preserving(double tol = 1e-10) const;
};

/// The channel of Rz(theta) = cos(theta/2) I - i sin(theta/2) Z_q. Lambda is 4,
/// or 1 at theta = 0 (mod 2 pi).
PauliChannel rz_channel(std::size_t n, std::size_t q, double theta);
/// The T = diag(1, e^{i pi/4}) conjugation channel on site q.
PauliChannel t_gate_channel(std::size_t n, std::size_t q);

/// Generalized stabilizer state rho = sum_ij chi_ij d_i rho_S d_j.
///
/// While only unitary operations have been applied the state stays pure and
/// chi = v v^dagger is held as the amplitude map v; a general channel promotes
/// it to an explicit chi map.
class GenStabState {
 public:
  static GenStabState from_basis_state(const Tableau& frame, const BasisIndex& b);

  std::size_t size() const { return frame_.size(); }
  const Tableau& frame() const { return frame_; }
  bool is_pure() const { return pure_; }

  /// Lambda(chi) = ||chi||_0.
  std::size_t lambda() const;
  /// chi_ij (materialized from the amplitudes in the pure representation).
  Complex chi(const BasisIndex& i, const BasisIndex& j) const;
  /// All nonzero chi entries.
  std::vector<std::pair<BasisPair, Complex>> chi_entries() const;

  Complex trace() const;
  /// Max |chi_ij - conj(chi_ji)|.
  double hermiticity_error() const;

  /// Frame update only; chi unchanged.
  void evolve_clifford(const CliffordGate& g);
  void evolve_pauli_channel(const PauliChannel& ch);
  /// Rz(theta) on site q; uses the amplitude fast path when pure.
  void apply_rz(std::size_t q, double theta);

  /// Tr(rho h). Throws NumericalError when the imaginary residue exceeds 1e-9.
  double expectation(const PauliSum& h) const;
  /// Tr(rho h) with the imaginary residue reported.
  Complex expectation_complex(const PauliSum& h) const;

  /// Dense density matrix; n <= 10.
  CMatrix to_dense() const;
  /// Dense state vector of a pure state; n <= 12. Throws when mixed.
  CVector to_dense_state() const;

 private:
  explicit GenStabState(Tableau frame) : frame_(std::move(frame)) {}

  void promote_to_mixed();
  void prune();

  Tableau frame_;
  bool pure_ = true;
  std::unordered_map<BasisIndex, Complex, BitsHash> amps_;
  std::unordered_map<BasisPair, Complex, BasisPairHash> chi_;
};

inline GenStabState from_basis_state(const Tableau& frame, const BasisIndex& b) {
  return GenStabState::from_basis_state(frame, b);
}
GenStabState evolve_clifford(GenStabState s, const CliffordGate& g);
GenStabState evolve_pauli_channel(GenStabState s, const PauliChannel& ch);

/// Schroedinger-picture simulation of a circuit from d_b|psi_S> on the
/// computational frame.
GenStabState simulate(const Circuit& c);

}  // namespace magic
