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
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magic/linalg.hpp"
#include "magic/pauli.hpp"

namespace magic {

/// Two-qubit Clifford rotation exp(i*pi*P/4) with P = sigma_lo (x) sigma_hi on
/// (first, second). The 4-bit code packs lo = code & 3 and hi = code >> 2 with
/// 0..3 meaning I, X, Y, Z. Code 0 is the identity rotation.
struct CliffordGate {
  std::uint8_t code = 0;
  std::size_t first = 0;
  std::size_t second = 1;

  /// Builds from a two-letter word such as "XY".
  static CliffordGate from_pauli(std::string_view word, std::size_t first, std::size_t second);

  /// The rotation generator embedded on n qubits. Throws DimensionError.
  PauliString generator(std::size_t n) const;
  /// Two-letter word of the generator.
  std::string pauli() const;
  bool is_identity() const { return code == 0; }

  friend bool operator==(const CliffordGate&, const CliffordGate&) = default;
};

/// Symbol for code digit 0..3.
char pauli_code_symbol(int digit);

/// Index b of the stabilizer-basis element d_b|psi_S>.
using BasisIndex = Bits;

/// Output of the decomposition P = i^alpha * d_b * s_c, with d_b and s_c the
/// ordered products of the selected destabilizer / stabilizer generators.
struct PauliDecomposition {
  std::uint8_t alpha = 0;  // power of i
  Bits b;
  Bits c;
};

/// Full stabilizer tableau (stabilizers s_i, destabilizers d_i).
///
/// Generators are Hermitian, so their phases are 0 or 2. The destabilizers are
/// kept mutually commuting; Clifford conjugation preserves that, and it makes
/// d_b independent of multiplication order.
class Tableau {
 public:
  Tableau() = default;

  /// s_i = +Z_i, d_i = +X_i. Throws DimensionError for n == 0.
  static Tableau computational(std::size_t n);

  std::size_t size() const { return n_; }
  const std::vector<PauliString>& stabilizers() const { return stabilizers_; }
  const std::vector<PauliString>& destabilizers() const { return destabilizers_; }

  /// Conjugates every generator by the gate: Q -> G Q G^dagger.
  void apply(const CliffordGate& g);
  /// Conjugates every generator by exp(i pi P/4) for an arbitrary Hermitian P.
  void apply_rotation(const PauliString& p);

  /// Empty when all tableau invariants hold, otherwise a description.
  std::optional<std::string> check_invariants() const;

  /// The decomposition algorithm: b_i = 1 iff P anticommutes with s_i, c_i = 1
  /// iff P anticommutes with d_i, and alpha from the accumulated phase.
  PauliDecomposition decompose(const PauliString& p) const;

  /// d_b * s_c as an operator (the inverse of decompose, up to alpha).
  PauliString compose(const Bits& b, const Bits& c) const;

  /// <psi_S| d_basis P d_basis |psi_S> in {-1, 0, +1}.
  int expectation(const BasisIndex& basis, const PauliString& p) const;

  /// Dense state vector d_basis|psi_S>; n <= 12. Throws SizeError.
  CVector state_dense(const BasisIndex& basis) const;

  friend bool operator==(const Tableau&, const Tableau&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<PauliString> stabilizers_;
  std::vector<PauliString> destabilizers_;
};

inline Tableau computational_tableau(std::size_t n) { return Tableau::computational(n); }
Tableau apply_clifford(Tableau t, const CliffordGate& g);
PauliDecomposition decompose_pauli(const Tableau& t, const PauliString& p);
int stabilizer_expectation(const Tableau& t, const BasisIndex& basis, const PauliString& p);
CVector tableau_state_dense(const Tableau& t, const BasisIndex& basis);

/// Rank over GF(2) of the symplectic vectors (x|z) of the given operators.
std::size_t symplectic_rank(const std::vector<PauliString>& ops);

}  // namespace magic
