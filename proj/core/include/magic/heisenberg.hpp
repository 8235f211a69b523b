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
#include <span>

#include "magic/circuit.hpp"
#include "magic/pauli.hpp"

namespace magic {

/// Which similarity transform a conjugation computes for circuit U.
enum class ConjugationSide {
  kHeisenberg,   // U^dagger H U
  kSchrodinger,  // U H U^dagger
};

/// Conjugates a single Pauli through Clifford gates given in application order.
PauliString conjugate_pauli(const PauliString& p, std::span<const CliffordGate> gates,
                            ConjugationSide side = ConjugationSide::kHeisenberg);

/// Conjugates every term through the Clifford gates (application order).
/// Term count and |coeff| are preserved; output is canonical.
PauliSum conjugate_by_clifford(const PauliSum& h, std::span<const CliffordGate> gates,
                               ConjugationSide side = ConjugationSide::kHeisenberg);

/// R^dagger h R for R = exp(-i theta Q / 2) with Hermitian Pauli Q: terms
/// anticommuting with Q become cos(theta) P + sin(theta) (i Q P).
PauliSum conjugate_by_pauli_rotation(const PauliSum& h, const PauliString& q, double theta);

/// Rz(theta)^dagger h Rz(theta) on site q.
PauliSum conjugate_by_rz(const PauliSum& h, std::size_t q, double theta);

/// H_eff = U^dagger H U, gate by gate in operator space.
PauliSum transform(const PauliSum& h, const Circuit& c);
PauliSum transform(const PauliSum& h, const LadderCircuit& c);

/// <0...0| h |0...0>: the signed sum of the Z/I-only coefficients.
double zero_state_expectation(const PauliSum& h);

/// <0...0| U^dagger H U |0...0> through the Heisenberg path.
double ground_energy_objective(const PauliSum& h, const LadderCircuit& c);
double ground_energy_objective(const PauliSum& h, const Circuit& c);

}  // namespace magic
