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

#include "magic/circuit.hpp"
#include "magic/linalg.hpp"
#include "magic/pauli.hpp"

namespace magic {

/// Brute-force reference implementations on dense 2^n x 2^n matrices. Basis
/// index bit q is qubit q; |0> is the +1 eigenstate of Z.

inline constexpr std::size_t kDenseOperatorMaxQubits = 12;
inline constexpr std::size_t kDenseCircuitMaxQubits = 10;

struct DenseOperator {
  std::size_t n = 0;
  CMatrix matrix;
  bool hermitian = false;
};

/// P|v> without forming the matrix.
CVector apply_pauli(const PauliString& p, const CVector& v);

CMatrix pauli_matrix(const PauliString& p);

/// Exact Kronecker construction; n <= 12. Throws SizeError.
DenseOperator pauli_sum_to_dense(const PauliSum& h);

/// exp(i pi P/4) = (I + iP)/sqrt(2).
CMatrix clifford_gate_matrix(const CliffordGate& g, std::size_t n);
CMatrix rz_matrix(std::size_t site, double theta, std::size_t n);

/// Product of gate matrices in application order; n <= 10.
DenseOperator circuit_to_dense(const Circuit& c);
DenseOperator circuit_to_dense(const LadderCircuit& c);

/// Gate-by-gate state-vector simulation; n <= 12.
CVector simulate_state(const Circuit& c, const CVector& psi0);
CVector zero_state(std::size_t n);

struct GroundState {
  double energy = 0.0;
  CVector state;
};

/// Lowest eigenpair. Full Hermitian eigensolve up to 10 qubits, Lanczos with
/// full reorthogonalization above; residual ||H psi - E psi|| <= 1e-8.
GroundState exact_ground(const PauliSum& h);

/// Lowest eigenvalue via the real symmetric embedding [[Re, -Im], [Im, Re]];
/// an eigensolve path independent of exact_ground. n <= 10.
double ground_energy_real_embedding(const PauliSum& h);

struct GrandFreeEnergy {
  double free_energy = 0.0;
  double mean_number = 0.0;
  CMatrix rho;
};

/// F0 = -(1/beta) log Tr exp(-beta (H - mu N)) and the Gibbs state; n <= 10.
/// An empty number operator means N = 0.
GrandFreeEnergy exact_grand_free_energy(const PauliSum& h, const PauliSum& number_op,
                                        double beta, double mu);

/// exp(-beta K)/Tr for Hermitian K, via eigendecomposition with a max shift.
CMatrix gibbs_state(const CMatrix& k, double beta);

/// Eigenvalues of a Hermitian matrix in ascending order.
RVector hermitian_eigenvalues(const CMatrix& m);

}  // namespace magic
