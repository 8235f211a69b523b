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

#include <gtest/gtest.h>

#include "magic/dense.hpp"
#include "magic/error.hpp"
#include "test_util.hpp"

namespace magic {
namespace {

TEST(Dense, PauliMatrices) {
  const CMatrix z = pauli_matrix(PauliString::from_word("Z"));
  EXPECT_EQ(z(0, 0), Complex(1, 0));
  EXPECT_EQ(z(1, 1), Complex(-1, 0));
  const CMatrix xx = pauli_matrix(PauliString::from_word("XX"));
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) EXPECT_EQ(xx(i, j), Complex(i + j == 3 ? 1 : 0, 0));
  }
}

TEST(Dense, QubitZeroIsLowestBit) {
  const CMatrix x0 = pauli_matrix(PauliString::from_word("XI"));
  EXPECT_EQ(x0(1, 0), Complex(1, 0));
  EXPECT_EQ(x0(2, 0), Complex(0, 0));
}

TEST(Dense, HermitianFlag) {
  Rng rng(51);
  const auto d = pauli_sum_to_dense(test::random_hamiltonian(4, 10, rng));
  EXPECT_TRUE(d.hermitian);
  EXPECT_LE(test::max_abs_diff(d.matrix, d.matrix.adjoint()), 1e-15);
  EXPECT_THROW(pauli_sum_to_dense(PauliSum(13)), SizeError);
}

TEST(Dense, CircuitMatrixIsUnitary) {
  Rng rng(52);
  const auto c = test::random_ladder(4, 2, 3, rng, 2);
  const CMatrix u = circuit_to_dense(c).matrix;
  EXPECT_LE(test::max_abs_diff(u * u.adjoint(), CMatrix::Identity(16, 16)), 1e-12);
  EXPECT_LE(test::max_abs_diff(u.col(0), simulate_state(c.to_circuit(), zero_state(4))), 1e-12);
}

TEST(Dense, TwoEigensolvePathsAgree) {
  Rng rng(53);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    const auto h = test::random_hamiltonian(n, 3 * n, rng);
    EXPECT_NEAR(exact_ground(h).energy, ground_energy_real_embedding(h), 1e-9);
  }
}

TEST(Dense, LanczosPathAboveTenQubits) {
  const auto h = test::tfim(11, 1.0);
  const auto gs = exact_ground(h);
  const CMatrix dummy;
  const CVector hv = [&] {
    CVector out = CVector::Zero(gs.state.size());
    for (const auto& t : h.terms()) out += t.coeff * apply_pauli(t.op, gs.state);
    return out;
  }();
  EXPECT_LE((hv - gs.energy * gs.state).norm(), 1e-8);
  EXPECT_LT(gs.energy, -11.0);
}

TEST(Dense, GrandFreeEnergyOfDiagonalHamiltonian) {
  PauliSum h(2);
  h.add(1.0, "ZI");
  h.add(0.5, "IZ");
  PauliSum n(2);
  n.add(1.0, "II");
  n.add(-0.5, "ZI");
  n.add(-0.5, "IZ");
  const double beta = 2.0, mu = 0.3;
  const auto f = exact_grand_free_energy(canonicalize(h), canonicalize(n), beta, mu);
  double z = 0.0, num = 0.0;
  for (int x = 0; x < 4; ++x) {
    const int b0 = x & 1, b1 = (x >> 1) & 1;
    const double e = (b0 ? -1.0 : 1.0) + 0.5 * (b1 ? -1.0 : 1.0) - mu * (b0 + b1);
    z += std::exp(-beta * e);
    num += (b0 + b1) * std::exp(-beta * e);
  }
  EXPECT_NEAR(f.free_energy, -std::log(z) / beta, 1e-12);
  EXPECT_NEAR(f.mean_number, num / z, 1e-12);
  EXPECT_NEAR(f.rho.trace().real(), 1.0, 1e-12);
}

TEST(Dense, GibbsStateIsNormalized) {
  Rng rng(54);
  const CMatrix k = pauli_sum_to_dense(test::random_hamiltonian(3, 8, rng)).matrix;
  const CMatrix rho = gibbs_state(k, 1.5);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
  EXPECT_GE(hermitian_eigenvalues(rho).minCoeff(), -1e-12);
}

}  // namespace
}  // namespace magic
