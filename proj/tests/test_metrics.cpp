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

#include <cmath>
#include <complex>
#include <numbers>

#include "magic/dense.hpp"
#include "magic/error.hpp"
#include "magic/gen_stab.hpp"
#include "magic/metrics.hpp"
#include "test_util.hpp"

namespace magic {
namespace {

CVector t_states(std::size_t m) {
  const std::size_t dim = std::size_t{1} << m;
  const Complex phase = std::polar(1.0, std::numbers::pi / 4.0);
  CVector psi(static_cast<Eigen::Index>(dim));
  for (std::size_t x = 0; x < dim; ++x) {
    Complex a = std::pow(0.5, 0.5 * static_cast<double>(m));
    for (std::size_t q = 0; q < m; ++q) {
      if ((x >> q) & 1) a *= phase;
    }
    psi(static_cast<Eigen::Index>(x)) = a;
  }
  return psi;
}

CMatrix projector(const CVector& psi) { return psi * psi.adjoint(); }

std::string word_of(std::size_t x, std::size_t z, std::size_t n) {
  std::string w(n, 'I');
  for (std::size_t q = 0; q < n; ++q) {
    const bool xb = (x >> q) & 1;
    const bool zb = (z >> q) & 1;
    w[q] = xb ? (zb ? 'Y' : 'X') : (zb ? 'Z' : 'I');
  }
  return w;
}

CVector ghz(std::size_t n) {
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << n));
  psi(0) = psi(psi.size() - 1) = 1.0 / std::sqrt(2.0);
  return psi;
}

/// A random product of single-site gates.
CMatrix random_local_unitary(std::size_t n, Rng& rng) {
  CMatrix u = CMatrix::Identity(std::int64_t{1} << n, std::int64_t{1} << n);
  for (std::size_t q = 0; q < n; ++q) {
    const std::string word{static_cast<char>("XYZ"[rng.index(3)]), 'I'};
    u = rz_matrix(q, rng.uniform(0.0, 6.0), n) * clifford_gate_matrix(CliffordGate::from_pauli(word, q, (q + 1) % n), n) *
        rz_matrix(q, rng.uniform(0.0, 6.0), n) * u;
  }
  return u;
}

TEST(PauliDistribution, TStateSpectrum) {
  const auto xi = pauli_distribution(t_states(1));
  ASSERT_EQ(xi.size(), 4u);
  // Index x | z << n: I, X, Z, Y.
  EXPECT_NEAR(xi[0], 0.5, 1e-15);
  EXPECT_NEAR(xi[1], 0.25, 1e-15);
  EXPECT_NEAR(xi[2], 0.0, 1e-15);
  EXPECT_NEAR(xi[3], 0.25, 1e-15);
}

TEST(PauliDistribution, MatchesDirectExpectations) {
  Rng rng(91);
  const std::size_t n = 3;
  const auto psi = test::random_state(n, rng);
  const auto xi = pauli_distribution(psi);
  for (std::size_t x = 0; x < 8; ++x) {
    for (std::size_t z = 0; z < 8; ++z) {
      const double e = psi.dot(apply_pauli(PauliString::from_word(word_of(x, z, n)), psi)).real();
      EXPECT_NEAR(xi[x | (z << n)], e * e / 8.0, 1e-12);
    }
  }
}

TEST(StabilizerEntropy, TStateIsHalfBit) {
  EXPECT_NEAR(stabilizer_entropy(t_states(1)), 0.5, 1e-9);
}

TEST(StabilizerEntropy, AdditiveOverProducts) {
  for (std::size_t m = 1; m <= 4; ++m) EXPECT_NEAR(stabilizer_entropy(t_states(m)), 0.5 * m, 1e-9);
}

TEST(StabilizerEntropy, ZeroOnStabilizerStates) {
  Rng rng(92);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.index(4);
    const auto c = test::random_circuit(n, 3 * n, 0, rng);
    EXPECT_NEAR(stabilizer_entropy(simulate_state(c, zero_state(n))), 0.0, 1e-9);
    EXPECT_NEAR(stabilizer_entropy(simulate(c)), 0.0, 1e-9);
  }
}

TEST(StabilizerEntropy, CliffordInvariant) {
  Rng rng(93);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng.index(3);
    const auto psi = test::random_state(n, rng);
    const auto c = test::random_circuit(n, 4 * n, 0, rng);
    EXPECT_NEAR(stabilizer_entropy(simulate_state(c, psi)), stabilizer_entropy(psi), 1e-9);
  }
}

TEST(StabilizerEntropy, GeneralizedStabilizerPathMatchesDense) {
  Rng rng(94);
  for (int trial = 0; trial < 10; ++trial) {
    const auto c = test::random_circuit(3, 8, 2, rng);
    EXPECT_NEAR(stabilizer_entropy(simulate(c)), stabilizer_entropy(simulate_state(c, zero_state(3))), 1e-9);
  }
}

TEST(Negativity, BellPairIsHalf) {
  const CMatrix rho = projector(ghz(2));
  EXPECT_NEAR(negativity(rho, {0}), 0.5, 1e-12);
  const auto s = site_averaged_negativity(rho, 2);
  ASSERT_EQ(s.per_site.size(), 2u);
  EXPECT_NEAR(s.per_site[0], 0.5, 1e-12);
  EXPECT_NEAR(s.mean, 0.5, 1e-12);
}

TEST(Negativity, GhzAcrossAnyCut) {
  const CMatrix rho = projector(ghz(4));
  EXPECT_NEAR(negativity(rho, {0}), 0.5, 1e-12);
  EXPECT_NEAR(negativity(rho, {0, 2}), 0.5, 1e-12);
  const auto p = partition_negativity(rho, {{0, 1}, {3}});
  EXPECT_NEAR(p.mean, 0.5, 1e-12);
}

TEST(Negativity, ProductStatesVanish) {
  Rng rng(95);
  for (int trial = 0; trial < 10; ++trial) {
    const CVector a = test::random_state(1, rng);
    const CVector b = test::random_state(2, rng);
    CVector psi(8);
    for (Eigen::Index x = 0; x < 8; ++x) psi(x) = a(x & 1) * b(x >> 1);
    EXPECT_NEAR(negativity(projector(psi), {0}), 0.0, 1e-12);
  }
  EXPECT_NEAR(negativity(CMatrix::Identity(8, 8) / 8.0, {1}), 0.0, 1e-12);
}

TEST(Negativity, LocalUnitaryInvariant) {
  Rng rng(96);
  for (int trial = 0; trial < 10; ++trial) {
    const std::size_t n = 3;
    const CVector psi = test::random_state(n, rng);
    const CMatrix u = random_local_unitary(n, rng);
    const CVector phi = u * psi;
    for (std::size_t q = 0; q < n; ++q) {
      EXPECT_NEAR(negativity(projector(phi), {q}), negativity(projector(psi), {q}), 1e-10);
    }
  }
}

TEST(Negativity, PartialTransposeIsInvolution) {
  Rng rng(97);
  const CVector psi = test::random_state(3, rng);
  const CMatrix rho = projector(psi);
  EXPECT_LT(test::max_abs_diff(partial_transpose(partial_transpose(rho, {1}), {1}), rho), 1e-15);
  EXPECT_NEAR(partial_transpose(rho, {0, 1, 2}).trace().real(), 1.0, 1e-12);
}

TEST(Negativity, RejectsNonHermitian) {
  CMatrix rho = CMatrix::Identity(4, 4) / 4.0;
  rho(0, 1) = 0.3;
  EXPECT_THROW(negativity(rho, {0}), NotHermitianError);
}

TEST(GibbsDensity, MatchesDenseExponential) {
  Rng rng(98);
  const auto h = test::random_hamiltonian(3, 8, rng);
  const auto num = test::number_operator(3);
  const CMatrix rho = gibbs_density(h, 1.4, 0.3, num);
  const CMatrix k = pauli_sum_to_dense(h).matrix - 0.3 * pauli_sum_to_dense(num).matrix;
  EXPECT_LT(test::max_abs_diff(rho, gibbs_state(k, 1.4)), 1e-12);
  EXPECT_NEAR(rho.trace().real(), 1.0, 1e-12);
}

TEST(OffdiagDensity, InfiniteTemperatureHasNoCoherence) {
  Rng rng(99);
  const auto h = test::random_hamiltonian(3, 8, rng);
  const auto r = gibbs_offdiag_density(h, 0.0, 0.0, PauliSum(3));
  EXPECT_EQ(r.mass, 0.0);
  EXPECT_EQ(r.hist.below_range, 56u);
}

TEST(OffdiagDensity, DiagonalHamiltonianHasNoCoherence) {
  PauliSum h(3);
  h.add(1.0, "ZZI");
  h.add(-0.3, "IIZ");
  const auto r = gibbs_offdiag_density(canonicalize(h), 2.0, 0.0, PauliSum(3));
  EXPECT_EQ(r.mass, 0.0);
}

TEST(OffdiagDensity, HistogramBinsMagnitudes) {
  CMatrix rho = CMatrix::Identity(4, 4) / 4.0;
  rho(0, 1) = rho(1, 0) = 1e-3;
  rho(2, 3) = rho(3, 2) = Complex(0.0, 0.25);
  const auto r = offdiag_density(rho);
  ASSERT_EQ(r.hist.edges.size(), kOffdiagBins + 1);
  EXPECT_NEAR(r.hist.edges.front(), 1e-16, 1e-30);
  EXPECT_NEAR(r.hist.edges.back(), 1.0, 1e-15);
  EXPECT_NEAR(r.mass, 2e-3 + 0.5, 1e-15);
  EXPECT_EQ(r.hist.below_range, 8u);
  std::uint64_t total = 0;
  for (std::size_t b = 0; b < kOffdiagBins; ++b) {
    total += r.hist.counts[b];
    if (r.hist.counts[b] > 0) {
      const double v = r.hist.counts[b] == 2 && b < 60 ? 1e-3 : 0.25;
      EXPECT_LE(r.hist.edges[b], v);
      EXPECT_GT(r.hist.edges[b + 1], v);
    }
  }
  EXPECT_EQ(total, 4u);
}

}  // namespace
}  // namespace magic
