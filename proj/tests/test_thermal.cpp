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
#include <numeric>

#include "magic/dense.hpp"
#include "magic/error.hpp"
#include "magic/heisenberg.hpp"
#include "magic/thermal.hpp"
#include "test_util.hpp"

namespace magic {
namespace {

ThermalProblem small_problem(const PauliSum& h, double beta) {
  ThermalProblem p;
  p.h = h;
  p.beta = beta;
  p.mu = 0.0;
  p.cfg.layers = 1;
  p.cfg.n_init = 4;
  p.cfg.n_iter = 20;
  p.cfg.theta_starts = 2;
  p.cfg.seed = 5;
  p.cfg.threads = 1;
  return p;
}

TEST(ClosedForm, DegenerateAndSplitLevels) {
  const std::vector<double> flat{0.0, 0.0};
  const auto a = closed_form_free_energy(flat, 1.0);
  EXPECT_NEAR(a.free_energy, -std::log(2.0), 1e-15);
  EXPECT_NEAR(a.p[0], 0.5, 1e-15);
  const std::vector<double> split{0.0, 1.0};
  const auto b = closed_form_free_energy(split, 2.0);
  EXPECT_NEAR(b.free_energy, -0.5 * std::log(1.0 + std::exp(-2.0)), 1e-15);
  EXPECT_NEAR(b.p[1], std::exp(-2.0) / (1.0 + std::exp(-2.0)), 1e-15);
}

TEST(ClosedForm, StableUnderLargeShift) {
  Rng rng(81);
  std::vector<double> e(64);
  for (auto& v : e) v = rng.uniform(-3.0, 3.0);
  const auto a = closed_form_free_energy(e, 4.0);
  for (auto& v : e) v += 1e6;
  const auto b = closed_form_free_energy(e, 4.0);
  EXPECT_TRUE(std::isfinite(b.free_energy));
  EXPECT_NEAR(b.free_energy - 1e6, a.free_energy, 1e-9);
  for (std::size_t i = 0; i < e.size(); ++i) EXPECT_NEAR(a.p[i], b.p[i], 1e-9);
  EXPECT_NEAR(std::accumulate(b.p.begin(), b.p.end(), 0.0), 1.0, 1e-12);
}

TEST(ClosedForm, LowTemperatureLimit) {
  const std::vector<double> e{0.3, -1.2, 0.5, -1.2};
  const auto r = closed_form_free_energy(e, 1e4);
  EXPECT_NEAR(r.free_energy, -1.2 - std::log(2.0) / 1e4, 1e-12);
}

TEST(BasisEnergies, MatchDenseDiagonal) {
  Rng rng(82);
  for (int trial = 0; trial < 10; ++trial) {
    const auto h = test::random_hamiltonian(4, 12, rng);
    const auto c = test::random_ladder(4, 2, 2, rng, 2);
    const auto e = basis_energies(c, h);
    const CMatrix u = circuit_to_dense(c).matrix;
    const CMatrix eff = u.adjoint() * pauli_sum_to_dense(h).matrix * u;
    for (std::size_t x = 0; x < 16; ++x) EXPECT_NEAR(e[x], eff(x, x).real(), 1e-10);
  }
}

TEST(BasisEnergies, FromDiagonalCoefficients) {
  const std::vector<std::uint64_t> z{0b000, 0b001, 0b110};
  const std::vector<double> f{0.5, -1.0, 2.0};
  const auto e = energies_from_diagonal(z, f, 3);
  for (std::uint64_t x = 0; x < 8; ++x) {
    const double want = 0.5 - ((x & 1) ? -1.0 : 1.0) + 2.0 * ((std::popcount(x & 6u) % 2) ? -1.0 : 1.0);
    EXPECT_NEAR(e[x], want, 1e-15);
  }
}

TEST(Thermal, ValidateRejectsBadInputs) {
  auto p = small_problem(test::tfim(3, 1.0), 1.0);
  EXPECT_NO_THROW(p.validate());
  p.beta = 0.0;
  EXPECT_THROW(p.validate(), UsageError);
  p.beta = 1.0;
  p.target_number = 1.0;
  EXPECT_THROW(p.validate(), UsageError);
  p.mu.reset();
  EXPECT_THROW(p.validate(), UsageError);
  p.number_op = test::number_operator(3);
  EXPECT_NO_THROW(p.validate());
}

TEST(Thermal, VariationalBoundHolds) {
  Rng rng(83);
  for (int trial = 0; trial < 5; ++trial) {
    const auto h = test::random_hamiltonian(4, 12, rng);
    for (double beta : {0.3, 1.0, 5.0}) {
      const auto r = optimize_thermal(small_problem(h, beta));
      const auto exact = exact_grand_free_energy(h, PauliSum(4), beta, 0.0);
      EXPECT_GE(r.free_energy, exact.free_energy - 1e-9);
      const auto again = evaluate_thermal(r.best_circuit, small_problem(h, beta), 0.0);
      EXPECT_NEAR(again.free_energy, r.free_energy, 1e-12);
    }
  }
}

TEST(Thermal, DiagonalHamiltonianIsExact) {
  PauliSum h(4);
  h.add(-1.0, "ZZII");
  h.add(0.4, "IZZI");
  h.add(-0.7, "IIIZ");
  h.add(0.2, "ZIIZ");
  h = canonicalize(h);
  for (double beta : {0.5, 2.0}) {
    const auto r = optimize_thermal(small_problem(h, beta));
    EXPECT_NEAR(r.free_energy, exact_grand_free_energy(h, PauliSum(4), beta, 0.0).free_energy, 1e-10);
  }
}

TEST(Thermal, EntropyAndEnergyAreConsistent) {
  Rng rng(84);
  const auto h = test::random_hamiltonian(3, 8, rng);
  const auto c = test::random_ladder(3, 1, 1, rng);
  const double beta = 1.3;
  const auto r = evaluate_thermal(c, small_problem(h, beta), 0.0, 8);
  const auto e = basis_energies(c, h);
  const auto cf = closed_form_free_energy(e, beta);
  double mean_e = 0.0;
  for (std::size_t x = 0; x < e.size(); ++x) mean_e += cf.p[x] * e[x];
  EXPECT_NEAR(r.free_energy, mean_e - r.entropy / beta, 1e-12);
  ASSERT_EQ(r.p_summary.size(), 8u);
  for (std::size_t i = 1; i < r.p_summary.size(); ++i) EXPECT_GE(r.p_summary[i - 1].second, r.p_summary[i].second);
}

TEST(Thermal, GaugeShiftMovesFreeEnergyOnly) {
  Rng rng(85);
  const auto h = test::random_hamiltonian(3, 8, rng);
  auto shifted = h;
  shifted.add(2.5, PauliString(3));
  shifted = canonicalize(shifted);
  const auto c = test::random_ladder(3, 1, 1, rng);
  const auto a = evaluate_thermal(c, small_problem(h, 0.8), 0.0);
  const auto b = evaluate_thermal(c, small_problem(shifted, 0.8), 0.0);
  EXPECT_NEAR(b.free_energy - a.free_energy, 2.5, 1e-12);
  EXPECT_NEAR(a.entropy, b.entropy, 1e-12);
}

TEST(Thermal, ChemicalPotentialShiftsEnergies) {
  const std::size_t n = 3;
  const auto h = test::tfim(n, 0.7);
  auto p = small_problem(h, 1.1);
  p.number_op = test::number_operator(n);
  p.mu = 0.6;
  const auto c = LadderCircuit::identity(n, 1);
  const auto eh = basis_energies(c, h);
  const auto en = basis_energies(c, p.number_op);
  std::vector<double> k(eh.size());
  for (std::size_t x = 0; x < k.size(); ++x) k[x] = eh[x] - 0.6 * en[x];
  EXPECT_NEAR(evaluate_thermal(c, p, 0.6).free_energy, closed_form_free_energy(k, 1.1).free_energy, 1e-12);
}

TEST(SolveMu, HitsTargetNumber) {
  const std::size_t n = 4;
  Rng rng(86);
  const auto h = test::random_hamiltonian(n, 10, rng);
  auto p = small_problem(h, 1.5);
  p.mu.reset();
  p.number_op = test::number_operator(n);
  // The identity frame keeps N diagonal, so every target in (0, n) is reachable.
  const auto c = LadderCircuit::identity(n, 1);
  for (double target : {0.5, 2.0, 3.3}) {
    p.target_number = target;
    const double mu = solve_mu(c, p);
    EXPECT_NEAR(mean_number_at(c, p, mu), target, 1e-8);
  }
  double prev = -1.0;
  for (double mu = -4.0; mu <= 4.0; mu += 0.5) {
    const double m = mean_number_at(c, p, mu);
    EXPECT_GE(m, prev - 1e-12);
    prev = m;
  }
}

TEST(SolveMu, UnreachableTargetThrows) {
  const std::size_t n = 3;
  auto p = small_problem(test::tfim(n, 1.0), 1.0);
  p.mu.reset();
  p.number_op = test::number_operator(n);
  p.target_number = 3.5;
  EXPECT_THROW(solve_mu(LadderCircuit::identity(n, 1), p), NumericalError);
}

TEST(Thermal, ConstrainedModeMeetsTarget) {
  const std::size_t n = 4;
  auto p = small_problem(test::tfim(n, 1.0), 2.0);
  p.mu.reset();
  p.number_op = test::number_operator(n);
  p.target_number = 1.5;
  const auto r = optimize_thermal(p);
  EXPECT_NEAR(r.mean_number, 1.5, 1e-8);
  const auto exact = exact_grand_free_energy(p.h, p.number_op, 2.0, r.mu_used);
  EXPECT_GE(r.free_energy, exact.free_energy - 1e-9);
}

}  // namespace
}  // namespace magic
