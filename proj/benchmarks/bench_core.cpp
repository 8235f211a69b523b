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

#include <benchmark/benchmark.h>

#include "magic/ansatz_opt.hpp"
#include "magic/gen_stab.hpp"
#include "magic/heisenberg.hpp"
#include "magic/parallel.hpp"
#include "magic/rz_expansion.hpp"
#include "magic/thermal.hpp"

namespace magic {
namespace {

PauliString random_pauli(std::size_t n, Rng& rng) {
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) p.set(q, "IXYZ"[rng.index(4)]);
  return p;
}

PauliSum random_sum(std::size_t n, std::size_t terms, Rng& rng) {
  PauliSum h(n);
  for (std::size_t t = 0; t < terms; ++t) h.add(rng.uniform(-1, 1), random_pauli(n, rng));
  return canonicalize(h);
}

LadderCircuit random_ladder(std::size_t n, std::size_t layers, std::size_t k, Rng& rng) {
  LadderCircuit c = LadderCircuit::identity(n, layers);
  for (auto& code : c.codes) code = static_cast<std::uint8_t>(rng.index(16));
  for (std::size_t j = 0; j < k; ++j) {
    c.rz_sites.push_back(rng.index(n));
    c.thetas.push_back(rng.uniform(0, 6.28));
  }
  return c;
}

void BM_PauliProduct(benchmark::State& state) {
  Rng rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto a = random_pauli(n, rng);
  const auto b = random_pauli(n, rng);
  for (auto _ : state) benchmark::DoNotOptimize(multiply(a, b));
}
BENCHMARK(BM_PauliProduct)->Arg(8)->Arg(64)->Arg(256);

void BM_CliffordConjugation(benchmark::State& state) {
  Rng rng(2);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = random_sum(n, 4 * n, rng);
  const auto gates = random_ladder(n, 3, 0, rng).brick_gates();
  for (auto _ : state) benchmark::DoNotOptimize(conjugate_by_clifford(h, gates));
}
BENCHMARK(BM_CliffordConjugation)->Arg(6)->Arg(12)->Arg(24);

void BM_RzExpansionEnergy(benchmark::State& state) {
  Rng rng(3);
  const auto k = static_cast<std::size_t>(state.range(0));
  const auto h = random_sum(8, 40, rng);
  std::vector<PauliString> axes;
  for (std::size_t j = 0; j < k; ++j) axes.push_back(PauliString::single(8, j % 8, 'Z'));
  const RzExpansion ex(h, axes);
  std::vector<double> thetas(k, 0.3), grad(k);
  for (auto _ : state) benchmark::DoNotOptimize(ex.zero_state_energy(thetas, grad));
}
BENCHMARK(BM_RzExpansionEnergy)->Arg(1)->Arg(4)->Arg(8);

void BM_GenStabRz(benchmark::State& state) {
  Rng rng(4);
  const std::size_t n = 8;
  const auto c = random_ladder(n, 2, static_cast<std::size_t>(state.range(0)), rng).to_circuit();
  for (auto _ : state) benchmark::DoNotOptimize(simulate(c));
}
BENCHMARK(BM_GenStabRz)->Arg(2)->Arg(6);

void BM_MarginalizedCost(benchmark::State& state) {
  Rng rng(5);
  const auto h = random_sum(6, 20, rng);
  OptimizerConfig cfg;
  cfg.rz_count = static_cast<std::size_t>(state.range(0));
  const auto c = random_ladder(6, 1, cfg.rz_count, rng);
  for (auto _ : state) benchmark::DoNotOptimize(marginalized_cost(c, h, cfg));
}
BENCHMARK(BM_MarginalizedCost)->Arg(0)->Arg(2)->Arg(4);

void BM_BasisEnergies(benchmark::State& state) {
  Rng rng(6);
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto h = random_sum(n, 3 * n, rng);
  const auto c = random_ladder(n, 1, 2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(basis_energies(c, h));
}
BENCHMARK(BM_BasisEnergies)->Arg(8)->Arg(14);

}  // namespace
}  // namespace magic

BENCHMARK_MAIN();
