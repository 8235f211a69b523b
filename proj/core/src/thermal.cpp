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

#include "magic/thermal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "magic/error.hpp"
#include "magic/heisenberg.hpp"
#include "magic/rz_expansion.hpp"

namespace magic {

namespace {

constexpr double kMuTol = 1e-8;
constexpr double kMaxBracket = 1024.0;

struct ThermalVectors {
  std::vector<double> energy;  // E_x of H
  std::vector<double> number;  // n_x of N (zeros when N is empty)
};

ThermalVectors thermal_vectors(const LadderCircuit& c, const ThermalProblem& problem) {
  ThermalVectors v;
  v.energy = basis_energies(c, problem.h);
  if (problem.number_op.size() != 0 && !problem.number_op.empty()) {
    v.number = basis_energies(c, problem.number_op);
  } else {
    v.number.assign(v.energy.size(), 0.0);
  }
  return v;
}

std::vector<double> shifted(const ThermalVectors& v, double mu) {
  std::vector<double> e(v.energy.size());
  for (std::size_t x = 0; x < e.size(); ++x) e[x] = v.energy[x] - mu * v.number[x];
  return e;
}

double mean_of(const ThermalVectors& v, double mu, double beta) {
  const auto cf = closed_form_free_energy(shifted(v, mu), beta);
  double m = 0.0;
  for (std::size_t x = 0; x < cf.p.size(); ++x) m += cf.p[x] * v.number[x];
  return m;
}

double solve_mu_vectors(const ThermalVectors& v, double target, double beta) {
  double bound = 1.0;
  while (mean_of(v, -bound, beta) > target || mean_of(v, bound, beta) < target) {
    bound *= 2.0;
    if (bound > kMaxBracket) {
      throw NumericalError("target particle number " + std::to_string(target) +
                           " not reachable for |mu| <= 1024");
    }
  }
  double lo = -bound;
  double hi = bound;
  double best_mu = 0.0;
  double best_err = std::numeric_limits<double>::infinity();
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double m = mean_of(v, mid, beta);
    const double err = std::abs(m - target);
    if (err < best_err) {
      best_err = err;
      best_mu = mid;
    }
    if (err <= kMuTol || mid == lo || mid == hi) break;
    (m < target ? lo : hi) = mid;
  }
  return best_mu;
}

ThermalResult summarize(const LadderCircuit& c, const ThermalVectors& v, double mu, double beta,
                        std::size_t summary_size) {
  ThermalResult r;
  r.best_circuit = c;
  r.mu_used = mu;
  auto cf = closed_form_free_energy(shifted(v, mu), beta);
  r.free_energy = cf.free_energy;
  for (std::size_t x = 0; x < cf.p.size(); ++x) {
    r.mean_number += cf.p[x] * v.number[x];
    if (cf.p[x] > 0.0) r.entropy -= cf.p[x] * std::log(cf.p[x]);
  }
  std::vector<std::uint64_t> order(cf.p.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t keep = std::min(summary_size, order.size());
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::uint64_t a, std::uint64_t b) { return cf.p[a] > cf.p[b] || (cf.p[a] == cf.p[b] && a < b); });
  for (std::size_t i = 0; i < keep; ++i) r.p_summary.emplace_back(order[i], cf.p[order[i]]);
  return r;
}

}  // namespace

void ThermalProblem::validate() const {
  if (!(beta > 0.0) || !std::isfinite(beta)) throw UsageError("beta must be positive and finite");
  if (mu.has_value() == target_number.has_value()) {
    throw UsageError("exactly one of mu and target_number must be set");
  }
  if (target_number && (number_op.size() == 0 || number_op.empty())) {
    throw UsageError("a target particle number requires a number operator");
  }
  if (number_op.size() != 0 && number_op.size() != h.size()) {
    throw DimensionError("number operator and Hamiltonian qubit counts differ");
  }
  if (h.size() > kThermalMaxQubits) throw SizeError("thermal problems support at most 20 qubits");
}

std::vector<double> energies_from_diagonal(std::span<const std::uint64_t> zmasks, std::span<const double> coeffs,
                                           std::size_t n) {
  if (n > kThermalMaxQubits) throw SizeError("basis enumeration supports at most 20 qubits");
  std::vector<double> e(std::size_t{1} << n, 0.0);
  for (std::size_t s = 0; s < zmasks.size(); ++s) {
    if (zmasks[s] >= e.size()) throw DimensionError("Z mask out of range");
    e[zmasks[s]] += coeffs[s];
  }
  walsh_hadamard(e);
  return e;
}

std::vector<double> basis_energies(const LadderCircuit& c, const PauliSum& k) {
  if (c.n > kThermalMaxQubits) throw SizeError("basis enumeration supports at most 20 qubits");
  const PauliSum heff = transform(k, c);
  std::vector<std::uint64_t> masks;
  std::vector<double> coeffs;
  for (const auto& t : heff.terms()) {
    if (!t.op.is_diagonal()) continue;
    masks.push_back(t.op.z().low());
    coeffs.push_back(t.op.sign() * t.coeff);
  }
  return energies_from_diagonal(masks, coeffs, c.n);
}

ClosedFormFreeEnergy closed_form_free_energy(std::span<const double> e, double beta) {
  if (!(beta > 0.0)) throw UsageError("beta must be positive");
  if (e.empty()) throw DimensionError("empty energy vector");
  ClosedFormFreeEnergy r;
  const double m = *std::min_element(e.begin(), e.end());
  if (!std::isfinite(m)) throw NumericalError("non-finite basis energy");
  r.p.resize(e.size());
  double z = 0.0;
  for (std::size_t x = 0; x < e.size(); ++x) {
    if (!std::isfinite(e[x])) throw NumericalError("non-finite basis energy");
    r.p[x] = std::exp(-beta * (e[x] - m));
    z += r.p[x];
  }
  for (auto& p : r.p) p /= z;
  r.free_energy = m - std::log(z) / beta;
  return r;
}

double mean_number_at(const LadderCircuit& c, const ThermalProblem& problem, double mu) {
  return mean_of(thermal_vectors(c, problem), mu, problem.beta);
}

double solve_mu(const LadderCircuit& c, const ThermalProblem& problem) {
  if (!problem.target_number) throw UsageError("solve_mu needs a target particle number");
  return solve_mu_vectors(thermal_vectors(c, problem), *problem.target_number, problem.beta);
}

ThermalResult evaluate_thermal(const LadderCircuit& c, const ThermalProblem& problem, double mu,
                               std::size_t summary_size) {
  return summarize(c, thermal_vectors(c, problem), mu, problem.beta, summary_size);
}

ThermalResult optimize_thermal(const ThermalProblem& problem) {
  problem.validate();
  OptimizerConfig cfg = problem.cfg;
  cfg.objective.kind = ObjectiveKind::kFreeEnergy;
  cfg.objective.beta = problem.beta;
  cfg.objective.number_op = problem.number_op;
  if (problem.mu) {
    cfg.objective.mu = *problem.mu;
    const OptResult r = optimize(problem.h, cfg);
    ThermalResult out = evaluate_thermal(r.best_circuit, problem, *problem.mu);
    out.trace = r.trace;
    return out;
  }
  LadderCircuit start = LadderCircuit::identity(problem.h.size(), cfg.layers);
  start.rz_layer = cfg.rz_layer;
  if (cfg.warm_start) start.frame = warm_start_tableau(problem.h);
  double mu = solve_mu(start, problem);
  OptResult r;
  for (int round = 0; round < 3; ++round) {
    cfg.objective.mu = mu;
    r = round == 0 ? optimize(problem.h, cfg) : optimize_from(problem.h, cfg, r.best_circuit);
    const double next = solve_mu(r.best_circuit, problem);
    const bool settled = std::abs(next - mu) <= kMuTol;
    mu = next;
    if (settled) break;
  }
  ThermalResult out = evaluate_thermal(r.best_circuit, problem, mu);
  out.trace = r.trace;
  return out;
}

}  // namespace magic
