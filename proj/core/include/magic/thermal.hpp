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
#include <span>
#include <utility>
#include <vector>

#include "magic/ansatz_opt.hpp"
#include "magic/circuit.hpp"
#include "magic/pauli.hpp"

namespace magic {

inline constexpr std::size_t kThermalMaxQubits = 20;

struct ThermalProblem {
  PauliSum h;
  /// Qubitized particle number; may be empty when mu is fixed.
  PauliSum number_op;
  double beta = 1.0;
  /// Exactly one of mu / target_number must be set.
  std::optional<double> mu;
  std::optional<double> target_number;
  /// Circuit shape, search budget and seed; the objective fields are overwritten.
  OptimizerConfig cfg;

  /// Throws UsageError on beta <= 0 or an ambiguous mu specification.
  void validate() const;
};

struct ThermalResult {
  LadderCircuit best_circuit;
  double free_energy = 0.0;
  double mu_used = 0.0;
  double mean_number = 0.0;
  /// -sum p log p (natural log).
  double entropy = 0.0;
  /// Highest-weight basis states (index bit q = qubit q) with probabilities.
  std::vector<std::pair<std::uint64_t, double>> p_summary;
  std::vector<TraceEntry> trace;
};

struct ClosedFormFreeEnergy {
  double free_energy = 0.0;
  std::vector<double> p;
};

/// E_x = <x| U^dagger K U |x> for all 2^n basis states; n <= 20.
std::vector<double> basis_energies(const LadderCircuit& c, const PauliSum& k);

/// E_x from the Z-string coefficients of an operator: E_x = sum_z f_z (-1)^{z.x}.
std::vector<double> energies_from_diagonal(std::span<const std::uint64_t> zmasks,
                                           std::span<const double> coeffs, std::size_t n);

/// F = -(1/beta) log sum_x exp(-beta E_x) with p_x proportional to exp(-beta E_x).
ClosedFormFreeEnergy closed_form_free_energy(std::span<const double> e, double beta);

/// Mean particle number for the optimal p at the given mu.
double mean_number_at(const LadderCircuit& c, const ThermalProblem& problem, double mu);

/// mu with |<N>(mu) - target| <= 1e-8 by bisection; the bracket doubles up to 2^10.
/// Throws NumericalError when the target cannot be bracketed.
double solve_mu(const LadderCircuit& c, const ThermalProblem& problem);

/// Free energy, number and distribution for a fixed circuit and mu.
ThermalResult evaluate_thermal(const LadderCircuit& c, const ThermalProblem& problem, double mu,
                               std::size_t summary_size = 8);

/// Greedy search on the closed-form free energy. With a target number, mu is
/// re-solved for the incumbent circuit and the search repeated, up to 3 rounds.
ThermalResult optimize_thermal(const ThermalProblem& problem);

}  // namespace magic
