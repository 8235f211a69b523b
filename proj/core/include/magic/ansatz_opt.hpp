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
#include <string>
#include <vector>

#include "magic/circuit.hpp"
#include "magic/pauli.hpp"
#include "magic/rz_expansion.hpp"

namespace magic {

enum class ObjectiveKind {
  kGroundEnergy,   // <0|U^dagger H U|0>
  kFreeEnergy,     // -(1/beta) log sum_x exp(-beta <x|U^dagger (H - mu N) U|x>)
  kOffdiagWeight,  // squared off-diagonal coefficient mass of U^dagger H U
};

std::string to_string(ObjectiveKind kind);
ObjectiveKind objective_kind_from_string(const std::string& s);

struct Objective {
  ObjectiveKind kind = ObjectiveKind::kGroundEnergy;
  double beta = 1.0;
  double mu = 0.0;
  /// Number operator for the free-energy objective; may be empty.
  PauliSum number_op;
};

enum class CoordinateSchedule { kRandom, kRoundRobin };

struct OptimizerConfig {
  std::size_t layers = 1;
  std::size_t rz_count = 0;
  /// Brickwork layers before the Rz layer; LadderCircuit::kRzAtEnd places it last.
  std::size_t rz_layer = LadderCircuit::kRzAtEnd;
  std::size_t n_init = 1000;
  std::size_t n_iter = 100;
  std::size_t theta_starts = 10;
  double grad_tol = 1e-8;
  std::size_t max_grad_iters = 500;
  std::uint64_t seed = 0;
  Objective objective;
  /// Prepend the term-pinning warm-start Clifford to every restart.
  bool warm_start = true;
  CoordinateSchedule schedule = CoordinateSchedule::kRandom;
  /// Keep per-iteration traces for every restart.
  bool keep_trace = true;
  /// 0 selects MAGIC_LADDER_THREADS or the hardware concurrency.
  std::size_t threads = 0;

  /// Throws UsageError when a count is zero or k > n * L.
  void validate(std::size_t n) const;
};

struct TraceEntry {
  std::size_t iteration = 0;
  /// Coordinate swept at this iteration; -1 for the initial evaluation.
  long coordinate = -1;
  double cost = 0.0;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct RestartEndpoint {
  std::size_t restart_id = 0;
  double cost = 0.0;

  friend bool operator==(const RestartEndpoint&, const RestartEndpoint&) = default;
};

struct OptResult {
  LadderCircuit best_circuit;
  double best_cost = 0.0;
  /// Trace of the winning restart.
  std::vector<TraceEntry> trace;
  std::size_t restart_id = 0;
  std::uint64_t seed_used = 0;
  std::vector<RestartEndpoint> endpoints;
  /// Per-restart traces (empty unless keep_trace).
  std::vector<std::vector<TraceEntry>> restart_traces;
};

struct MarginalizedCost {
  double cost = 0.0;
  std::vector<double> thetas;
};

/// Evaluates f(X, Theta) for one Hamiltonian and objective, caching the
/// Clifford-conjugated operator between calls that share gate codes.
///
/// For U = W * Rz(Theta) * B (brickwork B, frame W) the Rz layer is rewritten
/// as rotations about the axes B^dagger Z_q B acting on B^dagger W^dagger H W B,
/// so only the cached conjugation depends on the gate codes.
class CostModel {
 public:
  CostModel(const PauliSum& h, Objective objective);

  std::size_t num_qubits() const { return h_.size(); }
  const Objective& objective() const { return objective_; }

  /// f(X, Theta) at the circuit's own angles.
  double cost(const LadderCircuit& c);
  /// f and its analytic gradient with respect to the angles.
  double cost_and_gradient(const LadderCircuit& c, std::span<double> grad);

  /// min over the given starting angles of gradient-descent-refined f(X, .).
  MarginalizedCost marginalize(const LadderCircuit& c, std::span<const std::vector<double>> starts,
                               double grad_tol, std::size_t max_iters);

  /// The expansion for the circuit's discrete parameters.
  const RzExpansion& expansion(const LadderCircuit& c);

 private:
  double evaluate(const RzExpansion& ex, std::span<const double> thetas, std::span<double> grad) const;

  PauliSum h_;
  Objective objective_;
  std::vector<CliffordGate> cached_frame_;
  std::size_t cached_rz_position_ = 0;
  std::vector<std::uint8_t> cached_codes_;
  std::vector<std::size_t> cached_sites_;
  bool cache_valid_ = false;
  PauliSum conjugated_;
  std::vector<PauliString> site_axes_;
  std::optional<RzExpansion> expansion_;
};

/// f(X) = min_Theta f(X, Theta) over {Theta = 0, incumbent, theta_starts
/// random draws in [0, 2 pi)^k}. `x` carries the incumbent angles.
MarginalizedCost marginalized_cost(const LadderCircuit& x, const PauliSum& h,
                                   const OptimizerConfig& cfg);

/// One coordinate sweep of the greedy search. Coordinates 0..nL-1 are gate
/// slots (16 values), nL..nL+k-1 are Rz sites (n values). Lowest value wins ties.
LadderCircuit greedy_step(const LadderCircuit& x, std::size_t coordinate, const PauliSum& h,
                          const OptimizerConfig& cfg);

/// Multi-restart greedy coordinate search; best restart by (cost, id).
OptResult optimize(const PauliSum& h, const OptimizerConfig& cfg);
/// As optimize, with restart 0 started from `initial` instead of random codes.
OptResult optimize_from(const PauliSum& h, const OptimizerConfig& cfg, const LadderCircuit& initial);

/// One result per k = 0..k_max; level k+1 is seeded with the level-k winner
/// plus one Rz at theta = 0 on the best site.
std::vector<OptResult> ladder_run(const PauliSum& h, std::size_t k_max, const OptimizerConfig& cfg);

/// Zeroth-order term pinning: rotate the largest off-diagonal term onto a
/// single-site Z while that strictly lowers offdiag_weight, at most n times.
/// Returns the Clifford frame in application order (W with H_eff = W^dagger H W).
std::vector<CliffordGate> warm_start_tableau(const PauliSum& h);

struct SymmetryStats {
  double mean = 0.0;
  double variance = 0.0;
  /// (eigenvalue, weight) of U|0> on the eigenspaces; only for n <= 10.
  std::vector<std::pair<double, double>> histogram;
};

/// Mean, variance and eigenspace weights of each operator in U|0...0>.
std::vector<SymmetryStats> symmetry_report(const LadderCircuit& c, std::span<const PauliSum> ops);

}  // namespace magic
