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
#include <numbers>
#include <utility>
#include <vector>

#include "magic/linalg.hpp"
#include "magic/pauli.hpp"

namespace magic {

/// 2 pi * 8.627e5 MHz um^6 (87Rb, 70S_1/2).
inline constexpr double kRydbergC6 = 2.0 * std::numbers::pi * 8.627e5;
inline constexpr double kDefaultSpacing = 9.37;
inline constexpr std::size_t kDefaultSegments = 10;
inline constexpr std::size_t kPulseMaxAtoms = 10;

struct AtomChain {
  std::vector<double> positions;  // um, strictly increasing
  double c6 = kRydbergC6;
  bool nearest_only = true;

  static AtomChain uniform(std::size_t atoms, double spacing = kDefaultSpacing);

  std::size_t size() const { return positions.size(); }
  /// C6 / |x_i - x_j|^6.
  double interaction(std::size_t i, std::size_t j) const;
  /// Interacting pairs (i < j): nearest neighbours only, or all pairs.
  std::vector<std::pair<std::size_t, std::size_t>> pairs() const;
  /// Throws DimensionError unless positions increase strictly and c6 > 0.
  void validate() const;
};

/// Piecewise-constant controls on equal segments, stored [atom * segments + s].
/// u_x = (Omega/2) cos phi, u_y = -(Omega/2) sin phi and Delta, all in rad/us.
struct PulseSchedule {
  std::size_t atoms = 0;
  std::size_t segments = kDefaultSegments;
  double duration = 1.0;  // us
  std::vector<double> ux;
  std::vector<double> uy;
  std::vector<double> delta;

  static PulseSchedule zeros(std::size_t atoms, std::size_t segments, double duration);

  std::size_t index(std::size_t atom, std::size_t s) const { return atom * segments + s; }
  std::size_t num_parameters() const { return 3 * atoms * segments; }
  /// Flat view ux | uy | delta.
  std::vector<double> parameters() const;
  void set_parameters(const std::vector<double>& p);
  void validate() const;

  friend bool operator==(const PulseSchedule&, const PulseSchedule&) = default;
};

/// H = sum_j (u_x X_j + u_y Y_j) + sum_j (Delta_j/2 - sum_i V_ij/4) Z_j
///     + sum_{i<j} V_ij/4 Z_i Z_j + (sum_{i<j} V_ij/4 - sum_j Delta_j/2) I,
/// with |g> = |0> and n = (I - Z)/2. Canonical.
PauliSum rydberg_pauli_hamiltonian(const AtomChain& chain, const PulseSchedule& schedule, std::size_t segment);

/// psi(T) by exact exponentials per segment (each split into `substeps` equal
/// pieces). Throws NumericalError if the norm drifts by more than 1e-9.
CVector evolve(const AtomChain& chain, const PulseSchedule& schedule, const CVector& psi0,
               std::size_t substeps = 1);

/// <psi(T)| target |psi(T)> from |g...g>.
double pulse_objective(const AtomChain& chain, const PulseSchedule& schedule, const PauliSum& target);

/// Central finite differences over all control values.
std::vector<double> pulse_gradient(const AtomChain& chain, const PulseSchedule& schedule, const PauliSum& target,
                                   double step = 1e-4);
/// Richardson extrapolation of the central difference: (4 D(h/2) - D(h)) / 3.
std::vector<double> pulse_gradient_richardson(const AtomChain& chain, const PulseSchedule& schedule,
                                              const PauliSum& target, double step = 1e-3);

/// Relabels qubit q of `h` as qubit perm[q].
PauliSum permute_qubits(const PauliSum& h, const std::vector<std::size_t>& perm);

struct PulseOptConfig {
  std::size_t restarts = 20;
  std::size_t max_iters = 50;
  std::size_t segments = kDefaultSegments;
  std::uint64_t seed = 0;
  /// Initial controls are uniform in [-init_scale, init_scale] rad/us.
  double init_scale = 2.0 * std::numbers::pi;
  double fd_step = 1e-4;
  std::size_t threads = 0;
};

struct PulseRestart {
  std::size_t restart_id = 0;
  double initial_objective = 0.0;
  double final_objective = 0.0;
  std::vector<double> trace;
  PulseSchedule schedule;
};

struct PulseOptResult {
  PulseSchedule best_schedule;
  double best_objective = 0.0;
  std::size_t best_restart = 0;
  std::vector<PulseRestart> restarts;
};

/// Finite-difference gradient descent with a backtracking line search, one
/// independent random initialization per restart.
PulseOptResult optimize_pulses(const AtomChain& chain, double duration, const PauliSum& target,
                               const PulseOptConfig& cfg);

}  // namespace magic
