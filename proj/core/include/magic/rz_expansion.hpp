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
#include <span>
#include <vector>

#include "magic/pauli.hpp"

namespace magic {

/// Closed form of R^dagger H R for R = prod_j exp(-i theta_j Q_j / 2) with
/// mutually commuting Hermitian axes Q_j.
///
/// A term P anticommuting with the axes in A expands to
///   sum_{S subset A} prod_{j in S} sin(theta_j) prod_{j in A\S} cos(theta_j) * i^|S| Q_S P,
/// and only the diagonal branches matter for basis-state energies. Each kept
/// branch stores its Z mask and real weight; branches are ordered term by term
/// and, within a term, by increasing subset mask, so appending an axis at
/// theta = 0 leaves every evaluated sum bitwise unchanged.
class RzExpansion {
 public:
  /// `h` should be canonical; axes must commute pairwise. n <= 64, k <= 30.
  RzExpansion(const PauliSum& h, std::vector<PauliString> axes);

  std::size_t num_qubits() const { return n_; }
  std::size_t num_axes() const { return axes_.size(); }
  std::size_t num_branches() const { return branches_.size(); }
  /// Distinct Z masks of the diagonal branches, ascending.
  const std::vector<std::uint64_t>& zmasks() const { return zmasks_; }
  /// Sum of squared coefficients of H (invariant under the rotations).
  double frobenius_weight() const { return frobenius_; }

  /// <0...0| H_eff |0...0>, optionally accumulating d/dtheta into grad.
  double zero_state_energy(std::span<const double> thetas, std::span<double> grad = {}) const;

  /// Coefficient of each Z string (indexed like zmasks()) in H_eff.
  std::vector<double> diagonal_coefficients(std::span<const double> thetas) const;

  /// grad_j += sum_branches weight[slot] * value * d trig / d theta_j.
  void accumulate_gradient(std::span<const double> thetas, std::span<const double> slot_weight,
                           std::span<double> grad) const;

 private:
  struct Branch {
    std::uint32_t active;
    std::uint32_t subset;
    std::uint32_t slot;
    double value;
  };

  std::size_t n_ = 0;
  std::vector<PauliString> axes_;
  std::vector<Branch> branches_;
  std::vector<std::uint64_t> zmasks_;
  double frobenius_ = 0.0;
};

/// In-place unnormalized Walsh-Hadamard transform: out_x = sum_z in_z (-1)^{z.x}.
void walsh_hadamard(std::span<double> v);

}  // namespace magic
