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
#include <vector>

#include "magic/gen_stab.hpp"
#include "magic/linalg.hpp"
#include "magic/pauli.hpp"

namespace magic {

inline constexpr std::size_t kMagicMaxQubits = 8;
inline constexpr std::size_t kOffdiagBins = 64;
inline constexpr double kOffdiagLogMin = -16.0;

/// Histogram of |rho_ij| (i != j) on 64 log10-spaced bins over [1e-16, 1].
struct OffdiagHistogram {
  /// kOffdiagBins + 1 bin edges.
  std::vector<double> edges;
  std::vector<std::uint64_t> counts;
  /// Entries below 1e-16, zeros included.
  std::uint64_t below_range = 0;
};

struct MetricReport {
  double magic_M = 0.0;
  std::vector<double> negativity_per_site;
  double negativity_mean = 0.0;
  OffdiagHistogram offdiag_hist;
  double offdiag_mass = 0.0;
};

/// Xi(P) = <psi|P|psi>^2 / 2^n over all 4^n unsigned Pauli words, indexed x | z << n.
std::vector<double> pauli_distribution(const CVector& psi);

/// M = H(Xi) - n in bits; n <= 8. Throws on non-normalized input.
double stabilizer_entropy(const CVector& psi);
double stabilizer_entropy(const GenStabState& state);

/// (||rho^{T_A}||_1 - 1) / 2 for the partial transpose on the sites in `a`; n <= 10.
double negativity(const CMatrix& rho, const std::vector<std::size_t>& a);

/// Partial transpose on the sites in `a`.
CMatrix partial_transpose(const CMatrix& rho, const std::vector<std::size_t>& a);

struct SiteNegativity {
  std::vector<double> per_site;
  double mean = 0.0;
};

/// Negativity of every single-site bipartition, or of each given partition.
SiteNegativity site_averaged_negativity(const CMatrix& rho, std::size_t n);
SiteNegativity partition_negativity(const CMatrix& rho, const std::vector<std::vector<std::size_t>>& partitions);

/// rho = exp(-beta (h - mu N)) / Z for the given (already transformed) operators; n <= 10.
CMatrix gibbs_density(const PauliSum& h, double beta, double mu, const PauliSum& number_op);

struct OffdiagDensity {
  OffdiagHistogram hist;
  double mass = 0.0;
};

OffdiagDensity offdiag_density(const CMatrix& rho);
OffdiagDensity gibbs_offdiag_density(const PauliSum& h_eff, double beta, double mu, const PauliSum& number_op);

}  // namespace magic
