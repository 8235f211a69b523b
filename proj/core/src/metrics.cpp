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

#include "magic/metrics.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "magic/dense.hpp"
#include "magic/error.hpp"
#include "magic/rz_expansion.hpp"

namespace magic {

namespace {

constexpr double kNormTol = 1e-9;
constexpr double kHermitianTol = 1e-10;

std::size_t qubits_of(Eigen::Index dim) {
  std::size_t n = 0;
  while ((Eigen::Index{1} << n) < dim) ++n;
  if ((Eigen::Index{1} << n) != dim) throw DimensionError("dimension is not a power of two");
  return n;
}

std::uint64_t site_mask(const std::vector<std::size_t>& sites, std::size_t n) {
  std::uint64_t m = 0;
  for (auto q : sites) {
    if (q >= n) throw DimensionError("partition site " + std::to_string(q) + " out of range");
    m |= std::uint64_t{1} << q;
  }
  return m;
}

}  // namespace

std::vector<double> pauli_distribution(const CVector& psi) {
  const std::size_t n = qubits_of(psi.size());
  if (n > kMagicMaxQubits) throw SizeError("stabilizer entropy supports at most 8 qubits");
  if (std::abs(psi.squaredNorm() - 1.0) > kNormTol) throw NumericalError("state is not normalized");
  const std::size_t dim = std::size_t{1} << n;
  std::vector<double> xi(dim * dim);
  std::vector<double> re(dim), im(dim);
  for (std::size_t a = 0; a < dim; ++a) {
    for (std::size_t b = 0; b < dim; ++b) {
      const Complex v = std::conj(psi(static_cast<Eigen::Index>(b ^ a))) * psi(static_cast<Eigen::Index>(b));
      re[b] = v.real();
      im[b] = v.imag();
    }
    walsh_hadamard(re);
    walsh_hadamard(im);
    for (std::size_t c = 0; c < dim; ++c) {
      xi[a | (c << n)] = (re[c] * re[c] + im[c] * im[c]) / static_cast<double>(dim);
    }
  }
  return xi;
}

double stabilizer_entropy(const CVector& psi) {
  const std::size_t n = qubits_of(psi.size());
  const auto xi = pauli_distribution(psi);
  double total = 0.0;
  double h = 0.0;
  for (double p : xi) {
    total += p;
    if (p > 0.0) h -= p * std::log2(p);
  }
  if (std::abs(total - 1.0) > kNormTol) throw NumericalError("Pauli distribution is not normalized");
  return h - static_cast<double>(n);
}

double stabilizer_entropy(const GenStabState& state) { return stabilizer_entropy(state.to_dense_state()); }

CMatrix partial_transpose(const CMatrix& rho, const std::vector<std::size_t>& a) {
  const std::size_t n = qubits_of(rho.rows());
  if (rho.cols() != rho.rows()) throw DimensionError("density matrix must be square");
  const std::uint64_t m = site_mask(a, n);
  const auto dim = static_cast<std::uint64_t>(rho.rows());
  CMatrix out(rho.rows(), rho.cols());
  for (std::uint64_t i = 0; i < dim; ++i) {
    for (std::uint64_t j = 0; j < dim; ++j) {
      const std::uint64_t ii = (i & ~m) | (j & m);
      const std::uint64_t jj = (j & ~m) | (i & m);
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
          rho(static_cast<Eigen::Index>(ii), static_cast<Eigen::Index>(jj));
    }
  }
  return out;
}

double negativity(const CMatrix& rho, const std::vector<std::size_t>& a) {
  const std::size_t n = qubits_of(rho.rows());
  if (n > kDenseCircuitMaxQubits) throw SizeError("negativity supports at most 10 qubits");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > kHermitianTol) {
    throw NotHermitianError("density matrix is not Hermitian");
  }
  const CMatrix pt = partial_transpose(rho, a);
  const RVector ev = hermitian_eigenvalues(pt);
  return 0.5 * (ev.cwiseAbs().sum() - 1.0);
}

SiteNegativity partition_negativity(const CMatrix& rho, const std::vector<std::vector<std::size_t>>& partitions) {
  SiteNegativity out;
  for (const auto& a : partitions) out.per_site.push_back(negativity(rho, a));
  double sum = 0.0;
  for (double v : out.per_site) sum += v;
  out.mean = out.per_site.empty() ? 0.0 : sum / static_cast<double>(out.per_site.size());
  return out;
}

SiteNegativity site_averaged_negativity(const CMatrix& rho, std::size_t n) {
  if (qubits_of(rho.rows()) != n) throw DimensionError("density matrix does not match qubit count");
  std::vector<std::vector<std::size_t>> parts;
  for (std::size_t q = 0; q < n; ++q) parts.push_back({q});
  return partition_negativity(rho, parts);
}

CMatrix gibbs_density(const PauliSum& h, double beta, double mu, const PauliSum& number_op) {
  if (h.size() > kDenseCircuitMaxQubits) throw SizeError("Gibbs density supports at most 10 qubits");
  if (!(beta >= 0.0) || !std::isfinite(beta)) throw UsageError("beta must be non-negative and finite");
  CMatrix k = pauli_sum_to_dense(h).matrix;
  if (!number_op.empty() && mu != 0.0) {
    if (number_op.size() != h.size()) throw DimensionError("number operator size mismatch");
    k -= mu * pauli_sum_to_dense(number_op).matrix;
  }
  const Eigen::Index dim = k.rows();
  if (beta == 0.0) return CMatrix::Identity(dim, dim) / static_cast<double>(dim);
  const bool diagonal = (k - CMatrix(k.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
  if (!diagonal) return gibbs_state(k, beta);
  const RVector e = k.diagonal().real();
  RVector w = (-beta * (e.array() - e.minCoeff())).exp().matrix();
  w /= w.sum();
  return CMatrix(w.cast<Complex>().asDiagonal());
}

OffdiagDensity offdiag_density(const CMatrix& rho) {
  OffdiagDensity out;
  out.hist.edges.resize(kOffdiagBins + 1);
  for (std::size_t b = 0; b <= kOffdiagBins; ++b) {
    out.hist.edges[b] = std::pow(10.0, kOffdiagLogMin * (1.0 - static_cast<double>(b) / kOffdiagBins));
  }
  out.hist.counts.assign(kOffdiagBins, 0);
  const double width = -kOffdiagLogMin / static_cast<double>(kOffdiagBins);
  for (Eigen::Index i = 0; i < rho.rows(); ++i) {
    for (Eigen::Index j = 0; j < rho.cols(); ++j) {
      if (i == j) continue;
      const double v = std::abs(rho(i, j));
      out.mass += v;
      if (v < out.hist.edges.front()) {
        ++out.hist.below_range;
        continue;
      }
      auto bin = static_cast<std::size_t>((std::log10(v) - kOffdiagLogMin) / width);
      if (bin >= kOffdiagBins) bin = kOffdiagBins - 1;
      ++out.hist.counts[bin];
    }
  }
  return out;
}

OffdiagDensity gibbs_offdiag_density(const PauliSum& h_eff, double beta, double mu, const PauliSum& number_op) {
  return offdiag_density(gibbs_density(h_eff, beta, mu, number_op));
}

}  // namespace magic
