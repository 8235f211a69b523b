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

#include "magic/dense.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <string>

#include "magic/error.hpp"

namespace magic {

namespace {

const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void require_at_most(std::size_t n, std::size_t cap, const char* what) {
  if (n > cap) {
    throw SizeError(std::string(what) + " limited to " + std::to_string(cap) + " qubits, got " +
                    std::to_string(n));
  }
}

Eigen::Index dim_of(std::size_t n) { return static_cast<Eigen::Index>(std::size_t{1} << n); }

CVector apply_sum(const PauliSum& h, const CVector& v) {
  CVector out = CVector::Zero(v.size());
  for (const auto& t : h.terms()) out += t.coeff * apply_pauli(t.op, v);
  return out;
}

GroundState lanczos_ground(const PauliSum& h) {
  const Eigen::Index dim = dim_of(h.size());
  CVector start = CVector::Zero(dim);
  // Deterministic, generic start vector.
  for (Eigen::Index i = 0; i < dim; ++i) {
    start(i) = Complex(std::cos(0.37 * static_cast<double>(i) + 0.1),
                       std::sin(0.91 * static_cast<double>(i) + 0.3));
  }
  GroundState best;
  const int krylov = static_cast<int>(std::min<Eigen::Index>(dim, 160));
  for (int restart = 0; restart < 30; ++restart) {
    start.normalize();
    std::vector<CVector> basis;
    std::vector<double> alpha;
    std::vector<double> beta;
    CVector q = start;
    for (int j = 0; j < krylov; ++j) {
      basis.push_back(q);
      CVector w = apply_sum(h, q);
      const double a = q.dot(w).real();
      alpha.push_back(a);
      for (int pass = 0; pass < 2; ++pass) {
        for (const auto& b : basis) w -= b * b.dot(w);
      }
      const double bnorm = w.norm();
      if (bnorm < 1e-12 || j + 1 == krylov) break;
      beta.push_back(bnorm);
      q = w / bnorm;
    }
    const auto m = static_cast<Eigen::Index>(alpha.size());
    Eigen::MatrixXd tri = Eigen::MatrixXd::Zero(m, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      tri(i, i) = alpha[static_cast<std::size_t>(i)];
      if (i + 1 < m) tri(i, i + 1) = tri(i + 1, i) = beta[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(tri);
    CVector ritz = CVector::Zero(dim);
    for (Eigen::Index i = 0; i < m; ++i) ritz += es.eigenvectors()(i, 0) * basis[static_cast<std::size_t>(i)];
    ritz.normalize();
    best.energy = es.eigenvalues()(0);
    best.state = ritz;
    const double residual = (apply_sum(h, ritz) - best.energy * ritz).norm();
    if (residual <= 1e-9) return best;
    start = ritz;
  }
  throw NumericalError("Lanczos ground-state solve did not converge");
}

}  // namespace

CVector apply_pauli(const PauliString& p, const CVector& v) {
  require_at_most(p.size(), 30, "dense Pauli action");
  if (v.size() != dim_of(p.size())) throw DimensionError("state dimension does not match Pauli");
  const std::uint64_t x = p.x().low();
  const std::uint64_t z = p.z().low();
  const Complex f = kIPow[(p.phase() + std::popcount(x & z)) & 3];
  CVector out(v.size());
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const auto uk = static_cast<std::uint64_t>(k);
    const double s = (std::popcount(z & uk) & 1) ? -1.0 : 1.0;
    out(static_cast<Eigen::Index>(uk ^ x)) = f * s * v(k);
  }
  return out;
}

CMatrix pauli_matrix(const PauliString& p) {
  require_at_most(p.size(), kDenseOperatorMaxQubits, "dense Pauli matrix");
  const Eigen::Index dim = dim_of(p.size());
  CMatrix m = CMatrix::Zero(dim, dim);
  const std::uint64_t x = p.x().low();
  const std::uint64_t z = p.z().low();
  const Complex f = kIPow[(p.phase() + std::popcount(x & z)) & 3];
  for (Eigen::Index k = 0; k < dim; ++k) {
    const auto uk = static_cast<std::uint64_t>(k);
    const double s = (std::popcount(z & uk) & 1) ? -1.0 : 1.0;
    m(static_cast<Eigen::Index>(uk ^ x), k) = f * s;
  }
  return m;
}

DenseOperator pauli_sum_to_dense(const PauliSum& h) {
  require_at_most(h.size(), kDenseOperatorMaxQubits, "pauli_sum_to_dense");
  const Eigen::Index dim = dim_of(h.size());
  DenseOperator out{h.size(), CMatrix::Zero(dim, dim), false};
  for (const auto& t : h.terms()) {
    const std::uint64_t x = t.op.x().low();
    const std::uint64_t z = t.op.z().low();
    const Complex f = t.coeff * kIPow[(t.op.phase() + std::popcount(x & z)) & 3];
    for (Eigen::Index k = 0; k < dim; ++k) {
      const auto uk = static_cast<std::uint64_t>(k);
      const double s = (std::popcount(z & uk) & 1) ? -1.0 : 1.0;
      out.matrix(static_cast<Eigen::Index>(uk ^ x), k) += f * s;
    }
  }
  out.hermitian = (out.matrix - out.matrix.adjoint()).cwiseAbs().maxCoeff() <= 1e-12;
  return out;
}

CMatrix clifford_gate_matrix(const CliffordGate& g, std::size_t n) {
  const CMatrix p = pauli_matrix(g.generator(n));
  const Eigen::Index dim = dim_of(n);
  return (CMatrix::Identity(dim, dim) + Complex(0, 1) * p) / std::sqrt(2.0);
}

CMatrix rz_matrix(std::size_t site, double theta, std::size_t n) {
  if (site >= n) throw DimensionError("Rz site out of range");
  const Eigen::Index dim = dim_of(n);
  CMatrix m = CMatrix::Zero(dim, dim);
  const Complex lo = std::polar(1.0, -theta / 2);
  const Complex hi = std::polar(1.0, theta / 2);
  for (Eigen::Index k = 0; k < dim; ++k) {
    m(k, k) = ((static_cast<std::uint64_t>(k) >> site) & 1u) ? hi : lo;
  }
  return m;
}

DenseOperator circuit_to_dense(const Circuit& c) {
  require_at_most(c.n, kDenseCircuitMaxQubits, "circuit_to_dense");
  c.validate();
  const Eigen::Index dim = dim_of(c.n);
  CMatrix u = CMatrix::Identity(dim, dim);
  for (const auto& g : c.gates) {
    if (const auto* cg = std::get_if<CliffordGate>(&g)) {
      u = clifford_gate_matrix(*cg, c.n) * u;
    } else {
      const auto& rz = std::get<RzGate>(g);
      u = rz_matrix(rz.site, rz.theta, c.n) * u;
    }
  }
  return {c.n, u, false};
}

DenseOperator circuit_to_dense(const LadderCircuit& c) { return circuit_to_dense(c.to_circuit()); }

CVector zero_state(std::size_t n) {
  require_at_most(n, kDenseOperatorMaxQubits, "dense state");
  CVector v = CVector::Zero(dim_of(n));
  v(0) = 1.0;
  return v;
}

CVector simulate_state(const Circuit& c, const CVector& psi0) {
  require_at_most(c.n, kDenseOperatorMaxQubits, "simulate_state");
  c.validate();
  CVector v = psi0;
  const double r = 1.0 / std::sqrt(2.0);
  for (const auto& g : c.gates) {
    if (const auto* cg = std::get_if<CliffordGate>(&g)) {
      if (cg->is_identity()) continue;
      v = r * (v + Complex(0, 1) * apply_pauli(cg->generator(c.n), v));
    } else {
      const auto& rz = std::get<RzGate>(g);
      const Complex lo = std::polar(1.0, -rz.theta / 2);
      const Complex hi = std::polar(1.0, rz.theta / 2);
      for (Eigen::Index k = 0; k < v.size(); ++k) {
        v(k) *= ((static_cast<std::uint64_t>(k) >> rz.site) & 1u) ? hi : lo;
      }
    }
  }
  return v;
}

GroundState exact_ground(const PauliSum& h) {
  require_at_most(h.size(), kDenseOperatorMaxQubits, "exact_ground");
  if (h.size() > kDenseCircuitMaxQubits) return lanczos_ground(h);
  const DenseOperator d = pauli_sum_to_dense(h);
  Eigen::SelfAdjointEigenSolver<CMatrix> es(d.matrix);
  GroundState g{es.eigenvalues()(0), es.eigenvectors().col(0)};
  const double residual = (d.matrix * g.state - g.energy * g.state).norm();
  if (residual > 1e-8) throw NumericalError("ground-state residual " + std::to_string(residual));
  return g;
}

double ground_energy_real_embedding(const PauliSum& h) {
  require_at_most(h.size(), kDenseCircuitMaxQubits, "ground_energy_real_embedding");
  const CMatrix m = pauli_sum_to_dense(h).matrix;
  const Eigen::Index d = m.rows();
  Eigen::MatrixXd r(2 * d, 2 * d);
  r.topLeftCorner(d, d) = m.real();
  r.topRightCorner(d, d) = -m.imag();
  r.bottomLeftCorner(d, d) = m.imag();
  r.bottomRightCorner(d, d) = m.real();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(r, Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

RVector hermitian_eigenvalues(const CMatrix& m) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(m, Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

CMatrix gibbs_state(const CMatrix& k, double beta) {
  Eigen::SelfAdjointEigenSolver<CMatrix> es(k);
  const RVector& e = es.eigenvalues();
  const double emin = e.minCoeff();
  RVector w = (-beta * (e.array() - emin)).exp().matrix();
  w /= w.sum();
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
}

GrandFreeEnergy exact_grand_free_energy(const PauliSum& h, const PauliSum& number_op, double beta,
                                        double mu) {
  require_at_most(h.size(), kDenseCircuitMaxQubits, "exact_grand_free_energy");
  if (!(beta > 0)) throw NumericalError("beta must be positive");
  const CMatrix hm = pauli_sum_to_dense(h).matrix;
  CMatrix nm = CMatrix::Zero(hm.rows(), hm.cols());
  if (!number_op.empty()) {
    if (number_op.size() != h.size()) throw DimensionError("number operator size mismatch");
    nm = pauli_sum_to_dense(number_op).matrix;
  }
  const CMatrix k = hm - mu * nm;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(k);
  const RVector& e = es.eigenvalues();
  const double emin = e.minCoeff();
  RVector w = (-beta * (e.array() - emin)).exp().matrix();
  const double z = w.sum();
  GrandFreeEnergy out;
  out.free_energy = emin - std::log(z) / beta;
  w /= z;
  out.rho = es.eigenvectors() * w.asDiagonal() * es.eigenvectors().adjoint();
  out.mean_number = (out.rho * nm).trace().real();
  return out;
}

}  // namespace magic
