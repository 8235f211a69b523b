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

#include "magic/pulse.hpp"

#include <cmath>
#include <limits>
#include <string>

#include <Eigen/Eigenvalues>

#include "magic/dense.hpp"
#include "magic/error.hpp"
#include "magic/parallel.hpp"

namespace magic {

namespace {

constexpr double kNormTol = 1e-9;
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 40;

struct DenseTarget {
  double identity = 0.0;
  CMatrix rest;
};

DenseTarget dense_target(const PauliSum& target) {
  const PauliSum t = canonicalize(target);
  DenseTarget d;
  PauliSum rest(t.size());
  for (const auto& term : t.terms()) {
    if (term.op.is_identity()) {
      d.identity += term.op.sign() * term.coeff;
    } else {
      rest.add(term.coeff, term.op);
    }
  }
  d.rest = pauli_sum_to_dense(rest).matrix;
  return d;
}

double objective_of(const CVector& psi, const DenseTarget& t) {
  if (t.rest.cwiseAbs().maxCoeff() == 0.0) return t.identity;
  return t.identity + psi.dot(t.rest * psi).real() / psi.squaredNorm();
}

double objective(const AtomChain& chain, const PulseSchedule& s, const DenseTarget& t) {
  return objective_of(evolve(chain, s, zero_state(chain.size())), t);
}

std::vector<double> central_differences(const AtomChain& chain, const PulseSchedule& s, const DenseTarget& t,
                                        double step) {
  const auto p = s.parameters();
  std::vector<double> g(p.size());
  PulseSchedule work = s;
  std::vector<double> q = p;
  for (std::size_t i = 0; i < p.size(); ++i) {
    q[i] = p[i] + step;
    work.set_parameters(q);
    const double fp = objective(chain, work, t);
    q[i] = p[i] - step;
    work.set_parameters(q);
    const double fm = objective(chain, work, t);
    q[i] = p[i];
    g[i] = (fp - fm) / (2.0 * step);
  }
  return g;
}

void check_target(const AtomChain& chain, const PauliSum& target) {
  if (target.size() != chain.size()) throw DimensionError("target qubit count must equal the atom count");
}

}  // namespace

AtomChain AtomChain::uniform(std::size_t atoms, double spacing) {
  AtomChain c;
  for (std::size_t i = 0; i < atoms; ++i) c.positions.push_back(spacing * static_cast<double>(i));
  return c;
}

double AtomChain::interaction(std::size_t i, std::size_t j) const {
  const double d = std::abs(positions.at(i) - positions.at(j));
  return c6 / std::pow(d, 6);
}

std::vector<std::pair<std::size_t, std::size_t>> AtomChain::pairs() const {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      if (!nearest_only || j == i + 1) out.emplace_back(i, j);
    }
  }
  return out;
}

void AtomChain::validate() const {
  if (positions.empty()) throw DimensionError("atom chain is empty");
  if (positions.size() > kPulseMaxAtoms) throw SizeError("pulse simulation supports at most 10 atoms");
  if (!(c6 > 0.0) || !std::isfinite(c6)) throw DimensionError("C6 must be positive");
  for (std::size_t i = 0; i < positions.size(); ++i) {
    if (!std::isfinite(positions[i])) throw DimensionError("atom positions must be finite");
    if (i && !(positions[i] > positions[i - 1])) throw DimensionError("atom positions must increase strictly");
  }
}

PulseSchedule PulseSchedule::zeros(std::size_t atoms, std::size_t segments, double duration) {
  PulseSchedule s;
  s.atoms = atoms;
  s.segments = segments;
  s.duration = duration;
  s.ux.assign(atoms * segments, 0.0);
  s.uy.assign(atoms * segments, 0.0);
  s.delta.assign(atoms * segments, 0.0);
  return s;
}

std::vector<double> PulseSchedule::parameters() const {
  std::vector<double> p;
  p.reserve(num_parameters());
  p.insert(p.end(), ux.begin(), ux.end());
  p.insert(p.end(), uy.begin(), uy.end());
  p.insert(p.end(), delta.begin(), delta.end());
  return p;
}

void PulseSchedule::set_parameters(const std::vector<double>& p) {
  if (p.size() != num_parameters()) throw DimensionError("parameter count does not match the schedule");
  const std::size_t m = atoms * segments;
  ux.assign(p.begin(), p.begin() + static_cast<std::ptrdiff_t>(m));
  uy.assign(p.begin() + static_cast<std::ptrdiff_t>(m), p.begin() + static_cast<std::ptrdiff_t>(2 * m));
  delta.assign(p.begin() + static_cast<std::ptrdiff_t>(2 * m), p.end());
}

void PulseSchedule::validate() const {
  if (segments == 0) throw DimensionError("schedule needs at least one segment");
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw DimensionError("duration must be non-negative");
  const std::size_t m = atoms * segments;
  if (ux.size() != m || uy.size() != m || delta.size() != m) {
    throw DimensionError("control tables must have atoms x segments entries");
  }
  for (const auto* v : {&ux, &uy, &delta}) {
    for (double x : *v) {
      if (!std::isfinite(x)) throw DimensionError("control values must be finite");
    }
  }
}

PauliSum rydberg_pauli_hamiltonian(const AtomChain& chain, const PulseSchedule& schedule, std::size_t segment) {
  chain.validate();
  schedule.validate();
  const std::size_t n = chain.size();
  if (schedule.atoms != n) throw DimensionError("schedule and chain atom counts differ");
  if (segment >= schedule.segments) throw DimensionError("segment out of range");
  PauliSum h(n);
  double constant = 0.0;
  std::vector<double> zc(n, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const std::size_t k = schedule.index(j, segment);
    h.add(schedule.ux[k], PauliString::single(n, j, 'X'));
    h.add(schedule.uy[k], PauliString::single(n, j, 'Y'));
    zc[j] += 0.5 * schedule.delta[k];
    constant -= 0.5 * schedule.delta[k];
  }
  for (const auto& [i, j] : chain.pairs()) {
    const double v = chain.interaction(i, j);
    PauliString zz(n);
    zz.set(i, 'Z');
    zz.set(j, 'Z');
    h.add(0.25 * v, zz);
    zc[i] -= 0.25 * v;
    zc[j] -= 0.25 * v;
    constant += 0.25 * v;
  }
  for (std::size_t j = 0; j < n; ++j) h.add(zc[j], PauliString::single(n, j, 'Z'));
  h.add(constant, PauliString(n));
  return canonicalize(h, 0.0);
}

CVector evolve(const AtomChain& chain, const PulseSchedule& schedule, const CVector& psi0, std::size_t substeps) {
  chain.validate();
  schedule.validate();
  if (substeps == 0) throw DimensionError("substeps must be positive");
  if (psi0.size() != (Eigen::Index{1} << chain.size())) throw DimensionError("initial state dimension mismatch");
  const double dt = schedule.duration / static_cast<double>(schedule.segments * substeps);
  CVector psi = psi0;
  const double norm0 = psi0.norm();
  for (std::size_t s = 0; s < schedule.segments; ++s) {
    const PauliSum h = rydberg_pauli_hamiltonian(chain, schedule, s);
    if (dt == 0.0 || h.empty()) continue;
    const CMatrix hm = pauli_sum_to_dense(h).matrix;
    Eigen::SelfAdjointEigenSolver<CMatrix> es(hm);
    const CVector phases = (es.eigenvalues() * (-dt)).unaryExpr([](double a) { return std::polar(1.0, a); });
    const CMatrix u = es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
    for (std::size_t r = 0; r < substeps; ++r) psi = u * psi;
  }
  if (std::abs(psi.norm() - norm0) > kNormTol) {
    throw NumericalError("norm drift " + std::to_string(psi.norm() - norm0) + " during evolution");
  }
  return psi;
}

double pulse_objective(const AtomChain& chain, const PulseSchedule& schedule, const PauliSum& target) {
  check_target(chain, target);
  return objective(chain, schedule, dense_target(target));
}

std::vector<double> pulse_gradient(const AtomChain& chain, const PulseSchedule& schedule, const PauliSum& target,
                                   double step) {
  check_target(chain, target);
  return central_differences(chain, schedule, dense_target(target), step);
}

std::vector<double> pulse_gradient_richardson(const AtomChain& chain, const PulseSchedule& schedule,
                                              const PauliSum& target, double step) {
  check_target(chain, target);
  const auto t = dense_target(target);
  const auto coarse = central_differences(chain, schedule, t, step);
  const auto fine = central_differences(chain, schedule, t, 0.5 * step);
  std::vector<double> g(coarse.size());
  for (std::size_t i = 0; i < g.size(); ++i) g[i] = (4.0 * fine[i] - coarse[i]) / 3.0;
  return g;
}

PauliSum permute_qubits(const PauliSum& h, const std::vector<std::size_t>& perm) {
  const std::size_t n = h.size();
  if (perm.size() != n) throw DimensionError("permutation size does not match qubit count");
  std::vector<bool> seen(n, false);
  for (auto q : perm) {
    if (q >= n || seen[q]) throw DimensionError("invalid qubit permutation");
    seen[q] = true;
  }
  PauliSum out(n);
  for (const auto& t : h.terms()) {
    PauliString p(n);
    for (std::size_t q = 0; q < n; ++q) p.set(perm[q], t.op.at(q));
    p.set_phase(t.op.phase());
    out.add(t.coeff, p);
  }
  return canonicalize(out);
}

PulseOptResult optimize_pulses(const AtomChain& chain, double duration, const PauliSum& target,
                               const PulseOptConfig& cfg) {
  chain.validate();
  check_target(chain, target);
  if (cfg.restarts == 0) throw UsageError("restarts must be at least 1");
  if (cfg.segments == 0) throw UsageError("segments must be at least 1");
  if (!(cfg.fd_step > 0.0)) throw UsageError("fd_step must be positive");
  const DenseTarget t = dense_target(target);
  PulseOptResult result;
  result.restarts.resize(cfg.restarts);
  parallel_for(cfg.restarts, worker_count(cfg.threads), [&](std::size_t id) {
    Rng rng(derive_seed(cfg.seed, id));
    PulseSchedule s = PulseSchedule::zeros(chain.size(), cfg.segments, duration);
    auto p = s.parameters();
    for (auto& v : p) v = rng.uniform(-cfg.init_scale, cfg.init_scale);
    s.set_parameters(p);
    PulseRestart r;
    r.restart_id = id;
    double f = objective(chain, s, t);
    r.initial_objective = f;
    r.trace.push_back(f);
    double step = 1.0;
    PulseSchedule trial = s;
    for (std::size_t it = 0; it < cfg.max_iters; ++it) {
      const auto g = central_differences(chain, s, t, cfg.fd_step);
      double g2 = 0.0;
      for (double v : g) g2 += v * v;
      if (g2 == 0.0) break;
      bool accepted = false;
      for (int b = 0; b < kMaxBacktracks; ++b) {
        std::vector<double> q = p;
        for (std::size_t i = 0; i < q.size(); ++i) q[i] -= step * g[i];
        trial.set_parameters(q);
        const double ft = objective(chain, trial, t);
        if (ft < f - kArmijo * step * g2) {
          p = std::move(q);
          s = trial;
          f = ft;
          step *= 2.0;
          accepted = true;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
      r.trace.push_back(f);
    }
    r.final_objective = f;
    r.schedule = std::move(s);
    result.restarts[id] = std::move(r);
  });
  std::size_t best = 0;
  for (std::size_t id = 1; id < result.restarts.size(); ++id) {
    if (result.restarts[id].final_objective < result.restarts[best].final_objective) best = id;
  }
  result.best_restart = best;
  result.best_objective = result.restarts[best].final_objective;
  result.best_schedule = result.restarts[best].schedule;
  return result;
}

}  // namespace magic
