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

#include "magic/ansatz_opt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "magic/dense.hpp"
#include "magic/error.hpp"
#include "magic/heisenberg.hpp"
#include "magic/parallel.hpp"
#include "magic/thermal.hpp"

namespace magic {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kArmijo = 1e-4;
constexpr int kMaxBacktracks = 60;

std::string format_thetas(std::span<const double> thetas) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (std::size_t j = 0; j < thetas.size(); ++j) os << (j ? ", " : "") << thetas[j];
  os << ']';
  return os.str();
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

std::vector<std::vector<double>> theta_starts(const LadderCircuit& x, std::size_t count, Rng& rng) {
  std::vector<std::vector<double>> starts;
  starts.reserve(count + 2);
  starts.push_back(x.thetas);
  starts.emplace_back(x.rz_count(), 0.0);
  for (std::size_t s = 0; s < count; ++s) {
    std::vector<double> t(x.rz_count());
    for (auto& v : t) v = rng.uniform(0.0, kTwoPi);
    starts.push_back(std::move(t));
  }
  return starts;
}

MarginalizedCost marginal(CostModel& model, const LadderCircuit& x, const OptimizerConfig& cfg, Rng& rng) {
  const auto starts = theta_starts(x, cfg.theta_starts, rng);
  return model.marginalize(x, starts, cfg.grad_tol, cfg.max_grad_iters);
}

struct Step {
  LadderCircuit x;
  double cost;
};

Step sweep(CostModel& model, const LadderCircuit& x, std::size_t j, const OptimizerConfig& cfg, Rng& rng) {
  const std::size_t slots = x.num_slots();
  const std::size_t values = j < slots ? 16 : x.n;
  Step best{x, std::numeric_limits<double>::infinity()};
  for (std::size_t p = 0; p < values; ++p) {
    LadderCircuit cand = x;
    if (j < slots) {
      cand.codes[j] = static_cast<std::uint8_t>(p);
    } else {
      cand.rz_sites[j - slots] = p;
    }
    auto m = marginal(model, cand, cfg, rng);
    if (m.cost < best.cost) {
      cand.thetas = std::move(m.thetas);
      best = {std::move(cand), m.cost};
    }
  }
  return best;
}

struct RestartOutcome {
  LadderCircuit circuit;
  double cost = 0.0;
  std::vector<TraceEntry> trace;
};

LadderCircuit random_circuit(std::size_t n, const OptimizerConfig& cfg, Rng& rng) {
  LadderCircuit x = LadderCircuit::identity(n, cfg.layers);
  x.rz_layer = cfg.rz_layer;
  for (auto& code : x.codes) code = static_cast<std::uint8_t>(rng.index(16));
  for (std::size_t j = 0; j < cfg.rz_count; ++j) {
    x.rz_sites.push_back(rng.index(n));
    x.thetas.push_back(rng.uniform(0.0, kTwoPi));
  }
  return x;
}

RestartOutcome run_restart(const PauliSum& h, const OptimizerConfig& cfg, std::size_t id,
                           const LadderCircuit* initial, const std::vector<CliffordGate>& frame) {
  Rng rng(derive_seed(cfg.seed, id));
  LadderCircuit x;
  if (initial) {
    x = *initial;
  } else {
    x = random_circuit(h.size(), cfg, rng);
    x.frame = frame;
  }
  x.validate();
  CostModel model(h, cfg.objective);
  RestartOutcome out;
  auto m = marginal(model, x, cfg, rng);
  x.thetas = std::move(m.thetas);
  double cost = m.cost;
  out.trace.push_back({0, -1, cost});
  const std::size_t coords = x.num_slots() + x.rz_count();
  for (std::size_t it = 1; it <= cfg.n_iter; ++it) {
    const std::size_t j =
        cfg.schedule == CoordinateSchedule::kRandom ? rng.index(coords) : (it - 1) % coords;
    auto s = sweep(model, x, j, cfg, rng);
    x = std::move(s.x);
    cost = s.cost;
    out.trace.push_back({it, static_cast<long>(j), cost});
  }
  out.circuit = std::move(x);
  out.cost = cost;
  return out;
}

OptResult run_all(const PauliSum& h, const OptimizerConfig& cfg, const LadderCircuit* initial) {
  cfg.validate(h.size());
  const std::vector<CliffordGate> frame = cfg.warm_start ? warm_start_tableau(h) : std::vector<CliffordGate>{};
  std::vector<RestartOutcome> outs(cfg.n_init);
  parallel_for(cfg.n_init, worker_count(cfg.threads), [&](std::size_t id) {
    outs[id] = run_restart(h, cfg, id, id == 0 ? initial : nullptr, frame);
  });
  std::size_t best = 0;
  for (std::size_t id = 1; id < outs.size(); ++id) {
    if (outs[id].cost < outs[best].cost) best = id;
  }
  OptResult r;
  r.best_circuit = outs[best].circuit;
  r.best_cost = outs[best].cost;
  r.trace = outs[best].trace;
  r.restart_id = best;
  r.seed_used = cfg.seed;
  r.endpoints.reserve(outs.size());
  for (std::size_t id = 0; id < outs.size(); ++id) r.endpoints.push_back({id, outs[id].cost});
  if (cfg.keep_trace) {
    r.restart_traces.reserve(outs.size());
    for (auto& o : outs) r.restart_traces.push_back(std::move(o.trace));
  }
  return r;
}

char anticommuting_partner(char a) { return a == 'X' ? 'Y' : 'X'; }

}  // namespace

std::string to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kGroundEnergy: return "ground_energy";
    case ObjectiveKind::kFreeEnergy: return "free_energy";
    case ObjectiveKind::kOffdiagWeight: return "offdiag_weight";
  }
  return "ground_energy";
}

ObjectiveKind objective_kind_from_string(const std::string& s) {
  if (s == "ground_energy") return ObjectiveKind::kGroundEnergy;
  if (s == "free_energy") return ObjectiveKind::kFreeEnergy;
  if (s == "offdiag_weight") return ObjectiveKind::kOffdiagWeight;
  throw UsageError("unknown objective '" + s + "'");
}

void OptimizerConfig::validate(std::size_t n) const {
  if (layers == 0 || n_init == 0 || n_iter == 0 || theta_starts == 0 || max_grad_iters == 0) {
    throw UsageError("optimizer counts must be at least 1");
  }
  if (rz_count > n * layers) {
    throw UsageError("rz_count " + std::to_string(rz_count) + " exceeds n*L = " + std::to_string(n * layers));
  }
  if (rz_layer != LadderCircuit::kRzAtEnd && rz_layer > layers) {
    throw UsageError("rz_layer " + std::to_string(rz_layer) + " exceeds the layer count");
  }
  if (!(grad_tol >= 0.0)) throw UsageError("grad_tol must be non-negative");
  if (objective.kind == ObjectiveKind::kFreeEnergy && !(objective.beta > 0.0)) {
    throw UsageError("beta must be positive");
  }
}

CostModel::CostModel(const PauliSum& h, Objective objective) : objective_(std::move(objective)) {
  if (objective_.kind == ObjectiveKind::kFreeEnergy) {
    if (h.size() > kThermalMaxQubits) throw SizeError("free-energy objective supports at most 20 qubits");
    if (!(objective_.beta > 0.0)) throw UsageError("beta must be positive");
    if (objective_.mu != 0.0 && objective_.number_op.size() != 0) {
      h_ = canonicalize(add(h, objective_.number_op, -objective_.mu));
    } else {
      h_ = canonicalize(h);
    }
  } else {
    h_ = h.is_canonical() ? h : canonicalize(h);
  }
}

const RzExpansion& CostModel::expansion(const LadderCircuit& c) {
  if (c.n != h_.size()) throw DimensionError("circuit and Hamiltonian qubit counts differ");
  if (!cache_valid_ || c.codes != cached_codes_ || c.frame != cached_frame_ ||
      c.rz_position() != cached_rz_position_) {
    const auto brick = c.brick_gates();
    std::vector<CliffordGate> gates = brick;
    gates.insert(gates.end(), c.frame.begin(), c.frame.end());
    conjugated_ = conjugate_by_clifford(h_, gates);
    // Rz axes only see the brickwork layers applied before them.
    const std::span<const CliffordGate> before(brick.data(), c.rz_position() * c.n);
    site_axes_.clear();
    for (std::size_t q = 0; q < c.n; ++q) {
      site_axes_.push_back(conjugate_pauli(PauliString::single(c.n, q, 'Z'), before));
    }
    cached_codes_ = c.codes;
    cached_frame_ = c.frame;
    cached_rz_position_ = c.rz_position();
    cache_valid_ = true;
    expansion_.reset();
  }
  if (!expansion_ || c.rz_sites != cached_sites_) {
    std::vector<PauliString> axes;
    axes.reserve(c.rz_sites.size());
    for (auto q : c.rz_sites) {
      if (q >= c.n) throw DimensionError("Rz site out of range");
      axes.push_back(site_axes_[q]);
    }
    expansion_.emplace(conjugated_, std::move(axes));
    cached_sites_ = c.rz_sites;
  }
  return *expansion_;
}

double CostModel::evaluate(const RzExpansion& ex, std::span<const double> thetas, std::span<double> grad) const {
  if (!grad.empty()) std::fill(grad.begin(), grad.end(), 0.0);
  double cost = 0.0;
  switch (objective_.kind) {
    case ObjectiveKind::kGroundEnergy:
      cost = ex.zero_state_energy(thetas, grad);
      break;
    case ObjectiveKind::kOffdiagWeight: {
      const auto f = ex.diagonal_coefficients(thetas);
      double diag = 0.0;
      for (double v : f) diag += v * v;
      cost = ex.frobenius_weight() - diag;
      if (!grad.empty()) {
        std::vector<double> w(f.size());
        for (std::size_t s = 0; s < f.size(); ++s) w[s] = -2.0 * f[s];
        ex.accumulate_gradient(thetas, w, grad);
      }
      break;
    }
    case ObjectiveKind::kFreeEnergy: {
      const auto f = ex.diagonal_coefficients(thetas);
      const auto e = energies_from_diagonal(ex.zmasks(), f, ex.num_qubits());
      auto cf = closed_form_free_energy(e, objective_.beta);
      cost = cf.free_energy;
      if (!grad.empty()) {
        // dF/dtheta = sum_x p_x dE_x/dtheta = sum_z (WHT p)_z df_z/dtheta.
        walsh_hadamard(cf.p);
        std::vector<double> w(f.size());
        for (std::size_t s = 0; s < f.size(); ++s) w[s] = cf.p[ex.zmasks()[s]];
        ex.accumulate_gradient(thetas, w, grad);
      }
      break;
    }
  }
  if (!std::isfinite(cost)) throw NumericalError("non-finite cost at theta = " + format_thetas(thetas));
  return cost;
}

double CostModel::cost(const LadderCircuit& c) {
  return evaluate(expansion(c), c.thetas, {});
}

double CostModel::cost_and_gradient(const LadderCircuit& c, std::span<double> grad) {
  if (grad.size() != c.rz_count()) throw DimensionError("gradient size does not match rz_count");
  return evaluate(expansion(c), c.thetas, grad);
}

MarginalizedCost CostModel::marginalize(const LadderCircuit& c, std::span<const std::vector<double>> starts,
                                        double grad_tol, std::size_t max_iters) {
  const RzExpansion& ex = expansion(c);
  const std::size_t k = c.rz_count();
  MarginalizedCost best{std::numeric_limits<double>::infinity(), {}};
  if (k == 0) {
    best.cost = evaluate(ex, {}, {});
    return best;
  }
  std::vector<double> grad(k), trial(k), trial_grad(k);
  for (const auto& start : starts) {
    if (start.size() != k) throw DimensionError("theta start size does not match rz_count");
    std::vector<double> theta = start;
    double f = evaluate(ex, theta, grad);
    double step = 1.0;
    for (std::size_t it = 0; it < max_iters && max_abs(grad) > grad_tol; ++it) {
      double g2 = 0.0;
      for (double g : grad) g2 += g * g;
      bool accepted = false;
      for (int b = 0; b < kMaxBacktracks; ++b) {
        for (std::size_t j = 0; j < k; ++j) trial[j] = theta[j] - step * grad[j];
        const double ft = evaluate(ex, trial, trial_grad);
        if (ft <= f - kArmijo * step * g2 && ft < f) {
          theta.swap(trial);
          grad.swap(trial_grad);
          f = ft;
          accepted = true;
          step *= 2.0;
          break;
        }
        step *= 0.5;
      }
      if (!accepted) break;
    }
    if (f < best.cost) best = {f, std::move(theta)};
  }
  return best;
}

MarginalizedCost marginalized_cost(const LadderCircuit& x, const PauliSum& h, const OptimizerConfig& cfg) {
  x.validate();
  CostModel model(h, cfg.objective);
  Rng rng(cfg.seed);
  return marginal(model, x, cfg, rng);
}

LadderCircuit greedy_step(const LadderCircuit& x, std::size_t coordinate, const PauliSum& h,
                          const OptimizerConfig& cfg) {
  x.validate();
  if (coordinate >= x.num_slots() + x.rz_count()) throw DimensionError("coordinate out of range");
  CostModel model(h, cfg.objective);
  Rng rng(cfg.seed);
  return sweep(model, x, coordinate, cfg, rng).x;
}

OptResult optimize(const PauliSum& h, const OptimizerConfig& cfg) { return run_all(h, cfg, nullptr); }

OptResult optimize_from(const PauliSum& h, const OptimizerConfig& cfg, const LadderCircuit& initial) {
  if (initial.n != h.size() || initial.layers != cfg.layers || initial.rz_count() != cfg.rz_count) {
    throw DimensionError("initial circuit does not match the optimizer configuration");
  }
  return run_all(h, cfg, &initial);
}

std::vector<OptResult> ladder_run(const PauliSum& h, std::size_t k_max, const OptimizerConfig& cfg) {
  std::vector<OptResult> out;
  LadderCircuit seed;
  for (std::size_t k = 0; k <= k_max; ++k) {
    OptimizerConfig level = cfg;
    level.rz_count = k;
    level.seed = k == 0 ? cfg.seed : derive_seed(cfg.seed, 0x6c61646465720000ull + k);
    out.push_back(k == 0 ? optimize(h, level) : optimize_from(h, level, seed));
    if (k == k_max) break;
    // Insert the next Rz at theta = 0 on the site with the lowest marginalized cost.
    const LadderCircuit& prev = out.back().best_circuit;
    CostModel model(h, cfg.objective);
    Rng rng(derive_seed(level.seed, 0x73697465ull));
    double best_cost = std::numeric_limits<double>::infinity();
    std::size_t best_site = 0;
    for (std::size_t q = 0; q < h.size(); ++q) {
      LadderCircuit cand = prev;
      cand.rz_sites.push_back(q);
      cand.thetas.push_back(0.0);
      const double c = marginal(model, cand, level, rng).cost;
      if (c < best_cost) {
        best_cost = c;
        best_site = q;
      }
    }
    seed = prev;
    seed.rz_sites.push_back(best_site);
    seed.thetas.push_back(0.0);
  }
  return out;
}

std::vector<CliffordGate> warm_start_tableau(const PauliSum& h_in) {
  const std::size_t n = h_in.size();
  std::vector<CliffordGate> sequence;
  if (n < 2) return sequence;
  PauliSum h = h_in.is_canonical() ? h_in : canonicalize(h_in);
  std::vector<bool> pinned(n, false);
  double weight = offdiag_weight(h);
  for (std::size_t accepted = 0; accepted < n && weight > 0.0; ++accepted) {
    const PauliTerm* pick = nullptr;
    std::size_t pivot = n;
    for (const auto& t : h.terms()) {
      if (t.op.is_diagonal() || std::abs(t.coeff) <= kCanonicalTol) continue;
      if (pick && std::abs(t.coeff) <= std::abs(pick->coeff)) continue;
      const Bits support = t.op.x() | t.op.z();
      for (std::size_t q = 0; q < n; ++q) {
        if (support.get(q) && !pinned[q]) {
          pick = &t;
          pivot = q;
          break;
        }
      }
    }
    if (!pick) break;
    PauliString p = pick->op;
    std::vector<CliffordGate> step;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == pivot || p.at(r) == 'I') continue;
      const std::string word{anticommuting_partner(p.at(pivot)), p.at(r)};
      step.push_back(CliffordGate::from_pauli(word, pivot, r));
      p = conjugate_pauli(p, std::span(&step.back(), 1));
    }
    if (p.at(pivot) != 'Z') {
      const std::string word{p.at(pivot) == 'X' ? 'Y' : 'X', 'I'};
      step.push_back(CliffordGate::from_pauli(word, pivot, (pivot + 1) % n));
    }
    // Heisenberg order: the first gate found is the outermost conjugation.
    PauliSum next = h;
    for (const auto& g : step) next = conjugate_by_clifford(next, std::span(&g, 1));
    const double w = offdiag_weight(next);
    if (!(w < weight)) break;
    h = std::move(next);
    weight = w;
    pinned[pivot] = true;
    sequence.insert(sequence.end(), step.begin(), step.end());
  }
  std::reverse(sequence.begin(), sequence.end());
  return sequence;
}

std::vector<SymmetryStats> symmetry_report(const LadderCircuit& c, std::span<const PauliSum> ops) {
  c.validate();
  std::vector<SymmetryStats> out;
  std::optional<CVector> psi;
  if (c.n <= kDenseCircuitMaxQubits) psi = circuit_to_dense(c).matrix.col(0);
  for (const auto& op : ops) {
    if (op.size() != c.n) throw DimensionError("operator and circuit qubit counts differ");
    SymmetryStats s;
    s.mean = zero_state_expectation(transform(canonicalize(op), c));
    const double second = zero_state_expectation(transform(product(op, op), c));
    s.variance = std::max(0.0, second - s.mean * s.mean);
    if (psi) {
      const auto dense = pauli_sum_to_dense(op);
      Eigen::SelfAdjointEigenSolver<CMatrix> es(dense.matrix);
      const CVector amp = es.eigenvectors().adjoint() * *psi;
      const auto& ev = es.eigenvalues();
      for (Eigen::Index i = 0; i < ev.size(); ++i) {
        const double w = std::norm(amp(i));
        if (!s.histogram.empty() && std::abs(ev(i) - s.histogram.back().first) <= 1e-9) {
          s.histogram.back().second += w;
        } else {
          s.histogram.emplace_back(ev(i), w);
        }
      }
    }
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace magic
