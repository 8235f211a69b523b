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

#include "magic/heisenberg.hpp"

#include <cmath>
#include <string>

#include "magic/error.hpp"

namespace magic {

std::size_t Circuit::rz_count() const {
  std::size_t k = 0;
  for (const auto& g : gates) k += std::holds_alternative<RzGate>(g) ? 1 : 0;
  return k;
}

void Circuit::validate() const {
  for (const auto& g : gates) {
    if (const auto* cg = std::get_if<CliffordGate>(&g)) {
      if (cg->first >= n || cg->second >= n || cg->first == cg->second || cg->code > 15) {
        throw DimensionError("invalid Clifford gate on sites (" + std::to_string(cg->first) + "," +
                             std::to_string(cg->second) + ") for " + std::to_string(n) + " qubits");
      }
    } else {
      const auto& rz = std::get<RzGate>(g);
      if (rz.site >= n) throw DimensionError("Rz site " + std::to_string(rz.site) + " out of range");
      if (!std::isfinite(rz.theta)) throw DimensionError("Rz angle must be finite");
    }
  }
}

std::vector<std::pair<std::size_t, std::size_t>> brickwork_bonds(std::size_t n) {
  std::vector<std::pair<std::size_t, std::size_t>> bonds;
  if (n < 2) return bonds;
  for (std::size_t a = 0; a + 1 < n; a += 2) bonds.emplace_back(a, a + 1);
  for (std::size_t a = 1; a + 1 < n; a += 2) bonds.emplace_back(a, a + 1);
  bonds.emplace_back(n - 1, 0);
  return bonds;
}

LadderCircuit LadderCircuit::identity(std::size_t n, std::size_t layers) {
  if (n < 2) throw DimensionError("brickwork circuits need at least two qubits");
  LadderCircuit c;
  c.n = n;
  c.layers = layers;
  c.codes.assign(n * layers, 0);
  return c;
}

CliffordGate LadderCircuit::brick_gate(std::size_t slot) const {
  const auto bonds = brickwork_bonds(n);
  const auto& bond = bonds[slot % n];
  return CliffordGate{codes[slot], bond.first, bond.second};
}

std::vector<CliffordGate> LadderCircuit::brick_gates() const {
  const auto bonds = brickwork_bonds(n);
  std::vector<CliffordGate> out;
  out.reserve(codes.size());
  for (std::size_t slot = 0; slot < codes.size(); ++slot) {
    const auto& bond = bonds[slot % n];
    out.push_back(CliffordGate{codes[slot], bond.first, bond.second});
  }
  return out;
}

Circuit LadderCircuit::to_circuit() const {
  validate();
  Circuit c;
  c.n = n;
  c.layers = layers;
  const auto brick = brick_gates();
  const std::size_t before = rz_position() * n;
  for (std::size_t i = 0; i < before; ++i) c.gates.emplace_back(brick[i]);
  for (std::size_t j = 0; j < rz_sites.size(); ++j) c.gates.emplace_back(RzGate{rz_sites[j], thetas[j]});
  for (std::size_t i = before; i < brick.size(); ++i) c.gates.emplace_back(brick[i]);
  for (const auto& g : frame) c.gates.emplace_back(g);
  return c;
}

void LadderCircuit::validate() const {
  if (n < 2) throw DimensionError("brickwork circuits need at least two qubits");
  if (codes.size() != n * layers) throw DimensionError("gate code table must have layers*n entries");
  for (auto code : codes) {
    if (code > 15) throw DimensionError("gate code out of range");
  }
  if (rz_sites.size() != thetas.size()) throw DimensionError("rz_sites and thetas differ in length");
  if (rz_layer != kRzAtEnd && rz_layer > layers) throw DimensionError("rz_layer exceeds the layer count");
  for (auto q : rz_sites) {
    if (q >= n) throw DimensionError("Rz site " + std::to_string(q) + " out of range");
  }
  for (double t : thetas) {
    if (!std::isfinite(t)) throw DimensionError("Rz angle must be finite");
  }
  for (const auto& g : frame) {
    if (g.first >= n || g.second >= n || g.first == g.second) {
      throw DimensionError("frame gate sites out of range");
    }
  }
}

PauliString conjugate_pauli(const PauliString& p, std::span<const CliffordGate> gates,
                            ConjugationSide side) {
  PauliString out = p;
  if (side == ConjugationSide::kHeisenberg) {
    // U^dagger P U with U = G_m ... G_1: innermost conjugation is by G_m.
    for (auto it = gates.rbegin(); it != gates.rend(); ++it) {
      if (!it->is_identity()) out = conjugate_quarter_turn(out, it->generator(p.size()), true);
    }
  } else {
    for (const auto& g : gates) {
      if (!g.is_identity()) out = conjugate_quarter_turn(out, g.generator(p.size()), false);
    }
  }
  return out;
}

PauliSum conjugate_by_clifford(const PauliSum& h, std::span<const CliffordGate> gates,
                               ConjugationSide side) {
  std::vector<PauliString> generators;
  generators.reserve(gates.size());
  for (const auto& g : gates) {
    if (g.is_identity()) {
      g.generator(h.size());  // range check only
      continue;
    }
    generators.push_back(g.generator(h.size()));
  }
  const bool adjoint = side == ConjugationSide::kHeisenberg;
  PauliSum out(h.size());
  out.reserve(h.num_terms());
  for (const auto& t : h.terms()) {
    PauliString p = t.op;
    if (adjoint) {
      for (auto it = generators.rbegin(); it != generators.rend(); ++it) {
        p = conjugate_quarter_turn(p, *it, true);
      }
    } else {
      for (const auto& g : generators) p = conjugate_quarter_turn(p, g, false);
    }
    out.add(t.coeff, p);
  }
  return canonicalize(std::move(out), 0.0);
}

PauliSum conjugate_by_pauli_rotation(const PauliSum& h, const PauliString& q, double theta) {
  if (q.size() != h.size()) throw DimensionError("rotation size does not match operator");
  if (theta == 0.0) return canonicalize(h);
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  PauliSum out(h.size());
  out.reserve(2 * h.num_terms());
  for (const auto& t : h.terms()) {
    if (commutes(t.op, q)) {
      out.add(t.coeff, t.op);
      continue;
    }
    out.add(c * t.coeff, t.op);
    PauliString branch = multiply(q, t.op);
    branch.set_phase(static_cast<std::uint8_t>(branch.phase() + 1));
    out.add(s * t.coeff, branch);
  }
  return canonicalize(std::move(out));
}

PauliSum conjugate_by_rz(const PauliSum& h, std::size_t q, double theta) {
  if (q >= h.size()) throw DimensionError("Rz site " + std::to_string(q) + " out of range");
  return conjugate_by_pauli_rotation(h, PauliString::single(h.size(), q, 'Z'), theta);
}

PauliSum transform(const PauliSum& h, const Circuit& c) {
  if (h.size() != c.n) {
    throw DimensionError("Hamiltonian has " + std::to_string(h.size()) + " qubits, circuit has " +
                         std::to_string(c.n));
  }
  c.validate();
  PauliSum out = canonicalize(h);
  std::vector<CliffordGate> run;
  auto flush = [&] {
    if (!run.empty()) {
      out = conjugate_by_clifford(out, run, ConjugationSide::kHeisenberg);
      run.clear();
    }
  };
  for (auto it = c.gates.rbegin(); it != c.gates.rend(); ++it) {
    if (const auto* cg = std::get_if<CliffordGate>(&*it)) {
      run.insert(run.begin(), *cg);
    } else {
      flush();
      const auto& rz = std::get<RzGate>(*it);
      out = conjugate_by_rz(out, rz.site, rz.theta);
    }
  }
  flush();
  return out;
}

PauliSum transform(const PauliSum& h, const LadderCircuit& c) { return transform(h, c.to_circuit()); }

double zero_state_expectation(const PauliSum& h) {
  double e = 0.0;
  for (const auto& t : h.terms()) {
    if (t.op.is_diagonal()) e += t.coeff * t.op.sign();
  }
  return e;
}

double ground_energy_objective(const PauliSum& h, const LadderCircuit& c) {
  return zero_state_expectation(transform(h, c));
}

double ground_energy_objective(const PauliSum& h, const Circuit& c) {
  return zero_state_expectation(transform(h, c));
}

}  // namespace magic
