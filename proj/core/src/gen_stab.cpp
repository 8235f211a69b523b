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

#include "magic/gen_stab.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "magic/circuit.hpp"
#include "magic/dense.hpp"
#include "magic/error.hpp"

namespace magic {

namespace {

const Complex kIPow[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

double parity_sign(const Bits& a, const Bits& b) { return dot(a, b) ? -1.0 : 1.0; }

struct Decomposed {
  Complex alpha;
  Bits b;
  Bits c;
};

Decomposed decompose_for(const Tableau& t, const PauliString& p) {
  const PauliDecomposition d = t.decompose(p);
  return {kIPow[d.alpha], d.b, d.c};
}

}  // namespace

std::size_t PauliChannel::lambda() const {
  std::size_t k = 0;
  for (const auto& e : entries) k += e.phi != Complex(0.0) ? 1 : 0;
  return k;
}

bool PauliChannel::is_hermitian(double tol) const {
  for (const auto& e : entries) {
    Complex partner = 0.0;
    for (const auto& f : entries) {
      if (f.left == e.right && f.right == e.left) partner += f.phi;
    }
    if (std::abs(partner - std::conj(e.phi)) > tol) return false;
  }
  return true;
}

bool PauliChannel::is_trace_preserving(double tol) const {
  // Tr E(rho) = Tr(rho sum phi_mn P_n^dagger P_m); trace preserving iff that sum is I.
  std::vector<std::pair<PauliString, Complex>> acc;
  for (const auto& e : entries) {
    const PauliString prod = multiply(inverse(e.right), e.left);
    const Complex c = e.phi * kIPow[prod.phase()];
    const PauliString word = prod.unsigned_word();
    auto it = std::find_if(acc.begin(), acc.end(), [&](const auto& kv) { return kv.first == word; });
    if (it == acc.end()) {
      acc.emplace_back(word, c);
    } else {
      it->second += c;
    }
  }
  for (const auto& [word, c] : acc) {
    const Complex expected = word.is_identity() ? Complex(1.0) : Complex(0.0);
    if (std::abs(c - expected) > tol) return false;
  }
  return true;
}

PauliChannel rz_channel(std::size_t n, std::size_t q, double theta) {
  if (q >= n) throw DimensionError("Rz site " + std::to_string(q) + " out of range");
  const PauliString id(n);
  const PauliString z = PauliString::single(n, q, 'Z');
  const double c = std::cos(theta / 2);
  const double s = std::sin(theta / 2);
  // (c I - i s Z) rho (c I + i s Z)
  PauliChannel ch{n, {}};
  const Complex entries[4] = {c * c, Complex(0, c * s), Complex(0, -c * s), s * s};
  const PauliString* ops[2] = {&id, &z};
  for (int m = 0; m < 2; ++m) {
    for (int k = 0; k < 2; ++k) {
      const Complex phi = entries[2 * m + k];
      if (std::abs(phi) > kChiPruneTol) ch.entries.push_back({*ops[m], *ops[k], phi});
    }
  }
  return ch;
}

PauliChannel t_gate_channel(std::size_t n, std::size_t q) {
  // T = e^{i pi/8} (cos(pi/8) I - i sin(pi/8) Z); the global phase cancels.
  const double c = std::cos(M_PI / 8);
  const double s = std::sin(M_PI / 8);
  const PauliString id(n);
  const PauliString z = PauliString::single(n, q, 'Z');
  return PauliChannel{n,
                      {{id, id, c * c},
                       {id, z, Complex(0, c * s)},
                       {z, id, Complex(0, -c * s)},
                       {z, z, s * s}}};
}

GenStabState GenStabState::from_basis_state(const Tableau& frame, const BasisIndex& b) {
  if (frame.size() == 0) throw DimensionError("empty frame");
  for (std::size_t i = frame.size(); i < kMaxQubits; ++i) {
    if (b.get(i)) throw DimensionError("basis index longer than the frame");
  }
  GenStabState s(frame);
  s.amps_.emplace(b, Complex(1.0));
  return s;
}

std::size_t GenStabState::lambda() const {
  if (pure_) return amps_.size() * amps_.size();
  return chi_.size();
}

Complex GenStabState::chi(const BasisIndex& i, const BasisIndex& j) const {
  if (pure_) {
    auto a = amps_.find(i);
    auto b = amps_.find(j);
    if (a == amps_.end() || b == amps_.end()) return 0.0;
    return a->second * std::conj(b->second);
  }
  auto it = chi_.find(BasisPair{i, j});
  return it == chi_.end() ? Complex(0.0) : it->second;
}

std::vector<std::pair<BasisPair, Complex>> GenStabState::chi_entries() const {
  std::vector<std::pair<BasisPair, Complex>> out;
  if (pure_) {
    for (const auto& [i, vi] : amps_) {
      for (const auto& [j, vj] : amps_) out.push_back({BasisPair{i, j}, vi * std::conj(vj)});
    }
  } else {
    out.assign(chi_.begin(), chi_.end());
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    return a.first.i != b.first.i ? a.first.i < b.first.i : a.first.j < b.first.j;
  });
  return out;
}

Complex GenStabState::trace() const {
  Complex t = 0.0;
  if (pure_) {
    for (const auto& [i, v] : amps_) t += std::norm(v);
  } else {
    for (const auto& [k, v] : chi_) {
      if (k.i == k.j) t += v;
    }
  }
  return t;
}

double GenStabState::hermiticity_error() const {
  if (pure_) return 0.0;
  double err = 0.0;
  for (const auto& [k, v] : chi_) {
    auto it = chi_.find(BasisPair{k.j, k.i});
    const Complex partner = it == chi_.end() ? Complex(0.0) : it->second;
    err = std::max(err, std::abs(v - std::conj(partner)));
  }
  return err;
}

void GenStabState::evolve_clifford(const CliffordGate& g) { frame_.apply(g); }

void GenStabState::promote_to_mixed() {
  if (!pure_) return;
  chi_.clear();
  chi_.reserve(amps_.size() * amps_.size());
  for (const auto& [i, vi] : amps_) {
    for (const auto& [j, vj] : amps_) chi_.emplace(BasisPair{i, j}, vi * std::conj(vj));
  }
  amps_.clear();
  pure_ = false;
}

void GenStabState::prune() {
  if (pure_) {
    std::erase_if(amps_, [](const auto& kv) { return std::abs(kv.second) < kChiPruneTol; });
  } else {
    std::erase_if(chi_, [](const auto& kv) { return std::abs(kv.second) < kChiPruneTol; });
  }
}

void GenStabState::evolve_pauli_channel(const PauliChannel& ch) {
  if (ch.n != size()) {
    throw DimensionError("channel acts on " + std::to_string(ch.n) + " qubits, state has " +
                         std::to_string(size()));
  }
  promote_to_mixed();
  std::unordered_map<BasisPair, Complex, BasisPairHash> next;
  next.reserve(chi_.size() * std::max<std::size_t>(1, ch.entries.size()));
  for (const auto& e : ch.entries) {
    if (e.phi == Complex(0.0)) continue;
    const Decomposed m = decompose_for(frame_, e.left);
    const Decomposed r = decompose_for(frame_, e.right);
    const Complex pre = e.phi * m.alpha * std::conj(r.alpha);
    for (const auto& [k, v] : chi_) {
      const double sign = parity_sign(m.c, k.i) * parity_sign(r.c, k.j);
      next[BasisPair{k.i ^ m.b, k.j ^ r.b}] += pre * sign * v;
    }
  }
  chi_ = std::move(next);
  prune();
  if (ch.is_trace_preserving()) {
    const Complex tr = trace();
    if (std::abs(tr - 1.0) > 1e-10) {
      throw NumericalError("trace drifted to " + std::to_string(tr.real()) + " after channel");
    }
  }
}

void GenStabState::apply_rz(std::size_t q, double theta) {
  if (q >= size()) throw DimensionError("Rz site " + std::to_string(q) + " out of range");
  if (!pure_) {
    evolve_pauli_channel(rz_channel(size(), q, theta));
    return;
  }
  const Decomposed z = decompose_for(frame_, PauliString::single(size(), q, 'Z'));
  const double c = std::cos(theta / 2);
  const Complex s = Complex(0, -std::sin(theta / 2)) * z.alpha;
  std::unordered_map<BasisIndex, Complex, BitsHash> next;
  next.reserve(2 * amps_.size());
  for (const auto& [i, v] : amps_) {
    next[i] += c * v;
    next[i ^ z.b] += s * parity_sign(z.c, i) * v;
  }
  amps_ = std::move(next);
  prune();
}

Complex GenStabState::expectation_complex(const PauliSum& h) const {
  if (h.size() != size()) {
    throw DimensionError("operator has " + std::to_string(h.size()) + " qubits, state has " +
                         std::to_string(size()));
  }
  Complex total = 0.0;
  for (const auto& t : h.terms()) {
    const Decomposed d = decompose_for(frame_, t.op);
    Complex acc = 0.0;
    if (pure_) {
      for (const auto& [i, vi] : amps_) {
        auto it = amps_.find(i ^ d.b);
        if (it == amps_.end()) continue;
        acc += vi * std::conj(it->second) * parity_sign(d.c, i);
      }
    } else {
      for (const auto& [k, v] : chi_) {
        if ((k.i ^ d.b) == k.j) acc += v * parity_sign(d.c, k.i);
      }
    }
    total += t.coeff * d.alpha * acc;
  }
  return total;
}

double GenStabState::expectation(const PauliSum& h) const {
  const Complex e = expectation_complex(h);
  if (std::abs(e.imag()) > 1e-9) {
    throw NumericalError("expectation has imaginary residue " + std::to_string(e.imag()));
  }
  return e.real();
}

CMatrix GenStabState::to_dense() const {
  if (size() > kDenseCircuitMaxQubits) throw SizeError("GenStabState::to_dense limited to 10 qubits");
  const auto dim = static_cast<Eigen::Index>(std::size_t{1} << size());
  CMatrix rho = CMatrix::Zero(dim, dim);
  std::unordered_map<BasisIndex, CVector, BitsHash> cache;
  auto basis = [&](const BasisIndex& b) -> const CVector& {
    auto it = cache.find(b);
    if (it == cache.end()) it = cache.emplace(b, frame_.state_dense(b)).first;
    return it->second;
  };
  for (const auto& [k, v] : chi_entries()) rho += v * basis(k.i) * basis(k.j).adjoint();
  return rho;
}

CVector GenStabState::to_dense_state() const {
  if (!pure_) throw NumericalError("state is mixed; no state vector");
  if (size() > kDenseOperatorMaxQubits) throw SizeError("dense state limited to 12 qubits");
  CVector psi = CVector::Zero(static_cast<Eigen::Index>(std::size_t{1} << size()));
  std::vector<std::pair<BasisIndex, Complex>> sorted(amps_.begin(), amps_.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (const auto& [i, v] : sorted) psi += v * frame_.state_dense(i);
  return psi;
}

GenStabState evolve_clifford(GenStabState s, const CliffordGate& g) {
  s.evolve_clifford(g);
  return s;
}

GenStabState evolve_pauli_channel(GenStabState s, const PauliChannel& ch) {
  s.evolve_pauli_channel(ch);
  return s;
}

GenStabState simulate(const Circuit& c) {
  c.validate();
  GenStabState s = GenStabState::from_basis_state(Tableau::computational(c.n), BasisIndex{});
  for (const auto& g : c.gates) {
    if (const auto* cg = std::get_if<CliffordGate>(&g)) {
      s.evolve_clifford(*cg);
    } else {
      const auto& rz = std::get<RzGate>(g);
      s.apply_rz(rz.site, rz.theta);
    }
  }
  return s;
}

}  // namespace magic
