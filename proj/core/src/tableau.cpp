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

#include "magic/tableau.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

#include "magic/dense.hpp"
#include "magic/error.hpp"

namespace magic {

namespace {

constexpr char kCodeSymbols[4] = {'I', 'X', 'Y', 'Z'};

int code_digit(char c) {
  switch (c) {
    case 'I': return 0;
    case 'X': return 1;
    case 'Y': return 2;
    case 'Z': return 3;
    default: throw ParseError("invalid Pauli character '" + std::string(1, c) + "' in gate");
  }
}

void check_hermitian_generator(const PauliString& p) {
  if (!p.is_hermitian()) {
    throw std::logic_error("tableau generator acquired an imaginary phase: " + p.str());
  }
}

}  // namespace

char pauli_code_symbol(int digit) { return kCodeSymbols[digit & 3]; }

CliffordGate CliffordGate::from_pauli(std::string_view word, std::size_t first,
                                      std::size_t second) {
  if (word.size() != 2) throw ParseError("gate Pauli must have length 2, got '" + std::string(word) + "'");
  return CliffordGate{static_cast<std::uint8_t>(code_digit(word[0]) | (code_digit(word[1]) << 2)),
                      first, second};
}

PauliString CliffordGate::generator(std::size_t n) const {
  if (first >= n || second >= n) {
    throw DimensionError("gate sites (" + std::to_string(first) + "," + std::to_string(second) +
                         ") out of range for " + std::to_string(n) + " qubits");
  }
  if (first == second) throw DimensionError("gate sites must be distinct");
  PauliString p(n);
  p.set(first, kCodeSymbols[code & 3]);
  p.set(second, kCodeSymbols[(code >> 2) & 3]);
  return p;
}

std::string CliffordGate::pauli() const {
  return {kCodeSymbols[code & 3], kCodeSymbols[(code >> 2) & 3]};
}

Tableau Tableau::computational(std::size_t n) {
  if (n == 0) throw DimensionError("tableau needs at least one qubit");
  Tableau t;
  t.n_ = n;
  t.stabilizers_.reserve(n);
  t.destabilizers_.reserve(n);
  for (std::size_t q = 0; q < n; ++q) {
    t.stabilizers_.push_back(PauliString::single(n, q, 'Z'));
    t.destabilizers_.push_back(PauliString::single(n, q, 'X'));
  }
  return t;
}

void Tableau::apply_rotation(const PauliString& p) {
  if (p.size() != n_) throw DimensionError("rotation size does not match tableau");
  for (auto& s : stabilizers_) {
    s = conjugate_quarter_turn(s, p, false);
    check_hermitian_generator(s);
  }
  for (auto& d : destabilizers_) {
    d = conjugate_quarter_turn(d, p, false);
    check_hermitian_generator(d);
  }
}

void Tableau::apply(const CliffordGate& g) {
  const PauliString p = g.generator(n_);
  if (g.is_identity()) return;
  apply_rotation(p);
}

std::optional<std::string> Tableau::check_invariants() const {
  if (stabilizers_.size() != n_ || destabilizers_.size() != n_) return "generator count mismatch";
  for (std::size_t i = 0; i < n_; ++i) {
    if (!stabilizers_[i].is_hermitian()) return "stabilizer " + std::to_string(i) + " not Hermitian";
    if (!destabilizers_[i].is_hermitian()) return "destabilizer " + std::to_string(i) + " not Hermitian";
    for (std::size_t j = 0; j < n_; ++j) {
      if (i < j && !commutes(stabilizers_[i], stabilizers_[j])) {
        return "stabilizers " + std::to_string(i) + "," + std::to_string(j) + " anticommute";
      }
      if (i < j && !commutes(destabilizers_[i], destabilizers_[j])) {
        return "destabilizers " + std::to_string(i) + "," + std::to_string(j) + " anticommute";
      }
      const bool c = commutes(destabilizers_[i], stabilizers_[j]);
      if (i == j && c) return "d_" + std::to_string(i) + " commutes with its stabilizer";
      if (i != j && !c) {
        return "d_" + std::to_string(i) + " anticommutes with s_" + std::to_string(j);
      }
    }
  }
  std::vector<PauliString> all = stabilizers_;
  all.insert(all.end(), destabilizers_.begin(), destabilizers_.end());
  if (symplectic_rank(all) != 2 * n_) return "generators are not independent";
  return std::nullopt;
}

PauliDecomposition Tableau::decompose(const PauliString& p) const {
  if (p.size() != n_) throw DimensionError("Pauli size does not match tableau");
  PauliDecomposition out;
  // Running product of the selected generators; its phase plays the role of
  // the accumulated ipow() corrections.
  PauliString acc(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (!commutes(p, stabilizers_[i])) {
      out.b.set(i, true);
      acc *= destabilizers_[i];
    }
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (!commutes(p, destabilizers_[i])) {
      out.c.set(i, true);
      acc *= stabilizers_[i];
    }
  }
  if (acc.x() != p.x() || acc.z() != p.z()) {
    throw std::logic_error("Pauli decomposition failed for " + p.str() +
                           "; tableau invariants are broken");
  }
  out.alpha = static_cast<std::uint8_t>((p.phase() + 4 - acc.phase()) & 3u);
  return out;
}

PauliString Tableau::compose(const Bits& b, const Bits& c) const {
  PauliString acc(n_);
  for (std::size_t i = 0; i < n_; ++i) {
    if (b.get(i)) acc *= destabilizers_[i];
  }
  for (std::size_t i = 0; i < n_; ++i) {
    if (c.get(i)) acc *= stabilizers_[i];
  }
  return acc;
}

int Tableau::expectation(const BasisIndex& basis, const PauliString& p) const {
  const PauliDecomposition d = decompose(p);
  if (d.b.any()) return 0;
  // P = i^alpha s_c and d_basis s_c d_basis = (-1)^{basis.c} s_c.
  if (d.alpha & 1u) throw NotHermitianError("expectation of a non-Hermitian Pauli");
  const int sign = d.alpha == 2 ? -1 : 1;
  return dot(d.c, basis) ? -sign : sign;
}

CVector Tableau::state_dense(const BasisIndex& basis) const {
  if (n_ > 12) throw SizeError("dense stabilizer state limited to 12 qubits");
  const std::size_t dim = std::size_t{1} << n_;
  const double threshold = 0.5 / static_cast<double>(dim);
  for (std::size_t k = 0; k < dim; ++k) {
    CVector v = CVector::Zero(static_cast<Eigen::Index>(dim));
    v(static_cast<Eigen::Index>(k)) = 1.0;
    for (const auto& s : stabilizers_) v = 0.5 * (v + apply_pauli(s, v));
    const double norm2 = v.squaredNorm();
    if (norm2 > threshold) {
      v /= std::sqrt(norm2);
      // Fix the global phase: first significant amplitude real positive.
      for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (std::abs(v(i)) > 1e-9) {
          v *= std::conj(v(i)) / std::abs(v(i));
          break;
        }
      }
      for (std::size_t i = 0; i < n_; ++i) {
        if (basis.get(i)) v = apply_pauli(destabilizers_[i], v);
      }
      return v;
    }
  }
  throw std::logic_error("stabilizer projector vanished; tableau invariants are broken");
}

Tableau apply_clifford(Tableau t, const CliffordGate& g) {
  t.apply(g);
  return t;
}

PauliDecomposition decompose_pauli(const Tableau& t, const PauliString& p) { return t.decompose(p); }

int stabilizer_expectation(const Tableau& t, const BasisIndex& basis, const PauliString& p) {
  return t.expectation(basis, p);
}

CVector tableau_state_dense(const Tableau& t, const BasisIndex& basis) {
  return t.state_dense(basis);
}

std::size_t symplectic_rank(const std::vector<PauliString>& ops) {
  if (ops.empty()) return 0;
  const std::size_t n = ops.front().size();
  std::vector<std::pair<Bits, Bits>> rows;
  rows.reserve(ops.size());
  for (const auto& p : ops) rows.emplace_back(p.x(), p.z());
  std::size_t rank = 0;
  for (std::size_t col = 0; col < 2 * n && rank < rows.size(); ++col) {
    auto bit = [&](const std::pair<Bits, Bits>& r) {
      return col < n ? r.first.get(col) : r.second.get(col - n);
    };
    std::size_t pivot = rank;
    while (pivot < rows.size() && !bit(rows[pivot])) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r != rank && bit(rows[r])) {
        rows[r].first ^= rows[rank].first;
        rows[r].second ^= rows[rank].second;
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace magic
