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

#include <cmath>
#include <cstddef>
#include <string>

#include "magic/circuit.hpp"
#include "magic/linalg.hpp"
#include "magic/parallel.hpp"
#include "magic/pauli.hpp"

namespace magic::test {

inline std::string fixture(const std::string& name) { return std::string(MAGIC_FIXTURE_DIR) + "/" + name; }

inline char random_letter(Rng& rng) { return "IXYZ"[rng.index(4)]; }

inline PauliString random_pauli(std::size_t n, Rng& rng, bool with_phase = false) {
  PauliString p(n);
  for (std::size_t q = 0; q < n; ++q) p.set(q, random_letter(rng));
  if (with_phase) p.set_phase(static_cast<std::uint8_t>(rng.index(4)));
  return p;
}

/// Canonical sum of `terms` random words with coefficients in [-1, 1].
inline PauliSum random_hamiltonian(std::size_t n, std::size_t terms, Rng& rng) {
  PauliSum h(n);
  for (std::size_t t = 0; t < terms; ++t) h.add(rng.uniform(-1.0, 1.0), random_pauli(n, rng));
  return canonicalize(h);
}

/// -sum Z_i Z_{i+1} - g sum X_i on a ring.
inline PauliSum tfim(std::size_t n, double g) {
  PauliSum h(n);
  for (std::size_t i = 0; i < n; ++i) {
    PauliString zz(n);
    zz.set(i, 'Z');
    zz.set((i + 1) % n, 'Z');
    h.add(-1.0, zz);
    h.add(-g, PauliString::single(n, i, 'X'));
  }
  return canonicalize(h);
}

/// N = sum_q (I - Z_q)/2.
inline PauliSum number_operator(std::size_t n) {
  PauliSum num(n);
  for (std::size_t q = 0; q < n; ++q) {
    num.add(0.5, PauliString(n));
    num.add(-0.5, PauliString::single(n, q, 'Z'));
  }
  return canonicalize(num);
}

inline CliffordGate random_gate(std::size_t n, Rng& rng) {
  const std::size_t a = rng.index(n);
  std::size_t b = rng.index(n - 1);
  if (b >= a) ++b;
  return CliffordGate{static_cast<std::uint8_t>(rng.index(16)), a, b};
}

inline LadderCircuit random_ladder(std::size_t n, std::size_t layers, std::size_t k, Rng& rng,
                                   std::size_t frame_gates = 0) {
  LadderCircuit c = LadderCircuit::identity(n, layers);
  for (auto& code : c.codes) code = static_cast<std::uint8_t>(rng.index(16));
  for (std::size_t j = 0; j < k; ++j) {
    c.rz_sites.push_back(rng.index(n));
    c.thetas.push_back(rng.uniform(0.0, 6.283185307179586));
  }
  for (std::size_t g = 0; g < frame_gates; ++g) c.frame.push_back(random_gate(n, rng));
  return c;
}

/// Free-form Clifford + kRz circuit with Rz gates interleaved anywhere.
inline Circuit random_circuit(std::size_t n, std::size_t cliffords, std::size_t k, Rng& rng) {
  Circuit c;
  c.n = n;
  std::size_t placed_rz = 0;
  const std::size_t total = cliffords + k;
  for (std::size_t i = 0; i < total; ++i) {
    const bool rz = placed_rz < k && (rng.index(total - i) < k - placed_rz);
    if (rz) {
      c.gates.emplace_back(RzGate{rng.index(n), rng.uniform(0.0, 6.283185307179586)});
      ++placed_rz;
    } else {
      c.gates.emplace_back(random_gate(n, rng));
    }
  }
  return c;
}

inline CVector random_state(std::size_t n, Rng& rng) {
  CVector v(Eigen::Index{1} << n);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = Complex(rng.normal(), rng.normal());
  return v / v.norm();
}

inline double max_abs_diff(const CMatrix& a, const CMatrix& b) { return (a - b).cwiseAbs().maxCoeff(); }

}  // namespace magic::test
