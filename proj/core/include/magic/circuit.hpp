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
#include <utility>
#include <variant>
#include <vector>

#include "magic/tableau.hpp"

namespace magic {

/// Rz(theta) = exp(-i theta Z / 2) on one site.
struct RzGate {
  std::size_t site = 0;
  double theta = 0.0;

  friend bool operator==(const RzGate&, const RzGate&) = default;
};

using Gate = std::variant<CliffordGate, RzGate>;

/// Flat gate list in application order (first element acts first on a state).
struct Circuit {
  std::size_t n = 0;
  std::size_t layers = 0;
  std::vector<Gate> gates;

  std::size_t rz_count() const;
  /// Throws DimensionError on out-of-range or coincident sites.
  void validate() const;

  friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Site pairs of one brickwork layer: n gates for n >= 2, the even bonds
/// (0,1), (2,3), ... followed by the odd bonds (1,2), (3,4), ... and the
/// periodic bond (n-1, 0).
std::vector<std::pair<std::size_t, std::size_t>> brickwork_bonds(std::size_t n);

/// Brickwork Clifford layers doped with k Rz gates.
///
/// Application order on a state: the first `rz_position()` brickwork layers,
/// the Rz layer, the remaining brickwork layers, then the optional `frame`
/// gates (the warm-start Clifford). For ground-state work U|0...0> is the
/// trial state and H_eff = U^dagger H U.
struct LadderCircuit {
  /// `rz_layer` value placing the Rz layer after every brickwork layer.
  static constexpr std::size_t kRzAtEnd = static_cast<std::size_t>(-1);

  std::size_t n = 0;
  std::size_t layers = 0;
  /// layers * n gate codes, slot = layer * n + gate.
  std::vector<std::uint8_t> codes;
  std::vector<std::size_t> rz_sites;
  std::vector<double> thetas;
  std::vector<CliffordGate> frame;
  /// Number of brickwork layers applied before the Rz layer.
  std::size_t rz_layer = kRzAtEnd;

  std::size_t rz_position() const { return rz_layer < layers ? rz_layer : layers; }

  static LadderCircuit identity(std::size_t n, std::size_t layers);

  std::size_t num_slots() const { return codes.size(); }
  std::size_t rz_count() const { return rz_sites.size(); }
  CliffordGate brick_gate(std::size_t slot) const;
  std::vector<CliffordGate> brick_gates() const;

  Circuit to_circuit() const;
  /// Throws DimensionError when an invariant fails.
  void validate() const;

  friend bool operator==(const LadderCircuit&, const LadderCircuit&) = default;
};

}  // namespace magic
