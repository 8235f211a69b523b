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

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magic/ansatz_opt.hpp"
#include "magic/circuit.hpp"
#include "magic/pauli.hpp"

namespace magic {

inline constexpr int kSchemaVersion = 1;

std::string read_file(const std::filesystem::path& path);

/// Writes through a temporary file and rename. Refuses to replace an existing
/// file unless `force`. Throws IoError.
void write_atomic(const std::filesystem::path& path, std::string_view contents, bool force);

/// Text format: optional `qubits <n>` header, `<coefficient> <word>` lines,
/// `#` comments, blank lines ignored. Duplicates merge; result is canonical.
PauliSum parse_hamiltonian(std::string_view text);
PauliSum load_hamiltonian(const std::filesystem::path& path);
std::string format_hamiltonian(const PauliSum& h);

/// Flat gate list, optionally carrying the brickwork parameters it came from.
struct CircuitFile {
  Circuit circuit;
  std::optional<LadderCircuit> ansatz;

  static CircuitFile from_ladder(const LadderCircuit& c);

  friend bool operator==(const CircuitFile&, const CircuitFile&) = default;
};

std::string format_circuit(const CircuitFile& c);
CircuitFile parse_circuit(std::string_view text);
CircuitFile load_circuit(const std::filesystem::path& path);

struct ResultFile {
  int schema_version = kSchemaVersion;
  std::string command;
  /// Compact JSON object echoing the configuration.
  std::string config_json = "{}";
  std::uint64_t seed = 0;
  double best_cost = 0.0;
  std::optional<CircuitFile> best_circuit;
  std::vector<RestartEndpoint> endpoints;
  std::optional<std::vector<TraceEntry>> trace;
  std::optional<double> wall_time;
  /// Compact JSON object with command-specific payload.
  std::string extra_json = "{}";

  friend bool operator==(const ResultFile&, const ResultFile&) = default;
};

std::string format_result(const ResultFile& r);
ResultFile parse_result(std::string_view text);
ResultFile load_result(const std::filesystem::path& path);

}  // namespace magic
