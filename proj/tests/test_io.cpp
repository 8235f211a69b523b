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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

#include "magic/error.hpp"
#include "magic/io.hpp"
#include "test_util.hpp"

namespace magic {
namespace {

namespace fs = std::filesystem;

class TempDir {
 public:
  TempDir() : path_(fs::temp_directory_path() / ("magic_io_" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) +
                                                 "_" + ::testing::UnitTest::GetInstance()->current_test_info()->name())) {
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

std::string parse_error_message(std::string_view text) {
  try {
    parse_hamiltonian(text);
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

ResultFile random_result(Rng& rng) {
  ResultFile r;
  r.command = rng.index(2) ? "optimize-ground" : "ladder";
  r.config_json = "{\"layers\":" + std::to_string(1 + rng.index(3)) + ",\"objective\":\"ground\"}";
  r.seed = rng.next();
  r.best_cost = rng.uniform(-1e3, 1e3) * std::pow(10.0, rng.uniform(-12.0, 12.0));
  if (rng.index(2)) r.best_circuit = CircuitFile::from_ladder(test::random_ladder(4, 2, rng.index(3), rng, rng.index(3)));
  for (std::size_t i = 0; i < rng.index(5); ++i) r.endpoints.push_back({i, rng.uniform(-5.0, 5.0)});
  if (rng.index(2)) {
    std::vector<TraceEntry> t;
    t.push_back({0, -1, rng.uniform(-5.0, 5.0)});
    for (std::size_t i = 1; i < 6; ++i) t.push_back({i, static_cast<long>(rng.index(12)), rng.uniform(-5.0, 5.0)});
    r.trace = t;
  }
  if (rng.index(2)) r.wall_time = rng.uniform(0.0, 100.0);
  if (rng.index(2)) r.extra_json = "{\"magic_M\":0.1,\"mu\":-0.25}";
  return r;
}

TEST(HamiltonianText, BasicExample) {
  const auto h = parse_hamiltonian("qubits 2\n1.0 ZZ\n-0.5 XI\n");
  EXPECT_EQ(h.size(), 2u);
  EXPECT_EQ(h.num_terms(), 2u);
}

TEST(HamiltonianText, DuplicatesMergeAndCommentsIgnored) {
  const auto h = parse_hamiltonian("# one qubit\n0.5 Z\n\n0.5 Z   # again\n");
  ASSERT_EQ(h.num_terms(), 1u);
  EXPECT_DOUBLE_EQ(h.terms()[0].coeff, 1.0);
  EXPECT_EQ(h.size(), 1u);
}

TEST(HamiltonianText, ErrorsReportLineNumbers) {
  EXPECT_NE(parse_error_message("0.5 XYQ").find("line 1"), std::string::npos);
  EXPECT_NE(parse_error_message("qubits 2\n1 ZZ\n1 ZZZ\n").find("line 3"), std::string::npos);
  EXPECT_NE(parse_error_message("1 ZZ\nabc ZZ\n").find("line 2"), std::string::npos);
  EXPECT_NE(parse_error_message("inf Z\n").find("line 1"), std::string::npos);
  EXPECT_THROW(parse_hamiltonian("qubits 3\n1 ZZ\n"), Error);
}

TEST(HamiltonianText, RoundTripsRandomInstances) {
  Rng rng(111);
  for (int trial = 0; trial < 100; ++trial) {
    const auto h = test::random_hamiltonian(1 + rng.index(8), 1 + rng.index(20), rng);
    const auto back = parse_hamiltonian(format_hamiltonian(h));
    EXPECT_EQ(back, h);
    EXPECT_EQ(format_hamiltonian(back), format_hamiltonian(h));
  }
}

TEST(CircuitJson, RoundTripsRandomInstances) {
  Rng rng(112);
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t n = 2 + rng.index(5);
    CircuitFile f;
    if (trial % 2 == 0) {
      auto c = test::random_ladder(n, 1 + rng.index(3), rng.index(4), rng, rng.index(3));
      if (rng.index(2)) c.rz_layer = rng.index(c.layers + 1);
      f = CircuitFile::from_ladder(c);
    } else {
      f.circuit = test::random_circuit(n, 10, rng.index(4), rng);
    }
    const auto back = parse_circuit(format_circuit(f));
    EXPECT_EQ(back, f);
  }
}

TEST(CircuitJson, RejectsInvalidGates) {
  EXPECT_THROW(parse_circuit(R"({"n":2,"layers":0,"gates":[{"type":"pauli_rot","sites":[0,2],"pauli":"XY"}]})"), Error);
  EXPECT_THROW(parse_circuit(R"({"n":2,"layers":0,"gates":[{"type":"pauli_rot","sites":[0,1],"pauli":"XYZ"}]})"), Error);
  EXPECT_THROW(parse_circuit(R"({"n":2,"layers":0,"gates":[{"type":"swap"}]})"), Error);
  EXPECT_THROW(parse_circuit("not json"), ParseError);
  const auto ok = parse_circuit(R"({"n":2,"layers":0,"gates":[{"type":"rz","site":1,"theta":0.5}]})");
  EXPECT_EQ(ok.circuit.rz_count(), 1u);
}

TEST(ResultJson, RoundTripsRandomInstances) {
  Rng rng(113);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = random_result(rng);
    const std::string text = format_result(r);
    const auto back = parse_result(text);
    EXPECT_EQ(back, r);
    EXPECT_EQ(format_result(back), text);
  }
}

TEST(ResultJson, StableKeyOrder) {
  Rng rng(114);
  const std::string text = format_result(random_result(rng));
  EXPECT_LT(text.find("\"best_cost\""), text.find("\"command\""));
  EXPECT_LT(text.find("\"command\""), text.find("\"seed\""));
  EXPECT_EQ(text.back(), '\n');
  EXPECT_NE(text.find("\"schema_version\": 1"), std::string::npos);
}

TEST(WriteAtomic, RefusesOverwriteWithoutForce) {
  TempDir dir;
  const auto path = dir.path() / "out.json";
  write_atomic(path, "first", false);
  EXPECT_EQ(read_file(path), "first");
  EXPECT_THROW(write_atomic(path, "second", false), IoError);
  EXPECT_EQ(read_file(path), "first");
  write_atomic(path, "second", true);
  EXPECT_EQ(read_file(path), "second");
  std::size_t entries = 0;
  for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path())) ++entries;
  EXPECT_EQ(entries, 1u);
}

TEST(WriteAtomic, FileRoundTrips) {
  TempDir dir;
  Rng rng(115);
  const auto h = test::random_hamiltonian(5, 10, rng);
  write_atomic(dir.path() / "h.ham", format_hamiltonian(h), false);
  EXPECT_EQ(load_hamiltonian(dir.path() / "h.ham"), h);
  const auto r = random_result(rng);
  write_atomic(dir.path() / "r.json", format_result(r), false);
  EXPECT_EQ(load_result(dir.path() / "r.json"), r);
  EXPECT_THROW(read_file(dir.path() / "missing"), IoError);
}

}  // namespace
}  // namespace magic
