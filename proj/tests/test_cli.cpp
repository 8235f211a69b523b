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
#include <sstream>

#include "magic/cli.hpp"
#include "magic/dense.hpp"
#include "magic/io.hpp"
#include "test_util.hpp"

namespace magic {
namespace {

namespace fs = std::filesystem;

struct RunResult {
  int code = 0;
  std::string out;
  std::string err;
};

RunResult run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  RunResult r;
  r.code = cli_run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / "magic_cli_tests";
  fs::create_directories(dir);
  const auto p = dir / name;
  fs::remove(p);
  return p;
}

TEST(Cli, ExactPrintsGroundEnergy) {
  const auto r = run({"exact", "--hamiltonian", test::fixture("tfim6.ham")});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto res = parse_result(r.out);
  EXPECT_EQ(res.command, "exact");
  EXPECT_NEAR(res.best_cost, exact_ground(load_hamiltonian(test::fixture("tfim6.ham"))).energy, 1e-12);
}

TEST(Cli, ExactGrandFreeEnergy) {
  const auto r = run({"exact", "--hamiltonian", test::fixture("tfim6.ham"), "--number-op", test::fixture("number6.ham"),
                      "--beta", "2", "--mu", "0.5"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto h = load_hamiltonian(test::fixture("tfim6.ham"));
  const auto num = load_hamiltonian(test::fixture("number6.ham"));
  const double f = exact_grand_free_energy(h, num, 2.0, 0.5).free_energy;
  const std::string extra = parse_result(r.out).extra_json;
  const std::string key = "\"free_energy\":";
  const auto at = extra.find(key);
  ASSERT_NE(at, std::string::npos) << extra;
  EXPECT_NEAR(std::stod(extra.substr(at + key.size())), f, 1e-12);
}

TEST(Cli, OptimizeGroundIsDeterministicAcrossThreads) {
  const std::vector<std::string> base{"optimize-ground", "--hamiltonian", test::fixture("tfim6.ham"), "--rz", "1",
                                      "--restarts", "3", "--iters", "8", "--theta-starts", "2", "--seed", "7"};
  auto a_args = base;
  a_args.insert(a_args.end(), {"--threads", "1"});
  auto b_args = base;
  b_args.insert(b_args.end(), {"--threads", "3"});
  const auto a = run(a_args);
  const auto b = run(b_args);
  ASSERT_EQ(a.code, 0) << a.err;
  EXPECT_EQ(a.out, b.out);
  const auto res = parse_result(a.out);
  EXPECT_EQ(res.seed, 7u);
  EXPECT_EQ(res.endpoints.size(), 3u);
  ASSERT_TRUE(res.best_circuit.has_value());
  EXPECT_FALSE(res.wall_time.has_value());
}

TEST(Cli, SeedIsRecordedWhenAbsent) {
  const auto r = run({"optimize-ground", "--hamiltonian", test::fixture("tfim3.ham"), "--restarts", "1", "--iters", "2"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto res = parse_result(r.out);
  const auto again = run({"optimize-ground", "--hamiltonian", test::fixture("tfim3.ham"), "--restarts", "1", "--iters",
                          "2", "--seed", std::to_string(res.seed)});
  EXPECT_EQ(again.out, r.out);
}

TEST(Cli, TransformRoundTripsThroughFiles) {
  const auto out = scratch("ground.json");
  const auto r = run({"optimize-ground", "--hamiltonian", test::fixture("tfim3.ham"), "--rz", "1", "--restarts", "2",
                      "--iters", "4", "--seed", "3", "--out", out.string()});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  const auto res = load_result(out);
  const auto circ = scratch("circuit.json");
  write_atomic(circ, format_circuit(*res.best_circuit), true);
  const auto ham_out = scratch("heff.ham");
  const auto t = run({"transform", "--hamiltonian", test::fixture("tfim3.ham"), "--circuit", circ.string(), "--ham-out",
                      ham_out.string(), "--report-offdiag"});
  ASSERT_EQ(t.code, 0) << t.err;
  const auto heff = load_hamiltonian(ham_out);
  EXPECT_NEAR(exact_ground(heff).energy, exact_ground(load_hamiltonian(test::fixture("tfim3.ham"))).energy, 1e-9);
  EXPECT_NE(t.out.find("offdiag_weight"), std::string::npos);
}

TEST(Cli, TransformWithMismatchedSizeExitsThree) {
  Rng rng(121);
  const auto circ = scratch("n4.json");
  write_atomic(circ, format_circuit(CircuitFile::from_ladder(test::random_ladder(4, 1, 0, rng))), true);
  const auto r = run({"transform", "--hamiltonian", test::fixture("tfim3.ham"), "--circuit", circ.string()});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.err.find("qubit"), std::string::npos) << r.err;
}

TEST(Cli, UsageErrorsExitTwo) {
  EXPECT_EQ(run({}).code, 2);
  EXPECT_EQ(run({"optimize-ground"}).code, 2);
  EXPECT_EQ(run({"exact", "--hamiltonian", test::fixture("tfim3.ham"), "--bogus"}).code, 2);
  EXPECT_EQ(run({"optimize-ground", "--hamiltonian", test::fixture("tfim3.ham"), "--warm-start", "maybe"}).code, 2);
  EXPECT_EQ(run({"optimize-thermal", "--hamiltonian", test::fixture("tfim3.ham"), "--beta", "1"}).code, 2);
}

TEST(Cli, ParseErrorExitsThree) {
  const auto bad = scratch("bad.ham");
  write_atomic(bad, "0.5 XYQ\n", true);
  EXPECT_EQ(run({"exact", "--hamiltonian", bad.string()}).code, 3);
}

TEST(Cli, OutputIsNotOverwrittenWithoutForce) {
  const auto out = scratch("exact.json");
  const std::vector<std::string> args{"exact", "--hamiltonian", test::fixture("tfim3.ham"), "--out", out.string()};
  EXPECT_EQ(run(args).code, 0);
  EXPECT_EQ(run(args).code, 1);
  auto forced = args;
  forced.push_back("--force");
  EXPECT_EQ(run(forced).code, 0);
  EXPECT_EQ(run({"exact", "--hamiltonian", "/nonexistent/h.ham"}).code, 1);
}

TEST(Cli, RecordTimeAddsWallTime) {
  const auto r = run({"exact", "--hamiltonian", test::fixture("tfim3.ham"), "--record-time"});
  ASSERT_EQ(r.code, 0);
  EXPECT_TRUE(parse_result(r.out).wall_time.has_value());
}

TEST(Cli, OtherSubcommandsRun) {
  const auto ladder = run({"ladder", "--hamiltonian", test::fixture("tfim3.ham"), "--k-max", "1", "--restarts", "2",
                           "--iters", "3", "--seed", "1"});
  EXPECT_EQ(ladder.code, 0) << ladder.err;
  const auto thermal = run({"optimize-thermal", "--hamiltonian", test::fixture("tfim6.ham"), "--number-op",
                            test::fixture("number6.ham"), "--beta", "2", "--target-number", "2", "--restarts", "2",
                            "--iters", "3", "--seed", "1"});
  EXPECT_EQ(thermal.code, 0) << thermal.err;
  EXPECT_NE(thermal.out.find("mean_number"), std::string::npos);
  const auto pulse = run({"pulse-optimize", "--target", test::fixture("tfim3.ham"), "--time", "0.3", "--segments", "2",
                          "--restarts", "2", "--iters", "2", "--seed", "1"});
  EXPECT_EQ(pulse.code, 0) << pulse.err;

  const auto out = scratch("for_metrics.json");
  ASSERT_EQ(run({"optimize-ground", "--hamiltonian", test::fixture("tfim3.ham"), "--rz", "1", "--restarts", "1",
                 "--iters", "3", "--seed", "2", "--out", out.string()})
                .code,
            0);
  const auto circ = scratch("metrics_circuit.json");
  write_atomic(circ, format_circuit(*load_result(out).best_circuit), true);
  const auto metrics = run({"metrics", "--circuit", circ.string(), "--hamiltonian", test::fixture("tfim3.ham"), "--which",
                            "magic,negativity,offdiag", "--beta", "5"});
  EXPECT_EQ(metrics.code, 0) << metrics.err;
  EXPECT_NE(metrics.out.find("negativity_mean"), std::string::npos);
  EXPECT_NE(metrics.out.find("offdiag_mass"), std::string::npos);
  EXPECT_NE(metrics.out.find("magic_M"), std::string::npos);
}

}  // namespace
}  // namespace magic
