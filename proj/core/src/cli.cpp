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

#include "magic/cli.hpp"

#include <algorithm>
#include <chrono>
#include <iostream>
#include <limits>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "magic/ansatz_opt.hpp"
#include "magic/dense.hpp"
#include "magic/error.hpp"
#include "magic/heisenberg.hpp"
#include "magic/io.hpp"
#include "magic/metrics.hpp"
#include "magic/pulse.hpp"
#include "magic/thermal.hpp"

namespace magic {

namespace {

using nlohmann::json;

struct OutputOptions {
  std::string out;
  bool force = false;
  bool record_time = false;
};

struct SearchOptions {
  std::string hamiltonian;
  std::size_t layers = 1;
  std::size_t rz = 0;
  std::optional<std::size_t> rz_layer;
  std::size_t restarts = 1000;
  std::size_t iters = 100;
  std::size_t theta_starts = 10;
  std::optional<std::uint64_t> seed;
  std::string warm_start = "on";
  std::string schedule = "random";
  std::string objective = "ground_energy";
  bool traces = false;
  std::size_t threads = 0;
};

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

void add_output(CLI::App* cmd, OutputOptions& o) {
  cmd->add_option("--out", o.out, "Result JSON path (stdout when omitted)");
  cmd->add_flag("--force", o.force, "Overwrite an existing --out file");
  cmd->add_flag("--record-time", o.record_time, "Store wall-clock seconds in the result");
}

void add_search(CLI::App* cmd, SearchOptions& s) {
  cmd->add_option("--hamiltonian", s.hamiltonian, "Hamiltonian text file")->required();
  cmd->add_option("--layers", s.layers, "Brickwork layers L")->check(CLI::PositiveNumber);
  cmd->add_option("--rz", s.rz, "Number of Rz gates k");
  cmd->add_option("--rz-layer", s.rz_layer, "Brickwork layers applied before the Rz layer (default: all)");
  cmd->add_option("--restarts", s.restarts, "Random restarts")->check(CLI::PositiveNumber);
  cmd->add_option("--iters", s.iters, "Greedy iterations per restart")->check(CLI::PositiveNumber);
  cmd->add_option("--theta-starts", s.theta_starts, "Random angle starts per evaluation")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", s.seed, "Master seed");
  cmd->add_option("--warm-start", s.warm_start, "on|off")->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--schedule", s.schedule, "random|round-robin")->check(CLI::IsMember({"random", "round-robin"}));
  cmd->add_option("--objective", s.objective, "ground_energy|offdiag_weight")
      ->check(CLI::IsMember({"ground_energy", "offdiag_weight"}));
  cmd->add_flag("--traces", s.traces, "Include every restart's trace");
  cmd->add_option("--threads", s.threads, "Worker threads (0: MAGIC_LADDER_THREADS or hardware)");
}

OptimizerConfig make_config(const SearchOptions& s, std::uint64_t seed) {
  OptimizerConfig cfg;
  cfg.layers = s.layers;
  cfg.rz_count = s.rz;
  if (s.rz_layer) cfg.rz_layer = *s.rz_layer;
  cfg.n_init = s.restarts;
  cfg.n_iter = s.iters;
  cfg.theta_starts = s.theta_starts;
  cfg.seed = seed;
  cfg.warm_start = s.warm_start == "on";
  cfg.schedule = s.schedule == "random" ? CoordinateSchedule::kRandom : CoordinateSchedule::kRoundRobin;
  cfg.objective.kind = objective_kind_from_string(s.objective);
  cfg.keep_trace = s.traces;
  cfg.threads = s.threads;
  return cfg;
}

json config_echo(const SearchOptions& s, std::uint64_t seed) {
  json echo{{"hamiltonian", s.hamiltonian}, {"layers", s.layers},     {"rz", s.rz},
              {"restarts", s.restarts},       {"iters", s.iters},       {"theta_starts", s.theta_starts},
              {"seed", seed},                 {"warm_start", s.warm_start}, {"schedule", s.schedule},
              {"objective", s.objective}};
  if (s.rz_layer) echo["rz_layer"] = *s.rz_layer;
  return echo;
}

json traces_json(const std::vector<std::vector<TraceEntry>>& traces) {
  json out = json::array();
  for (const auto& t : traces) {
    json one = json::array();
    for (const auto& e : t) one.push_back(json{e.iteration, e.coordinate, e.cost});
    out.push_back(std::move(one));
  }
  return out;
}

ResultFile from_opt(const std::string& command, const OptResult& r, const json& config) {
  ResultFile f;
  f.command = command;
  f.config_json = config.dump();
  f.seed = r.seed_used;
  f.best_cost = r.best_cost;
  f.best_circuit = CircuitFile::from_ladder(r.best_circuit);
  f.endpoints = r.endpoints;
  f.trace = r.trace;
  return f;
}

void emit(const ResultFile& r, const OutputOptions& o, std::ostream& out) {
  const std::string text = format_result(r);
  if (o.out.empty()) {
    out << text;
  } else {
    write_atomic(o.out, text, o.force);
  }
}

PauliSum load_optional(const std::string& path, std::size_t n) {
  if (path.empty()) return PauliSum(n);
  PauliSum p = load_hamiltonian(path);
  if (p.size() != n) throw DimensionError("number operator has " + std::to_string(p.size()) + " qubits, expected " +
                                          std::to_string(n));
  return p;
}

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  for (std::string tok; std::getline(ss, tok, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw UsageError("invalid number '" + tok + "' in list");
    }
  }
  return out;
}

std::vector<std::vector<std::size_t>> parse_partitions(const std::string& s) {
  std::vector<std::vector<std::size_t>> parts;
  std::stringstream ss(s);
  for (std::string group; std::getline(ss, group, ';');) {
    std::vector<std::size_t> sites;
    for (double v : parse_list(group)) {
      if (v < 0 || v != std::floor(v)) throw UsageError("partition sites must be non-negative integers");
      sites.push_back(static_cast<std::size_t>(v));
    }
    parts.push_back(std::move(sites));
  }
  return parts;
}

json schedule_json(const PulseSchedule& s) {
  return json{{"atoms", s.atoms}, {"segments", s.segments}, {"duration", s.duration},
              {"ux", s.ux},       {"uy", s.uy},             {"delta", s.delta}};
}

json histogram_json(const OffdiagHistogram& h) {
  return json{{"edges", h.edges}, {"counts", h.counts}, {"below_range", h.below_range}};
}

}  // namespace

int cli_run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Clifford + kRz Hamiltonian transformation toolkit", "magic_ladder"};
  app.require_subcommand(1);
  OutputOptions output;
  SearchOptions search;

  auto* transform_cmd = app.add_subcommand("transform", "Conjugate a Hamiltonian through a circuit");
  std::string t_ham, t_circ, t_ham_out;
  bool report_offdiag = false;
  transform_cmd->add_option("--hamiltonian", t_ham, "Hamiltonian text file")->required();
  transform_cmd->add_option("--circuit", t_circ, "Circuit JSON file")->required();
  transform_cmd->add_option("--ham-out", t_ham_out, "Also write the transformed Hamiltonian as text");
  transform_cmd->add_flag("--report-offdiag", report_offdiag, "Report the off-diagonal weight");
  add_output(transform_cmd, output);

  auto* ground_cmd = app.add_subcommand("optimize-ground", "Greedy Clifford + kRz ground-state search");
  add_search(ground_cmd, search);
  add_output(ground_cmd, output);

  auto* ladder_cmd = app.add_subcommand("ladder", "Warm-started search for k = 0..k_max");
  std::size_t k_max = 0;
  ladder_cmd->add_option("--k-max", k_max, "Largest Rz count")->required();
  add_search(ladder_cmd, search);
  add_output(ladder_cmd, output);

  auto* thermal_cmd = app.add_subcommand("optimize-thermal", "Closed-form grand free-energy search");
  std::string number_op;
  double beta = 1.0;
  std::optional<double> mu, target_number;
  add_search(thermal_cmd, search);
  thermal_cmd->add_option("--number-op", number_op, "Number operator text file");
  thermal_cmd->add_option("--beta", beta, "Inverse temperature")->required();
  auto* mu_opt = thermal_cmd->add_option("--mu", mu, "Chemical potential");
  thermal_cmd->add_option("--target-number", target_number, "Target mean particle number")->excludes(mu_opt);
  add_output(thermal_cmd, output);

  auto* metrics_cmd = app.add_subcommand("metrics", "Magic, negativity and Gibbs off-diagonal density");
  std::string m_circ, m_ham, m_which = "magic,negativity,offdiag", m_parts;
  std::optional<double> m_beta;
  double m_mu = 0.0;
  metrics_cmd->add_option("--circuit", m_circ, "Circuit JSON file")->required();
  metrics_cmd->add_option("--hamiltonian", m_ham, "Hamiltonian text file");
  metrics_cmd->add_option("--which", m_which, "Comma-separated subset of magic,negativity,offdiag");
  metrics_cmd->add_option("--beta", m_beta, "Inverse temperature for the Gibbs state");
  metrics_cmd->add_option("--mu", m_mu, "Chemical potential");
  metrics_cmd->add_option("--number-op", number_op, "Number operator text file");
  metrics_cmd->add_option("--partitions", m_parts, "Bipartitions such as '0,1;2' (default: each site)");
  add_output(metrics_cmd, output);

  auto* pulse_cmd = app.add_subcommand("pulse-optimize", "Rydberg-chain pulse optimization");
  std::string p_target, p_positions;
  double p_time = 1.0, p_spacing = kDefaultSpacing, p_scale = 2.0 * std::numbers::pi;
  std::size_t p_segments = kDefaultSegments, p_restarts = 20, p_iters = 50, p_threads = 0;
  std::optional<std::uint64_t> p_seed;
  bool p_all_pairs = false;
  pulse_cmd->add_option("--target", p_target, "Target Hamiltonian text file")->required();
  pulse_cmd->add_option("--positions", p_positions, "Comma-separated atom positions in um");
  pulse_cmd->add_option("--spacing", p_spacing, "Uniform spacing in um when --positions is omitted");
  pulse_cmd->add_option("--time", p_time, "Evolution time in us")->required();
  pulse_cmd->add_option("--segments", p_segments, "Piecewise-constant segments")->check(CLI::PositiveNumber);
  pulse_cmd->add_option("--restarts", p_restarts, "Random restarts")->check(CLI::PositiveNumber);
  pulse_cmd->add_option("--iters", p_iters, "Gradient iterations per restart");
  pulse_cmd->add_option("--init-scale", p_scale, "Initial control range in rad/us");
  pulse_cmd->add_option("--seed", p_seed, "Master seed");
  pulse_cmd->add_option("--threads", p_threads, "Worker threads");
  pulse_cmd->add_flag("--all-pairs", p_all_pairs, "Keep every pair interaction, not only nearest neighbours");
  add_output(pulse_cmd, output);

  auto* exact_cmd = app.add_subcommand("exact", "Dense ground energy and free energy");
  std::string e_ham;
  std::optional<double> e_beta;
  double e_mu = 0.0;
  exact_cmd->add_option("--hamiltonian", e_ham, "Hamiltonian text file")->required();
  exact_cmd->add_option("--number-op", number_op, "Number operator text file");
  exact_cmd->add_option("--beta", e_beta, "Inverse temperature");
  exact_cmd->add_option("--mu", e_mu, "Chemical potential");
  add_output(exact_cmd, output);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  auto finish = [&](ResultFile r) {
    if (output.record_time) {
      r.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
    emit(r, output, out);
    return kExitOk;
  };

  try {
    if (transform_cmd->parsed()) {
      const PauliSum h = load_hamiltonian(t_ham);
      const CircuitFile c = load_circuit(t_circ);
      if (c.circuit.n != h.size()) {
        throw DimensionError("circuit has " + std::to_string(c.circuit.n) + " qubits, Hamiltonian has " +
                             std::to_string(h.size()));
      }
      const PauliSum heff = transform(h, c.circuit);
      if (!t_ham_out.empty()) write_atomic(t_ham_out, format_hamiltonian(heff), output.force);
      ResultFile r;
      r.command = "transform";
      r.config_json = json{{"hamiltonian", t_ham}, {"circuit", t_circ}}.dump();
      r.best_cost = zero_state_expectation(heff);
      r.best_circuit = c;
      json extra{{"hamiltonian", format_hamiltonian(heff)}, {"terms", heff.num_terms()},
                 {"zero_state_energy", r.best_cost}};
      if (report_offdiag) {
        extra["offdiag_weight"] = offdiag_weight(heff);
        extra["offdiag_weight_before"] = offdiag_weight(h);
      }
      r.extra_json = extra.dump();
      return finish(r);
    }
    if (ground_cmd->parsed()) {
      const PauliSum h = load_hamiltonian(search.hamiltonian);
      const std::uint64_t seed = resolve_seed(search.seed);
      const OptimizerConfig cfg = make_config(search, seed);
      const OptResult res = optimize(h, cfg);
      ResultFile r = from_opt("optimize-ground", res, config_echo(search, seed));
      json extra{{"restart_id", res.restart_id}};
      if (search.traces) extra["restart_traces"] = traces_json(res.restart_traces);
      r.extra_json = extra.dump();
      return finish(r);
    }
    if (ladder_cmd->parsed()) {
      const PauliSum h = load_hamiltonian(search.hamiltonian);
      const std::uint64_t seed = resolve_seed(search.seed);
      OptimizerConfig cfg = make_config(search, seed);
      const auto levels = ladder_run(h, k_max, cfg);
      json config = config_echo(search, seed);
      config["k_max"] = k_max;
      ResultFile r = from_opt("ladder", levels.back(), config);
      r.seed = seed;
      json lv = json::array();
      for (std::size_t k = 0; k < levels.size(); ++k) {
        json one{{"k", k},
                 {"best_cost", levels[k].best_cost},
                 {"restart_id", levels[k].restart_id},
                 {"seed_used", levels[k].seed_used},
                 {"best_circuit", json::parse(format_circuit(CircuitFile::from_ladder(levels[k].best_circuit)))}};
        lv.push_back(std::move(one));
      }
      r.extra_json = json{{"levels", std::move(lv)}}.dump();
      return finish(r);
    }
    if (thermal_cmd->parsed()) {
      if (!mu && !target_number) throw UsageError("one of --mu and --target-number is required");
      ThermalProblem p;
      p.h = load_hamiltonian(search.hamiltonian);
      p.number_op = load_optional(number_op, p.h.size());
      p.beta = beta;
      p.mu = mu;
      p.target_number = target_number;
      const std::uint64_t seed = resolve_seed(search.seed);
      p.cfg = make_config(search, seed);
      const ThermalResult t = optimize_thermal(p);
      json config = config_echo(search, seed);
      config["objective"] = "free_energy";
      config["beta"] = beta;
      config["number_op"] = number_op;
      if (mu) config["mu"] = *mu;
      if (target_number) config["target_number"] = *target_number;
      ResultFile r;
      r.command = "optimize-thermal";
      r.config_json = config.dump();
      r.seed = seed;
      r.best_cost = t.free_energy;
      r.best_circuit = CircuitFile::from_ladder(t.best_circuit);
      r.trace = t.trace;
      json summary = json::array();
      for (const auto& [x, prob] : t.p_summary) summary.push_back(json{{"state", x}, {"p", prob}});
      r.extra_json = json{{"free_energy", t.free_energy}, {"mu_used", t.mu_used}, {"mean_number", t.mean_number},
                          {"entropy", t.entropy}, {"p_summary", std::move(summary)}}
                         .dump();
      return finish(r);
    }
    if (metrics_cmd->parsed()) {
      const CircuitFile c = load_circuit(m_circ);
      const std::size_t n = c.circuit.n;
      std::vector<std::string> which;
      {
        std::stringstream ss(m_which);
        for (std::string w; std::getline(ss, w, ',');) {
          if (w != "magic" && w != "negativity" && w != "offdiag") throw UsageError("unknown metric '" + w + "'");
          which.push_back(w);
        }
      }
      auto wants = [&](const char* w) { return std::find(which.begin(), which.end(), w) != which.end(); };
      json extra = json::object();
      std::optional<PauliSum> heff, neff;
      if (!m_ham.empty()) {
        const PauliSum h = load_hamiltonian(m_ham);
        if (h.size() != n) throw DimensionError("circuit and Hamiltonian qubit counts differ");
        heff = transform(h, c.circuit);
        const PauliSum nop = load_optional(number_op, n);
        neff = nop.empty() ? nop : transform(nop, c.circuit);
      }
      if (wants("magic")) {
        const CVector psi = simulate_state(c.circuit, zero_state(n));
        extra["circuit_magic_M"] = stabilizer_entropy(psi);
        if (heff) extra["magic_M"] = stabilizer_entropy(CVector(exact_ground(*heff).state));
      }
      if (wants("negativity") || wants("offdiag")) {
        if (!heff || !m_beta) throw UsageError("negativity and offdiag need --hamiltonian and --beta");
        const CMatrix rho = gibbs_density(*heff, *m_beta, m_mu, *neff);
        if (wants("negativity")) {
          const SiteNegativity neg =
              m_parts.empty() ? site_averaged_negativity(rho, n) : partition_negativity(rho, parse_partitions(m_parts));
          extra["negativity_per_site"] = neg.per_site;
          extra["negativity_mean"] = neg.mean;
        }
        if (wants("offdiag")) {
          const OffdiagDensity od = offdiag_density(rho);
          extra["offdiag_hist"] = histogram_json(od.hist);
          extra["offdiag_mass"] = od.mass;
        }
      }
      ResultFile r;
      r.command = "metrics";
      json config{{"circuit", m_circ}, {"hamiltonian", m_ham}, {"which", m_which}, {"mu", m_mu},
                  {"number_op", number_op}, {"partitions", m_parts}};
      if (m_beta) config["beta"] = *m_beta;
      r.config_json = config.dump();
      r.best_circuit = c;
      r.extra_json = extra.dump();
      return finish(r);
    }
    if (pulse_cmd->parsed()) {
      const PauliSum target = load_hamiltonian(p_target);
      AtomChain chain = p_positions.empty() ? AtomChain::uniform(target.size(), p_spacing)
                                            : AtomChain{parse_list(p_positions)};
      chain.nearest_only = !p_all_pairs;
      PulseOptConfig cfg;
      cfg.restarts = p_restarts;
      cfg.max_iters = p_iters;
      cfg.segments = p_segments;
      cfg.seed = resolve_seed(p_seed);
      cfg.init_scale = p_scale;
      cfg.threads = p_threads;
      const PulseOptResult res = optimize_pulses(chain, p_time, target, cfg);
      ResultFile r;
      r.command = "pulse-optimize";
      r.config_json = json{{"target", p_target}, {"positions", chain.positions}, {"time", p_time},
                           {"segments", p_segments}, {"restarts", p_restarts}, {"iters", p_iters},
                           {"init_scale", p_scale}, {"seed", cfg.seed}, {"all_pairs", p_all_pairs}}
                          .dump();
      r.seed = cfg.seed;
      r.best_cost = res.best_objective;
      json restarts = json::array();
      for (const auto& rs : res.restarts) {
        r.endpoints.push_back({rs.restart_id, rs.final_objective});
        restarts.push_back(json{{"restart_id", rs.restart_id},
                                {"initial_objective", rs.initial_objective},
                                {"final_objective", rs.final_objective},
                                {"iterations", rs.trace.size() - 1}});
      }
      r.extra_json = json{{"best_restart", res.best_restart},
                          {"best_schedule", schedule_json(res.best_schedule)},
                          {"restarts", std::move(restarts)}}
                         .dump();
      return finish(r);
    }
    if (exact_cmd->parsed()) {
      const PauliSum h = load_hamiltonian(e_ham);
      const PauliSum nop = load_optional(number_op, h.size());
      const GroundState gs = exact_ground(h);
      ResultFile r;
      r.command = "exact";
      json config{{"hamiltonian", e_ham}, {"number_op", number_op}, {"mu", e_mu}};
      json extra{{"ground_energy", gs.energy}};
      r.best_cost = gs.energy;
      if (e_beta) {
        config["beta"] = *e_beta;
        const GrandFreeEnergy f = exact_grand_free_energy(h, nop, *e_beta, e_mu);
        extra["free_energy"] = f.free_energy;
        extra["mean_number"] = f.mean_number;
      }
      r.config_json = config.dump();
      r.extra_json = extra.dump();
      return finish(r);
    }
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const IoError& e) {
    err << "io error: " << e.what() << "\n";
    return kExitIo;
  } catch (const NumericalError& e) {
    err << "numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  }
  return kExitUsage;
}

int cli_dispatch(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  return cli_run(args, std::cout, std::cerr);
}

}  // namespace magic
