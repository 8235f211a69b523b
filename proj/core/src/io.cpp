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

#include "magic/io.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include <unistd.h>

#include "json.hpp"
#include "magic/error.hpp"

namespace magic {

namespace {

using nlohmann::json;

[[noreturn]] void line_error(std::size_t line, const std::string& msg) {
  throw ParseError("line " + std::to_string(line) + ": " + msg);
}

double parse_coefficient(std::string_view tok, std::size_t line) {
  double v = 0.0;
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  if (!tok.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc() || ptr != last) line_error(line, "invalid coefficient '" + std::string(tok) + "'");
  if (!std::isfinite(v)) line_error(line, "coefficient must be finite");
  return v;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json gate_json(const CliffordGate& g) { return json{{"type", "pauli_rot"}, {"sites", {g.first, g.second}}, {"pauli", g.pauli()}}; }

CliffordGate gate_from_json(const json& j) {
  const auto sites = j.at("sites").get<std::vector<std::size_t>>();
  if (sites.size() != 2) throw ParseError("pauli_rot gate needs exactly two sites");
  return CliffordGate::from_pauli(j.at("pauli").get<std::string>(), sites[0], sites[1]);
}

json circuit_json(const CircuitFile& c) {
  json gates = json::array();
  for (const auto& g : c.circuit.gates) {
    if (const auto* cg = std::get_if<CliffordGate>(&g)) {
      gates.push_back(gate_json(*cg));
    } else {
      const auto& rz = std::get<RzGate>(g);
      gates.push_back(json{{"type", "rz"}, {"site", rz.site}, {"theta", rz.theta}});
    }
  }
  json j{{"n", c.circuit.n}, {"layers", c.circuit.layers}, {"gates", std::move(gates)}};
  if (c.ansatz) {
    const auto& a = *c.ansatz;
    json frame = json::array();
    for (const auto& g : a.frame) frame.push_back(gate_json(g));
    std::vector<int> codes(a.codes.begin(), a.codes.end());
    j["ansatz"] = json{{"layers", a.layers}, {"codes", codes}, {"rz_sites", a.rz_sites},
                       {"thetas", a.thetas}, {"frame", std::move(frame)}};
    if (a.rz_layer != LadderCircuit::kRzAtEnd) j["ansatz"]["rz_layer"] = a.rz_layer;
  }
  return j;
}

CircuitFile circuit_from_json(const json& j) {
  CircuitFile out;
  out.circuit.n = j.at("n").get<std::size_t>();
  out.circuit.layers = j.value("layers", std::size_t{0});
  for (const auto& g : j.at("gates")) {
    const auto type = g.at("type").get<std::string>();
    if (type == "pauli_rot") {
      out.circuit.gates.emplace_back(gate_from_json(g));
    } else if (type == "rz") {
      const double theta = g.at("theta").get<double>();
      if (!std::isfinite(theta)) throw ParseError("rz angle must be finite");
      out.circuit.gates.emplace_back(RzGate{g.at("site").get<std::size_t>(), theta});
    } else {
      throw ParseError("unknown gate type '" + type + "'");
    }
  }
  out.circuit.validate();
  if (j.contains("ansatz")) {
    const auto& a = j.at("ansatz");
    LadderCircuit c;
    c.n = out.circuit.n;
    c.layers = a.at("layers").get<std::size_t>();
    for (int code : a.at("codes").get<std::vector<int>>()) {
      if (code < 0 || code > 15) throw ParseError("gate code out of range");
      c.codes.push_back(static_cast<std::uint8_t>(code));
    }
    c.rz_sites = a.at("rz_sites").get<std::vector<std::size_t>>();
    c.thetas = a.at("thetas").get<std::vector<double>>();
    c.rz_layer = a.value("rz_layer", LadderCircuit::kRzAtEnd);
    for (const auto& g : a.at("frame")) c.frame.push_back(gate_from_json(g));
    c.validate();
    if (!(c.to_circuit() == out.circuit)) throw ParseError("ansatz parameters do not match the gate list");
    out.ansatz = std::move(c);
  }
  return out;
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

template <class F>
auto with_json_errors(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed document: ") + e.what());
  }
}

}  // namespace

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "'");
  std::ostringstream os;
  os << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path.string() + "'");
  return os.str();
}

void write_atomic(const std::filesystem::path& path, std::string_view contents, bool force) {
  std::error_code ec;
  if (!force && std::filesystem::exists(path, ec)) {
    throw IoError("'" + path.string() + "' exists; pass --force to overwrite");
  }
  std::filesystem::path tmp = path;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot create '" + tmp.string() + "'");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) {
      std::filesystem::remove(tmp, ec);
      throw IoError("error writing '" + tmp.string() + "'");
    }
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    throw IoError("cannot rename onto '" + path.string() + "'");
  }
}

PauliSum parse_hamiltonian(std::string_view text) {
  std::optional<std::size_t> n;
  std::vector<std::pair<double, std::string>> terms;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string line(text.substr(pos, end - pos));
    pos = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream is(line);
    std::vector<std::string> tok;
    for (std::string t; is >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    if (tok[0] == "qubits") {
      if (n || !terms.empty()) line_error(line_no, "header must precede all terms");
      if (tok.size() != 2) line_error(line_no, "expected 'qubits <n>'");
      std::size_t v = 0;
      const auto [ptr, ec] = std::from_chars(tok[1].data(), tok[1].data() + tok[1].size(), v);
      if (ec != std::errc() || ptr != tok[1].data() + tok[1].size() || v == 0 || v > kMaxQubits) {
        line_error(line_no, "invalid qubit count '" + tok[1] + "'");
      }
      n = v;
      continue;
    }
    if (tok.size() != 2) line_error(line_no, "expected '<coefficient> <pauli-word>'");
    const double c = parse_coefficient(tok[0], line_no);
    const std::string& word = tok[1];
    for (char ch : word) {
      if (ch != 'I' && ch != 'X' && ch != 'Y' && ch != 'Z') {
        line_error(line_no, "invalid Pauli letter '" + std::string(1, ch) + "' in '" + word + "'");
      }
    }
    if (!n) n = word.size();
    if (word.size() != *n) {
      line_error(line_no, "word '" + word + "' has length " + std::to_string(word.size()) + ", expected " +
                              std::to_string(*n));
    }
    if (word.size() > kMaxQubits) line_error(line_no, "too many qubits");
    terms.emplace_back(c, word);
  }
  if (!n) throw ParseError("empty Hamiltonian without a qubit count");
  PauliSum h(*n);
  h.reserve(terms.size());
  for (const auto& [c, w] : terms) h.add(c, PauliString::from_word(w));
  return canonicalize(h);
}

PauliSum load_hamiltonian(const std::filesystem::path& path) {
  try {
    return parse_hamiltonian(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::string format_hamiltonian(const PauliSum& h) {
  std::string out = "qubits " + std::to_string(h.size()) + "\n";
  for (const auto& t : h.terms()) {
    out += format_double(t.op.sign() * t.coeff);
    out += ' ';
    out += t.op.word();
    out += '\n';
  }
  return out;
}

CircuitFile CircuitFile::from_ladder(const LadderCircuit& c) { return CircuitFile{c.to_circuit(), c}; }

std::string format_circuit(const CircuitFile& c) { return circuit_json(c).dump(2) + "\n"; }

CircuitFile parse_circuit(std::string_view text) {
  const json j = parse_json(text);
  return with_json_errors([&] { return circuit_from_json(j); });
}

CircuitFile load_circuit(const std::filesystem::path& path) { return parse_circuit(read_file(path)); }

std::string format_result(const ResultFile& r) {
  json j;
  j["schema_version"] = r.schema_version;
  j["command"] = r.command;
  j["config"] = parse_json(r.config_json);
  j["seed"] = r.seed;
  j["best_cost"] = r.best_cost;
  j["best_circuit"] = r.best_circuit ? circuit_json(*r.best_circuit) : json(nullptr);
  json endpoints = json::array();
  for (const auto& e : r.endpoints) endpoints.push_back(json{{"restart_id", e.restart_id}, {"cost", e.cost}});
  j["endpoints"] = std::move(endpoints);
  if (r.trace) {
    json trace = json::array();
    for (const auto& t : *r.trace) trace.push_back(json{t.iteration, t.coordinate, t.cost});
    j["trace"] = std::move(trace);
  } else {
    j["trace"] = nullptr;
  }
  j["wall_time"] = r.wall_time ? json(*r.wall_time) : json(nullptr);
  j["extra"] = parse_json(r.extra_json);
  return j.dump(2) + "\n";
}

ResultFile parse_result(std::string_view text) {
  const json j = parse_json(text);
  return with_json_errors([&] {
    ResultFile r;
    r.schema_version = j.at("schema_version").get<int>();
    if (r.schema_version != kSchemaVersion) {
      throw ParseError("unsupported schema_version " + std::to_string(r.schema_version));
    }
    r.command = j.at("command").get<std::string>();
    r.config_json = j.at("config").dump();
    r.seed = j.at("seed").get<std::uint64_t>();
    r.best_cost = j.at("best_cost").get<double>();
    if (!j.at("best_circuit").is_null()) r.best_circuit = circuit_from_json(j.at("best_circuit"));
    for (const auto& e : j.at("endpoints")) {
      r.endpoints.push_back({e.at("restart_id").get<std::size_t>(), e.at("cost").get<double>()});
    }
    if (!j.at("trace").is_null()) {
      std::vector<TraceEntry> trace;
      for (const auto& t : j.at("trace")) {
        trace.push_back({t.at(0).get<std::size_t>(), t.at(1).get<long>(), t.at(2).get<double>()});
      }
      r.trace = std::move(trace);
    }
    if (!j.at("wall_time").is_null()) r.wall_time = j.at("wall_time").get<double>();
    r.extra_json = j.value("extra", json::object()).dump();
    return r;
  });
}

ResultFile load_result(const std::filesystem::path& path) { return parse_result(read_file(path)); }

}  // namespace magic
