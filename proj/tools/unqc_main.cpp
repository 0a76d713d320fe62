// Copyright 2026 The unqc developers
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

// unqc — compile quantum programs with automatic ancilla uncomputation,
// simulate them on the embedded statevector backend, and query gate
// properties (qfree-ness, per-operand permeability).
//
// Exit codes: 0 success, 1 parse error, 2 uncomputation error, 3 anything
// else. Every failure is a single stderr line `ERROR:<kind>: <message>`.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "unqc/analysis.hpp"
#include "unqc/errors.hpp"
#include "unqc/script.hpp"
#include "unqc/serialize.hpp"
#include "unqc/sim.hpp"
#include "unqc/uncompute.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw unqc::Error("IO", "cannot read file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw unqc::Error("IO", "cannot write file: " + path);
  out << text;
}

// UNQC_TOLERANCE overrides the default predicate / deallocation tolerance.
double tolerance_from_env(double fallback) {
  const char* env = std::getenv("UNQC_TOLERANCE");
  if (!env || !*env) return fallback;
  char* end = nullptr;
  const double t = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(t > 0))
    throw unqc::Error("Validation",
                      "UNQC_TOLERANCE must be a positive number");
  return t;
}

unqc::Session make_session(bool pt_substitution) {
  unqc::SessionConfig sc;
  sc.analysis.tolerance = tolerance_from_env(sc.analysis.tolerance);
  sc.pt_substitution = pt_substitution;
  return unqc::Session(sc);
}

int cmd_compile(const std::string& path, const std::string& strategy,
                bool no_pt, const std::string& dot_path, bool stats_only) {
  const auto program = unqc::parse_script(read_file(path));
  unqc::Session s = make_session(!no_pt);
  unqc::execute(program, s,
                strategy == "revert" ? unqc::Strategy::Revert
                                     : unqc::Strategy::Inline);
  if (!dot_path.empty()) write_file(dot_path, s.dag_dot());
  std::cout << (stats_only ? unqc::stats_to_json(s.stats())
                           : unqc::circuit_to_json(s.circuit()))
            << "\n";
  return 0;
}

int cmd_simulate(const std::string& path, const std::string& input,
                 bool check_disentangled) {
  const auto program = unqc::parse_script(read_file(path));
  unqc::Session s = make_session(true);
  unqc::execute(program, s, unqc::Strategy::Inline);

  unqc::RunOptions ro;
  ro.dealloc_tol = tolerance_from_env(ro.dealloc_tol);
  ro.check_all_deallocs = check_disentangled;
  for (char c : input) {
    if (c != '0' && c != '1')
      throw unqc::ValidationError("--input must be a bitstring of 0s and 1s");
    ro.initial_bits.push_back(c == '1');
  }

  const unqc::RunResult rr = unqc::run(s.circuit(), ro);

  std::vector<unqc::VariableBits> groups;
  for (const auto& name : s.surviving_variables())
    groups.push_back({name, s.variable(name).qubits});
  const unqc::Histogram h =
      groups.empty() ? unqc::Histogram{} : unqc::histogram(rr.state, groups);
  std::cout << unqc::histogram_to_json(h) << "\n";
  return 0;
}

int cmd_check(const std::vector<std::string>& gates) {
  auto lib = unqc::default_library();
  unqc::AnalysisConfig cfg;
  cfg.tolerance = tolerance_from_env(cfg.tolerance);

  for (const auto& name : gates) {
    const auto g = lib->resolve(name);
    if (!g) throw unqc::ValidationError("unknown gate: " + name);
    const auto qfree = unqc::qfree_verdict(**g, cfg);
    if (!qfree) {
      std::cout << name << ": unknown (width cap)\n";
      continue;
    }
    const auto profile = unqc::permeability_profile(**g, cfg);
    std::cout << name << ": qfree=" << (*qfree ? "true" : "false")
              << " permeable=[";
    for (std::size_t i = 0; i < profile.size(); ++i) {
      if (i) std::cout << ',';
      std::cout << 'q' << i << ':';
      switch (profile[i]) {
        case unqc::Permeability::Permeable: std::cout << "true"; break;
        case unqc::Permeability::NotPermeable: std::cout << "false"; break;
        case unqc::Permeability::Unknown: std::cout << "unknown"; break;
      }
    }
    std::cout << "]\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "unqc — quantum circuit compiler with automatic ancilla "
      "uncomputation"};
  app.require_subcommand(1);

  std::string program_path;
  std::string strategy = "inline";
  bool no_pt = false;
  std::string dot_path;
  bool stats_only = false;

  CLI::App* compile =
      app.add_subcommand("compile", "Compile a program to a circuit (JSON)");
  compile->add_option("program", program_path, "program file")->required();
  compile->add_option("--strategy", strategy,
                      "uncomputation strategy for statements without an "
                      "explicit modifier")
      ->check(CLI::IsMember({"inline", "revert"}));
  compile->add_flag("--no-pt", no_pt,
                    "disable phase-tolerant pair substitution");
  compile->add_option("--dot", dot_path,
                      "write the dependency DAG (Graphviz) to this file");
  compile->add_flag("--stats-only", stats_only,
                    "print compile statistics instead of the circuit");

  std::string input_bits;
  bool check_disentangled = false;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Compile and run a program; print the histogram (JSON)");
  simulate->add_option("program", program_path, "program file")->required();
  simulate->add_option("--input", input_bits,
                       "initial bit per qubit id, consumed at its first "
                       "allocation");
  simulate->add_flag("--check-disentangled", check_disentangled,
                     "verify every deallocated qubit is disentangled");

  std::vector<std::string> gate_names;
  CLI::App* check = app.add_subcommand(
      "check", "Print qfree-ness and per-operand permeability of gates");
  check->add_option("gates", gate_names, "gate names")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 3;
  }

  try {
    if (*compile)
      return cmd_compile(program_path, strategy, no_pt, dot_path, stats_only);
    if (*simulate)
      return cmd_simulate(program_path, input_bits, check_disentangled);
    return cmd_check(gate_names);
  } catch (const unqc::ParseError& e) {
    std::cerr << "ERROR:Parse: line " << e.line() << ": " << e.what() << "\n";
    return 1;
  } catch (const unqc::UncomputeError& e) {
    std::cerr << "ERROR:" << e.kind() << ": " << e.what() << "\n";
    return 2;
  } catch (const unqc::Error& e) {
    std::cerr << "ERROR:" << e.kind() << ": " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "ERROR:Internal: " << e.what() << "\n";
    return 3;
  }
}
