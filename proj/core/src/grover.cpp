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

#include "unqc/grover.hpp"

#include <numeric>
#include <set>

#include "unqc/errors.hpp"

namespace unqc {

namespace {

void validate(const GroverConfig& cfg) {
  if (cfg.num_qubits < 1)
    throw ValidationError("the search register needs at least one qubit");
  if (cfg.marked.empty())
    throw ValidationError("at least one marked bitstring is required");
  std::set<std::string> seen;
  for (const auto& m : cfg.marked) {
    if (static_cast<int>(m.size()) != cfg.num_qubits)
      throw ValidationError("marked bitstring '" + m +
                            "' does not match the register width");
    for (char c : m)
      if (c != '0' && c != '1')
        throw ValidationError("marked bitstring '" + m + "' is not binary");
    if (!seen.insert(m).second)
      throw ValidationError("marked bitstring '" + m + "' repeats");
  }
  if (cfg.iterations < 0)
    throw ValidationError("iterations must be non-negative");
}

// Oracle over n register wires plus one tag wire: flips the tag exactly on
// the marked basis states. Registering it as a single wrapped gate keeps
// the tag computation atomic for the uncomputation pass; with several
// marked states the unwrapped X-conjugation windows would overlap and leave
// no valid position for the inverses.
GatePtr make_oracle(Session& s, const GroverConfig& cfg) {
  const int n = cfg.num_qubits;
  GateLibrary& lib = s.library();
  const GatePtr x = lib.get("x");
  const GatePtr hit = lib.mcx(n);

  Circuit def(n + 1);
  std::vector<int> all(n + 1);
  std::iota(all.begin(), all.end(), 0);
  for (const auto& m : cfg.marked) {
    for (int i = 0; i < n; ++i)
      if (m[i] == '0') def.append(Instruction::apply(x, {i}));
    def.append(Instruction::apply(hit, all));
    for (int i = 0; i < n; ++i)
      if (m[i] == '0') def.append(Instruction::apply(x, {i}));
  }
  return s.wrap(def, "oracle");
}

}  // namespace

GroverResult grover_demo(const GroverConfig& cfg) {
  validate(cfg);
  const int n = cfg.num_qubits;

  SessionConfig sc;
  sc.sim_qubit_cap = cfg.sim_qubit_cap;
  Session s(sc);
  const GatePtr oracle = make_oracle(s, cfg);

  const std::vector<int> reg = s.alloc("q", n).qubits;
  for (int w : reg) s.apply("h", {w});

  for (int k = 0; k < cfg.iterations; ++k) {
    if (cfg.uncompute_tag) s.begin_auto_scope();
    const QuantumVariable& tag = s.alloc("tag" + std::to_string(k), 1);
    std::vector<int> ops = reg;
    ops.push_back(tag[0]);
    s.apply(oracle, ops);
    s.apply("z", {tag[0]});
    if (cfg.uncompute_tag) s.end_auto_scope({}, cfg.strategy);

    // Diffusion about the mean.
    for (int w : reg) s.apply("h", {w});
    for (int w : reg) s.apply("x", {w});
    if (n == 1)
      s.apply("z", {reg[0]});
    else
      s.apply(s.library().mcz(n - 1), reg);
    for (int w : reg) s.apply("x", {w});
    for (int w : reg) s.apply("h", {w});
  }

  RunOptions ro;
  ro.qubit_cap = cfg.sim_qubit_cap;
  const RunResult rr = run(s.circuit(), ro);

  GroverResult out;
  out.circuit = s.circuit();
  out.histogram = histogram(rr.state, {{"q", reg}});
  for (const auto& [label, p] : out.histogram)
    for (const auto& m : cfg.marked)
      if (label == "q=" + m) out.marked_probability += p;
  out.physical_qubits = s.num_physical_qubits();
  out.stats = s.stats();
  return out;
}

}  // namespace unqc
