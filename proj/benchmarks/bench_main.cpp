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

#include <benchmark/benchmark.h>

#include "unqc/analysis.hpp"
#include "unqc/dag.hpp"
#include "unqc/sim.hpp"
#include "unqc/uncompute.hpp"

namespace {

using namespace unqc;

// Statevector update cost for a two-qubit gate at growing register widths.
void BM_StatevectorCx(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GateLibrary lib;
  Statevector sv;
  for (int q = 0; q < n; ++q) sv.alloc_wire(q, false, n);
  sv.apply(*lib.get("h"), {0});
  const GatePtr cx = lib.get("cx");
  for (auto _ : state) {
    sv.apply(*cx, {0, n - 1});
    benchmark::DoNotOptimize(sv.amplitudes().data());
  }
  state.SetComplexityN(sv.amplitudes().size());
}
BENCHMARK(BM_StatevectorCx)->DenseRange(4, 16, 4)->Complexity();

// Permeability analysis of an uncached k-control gate (synthesis included).
void BM_PermeabilityProfile(benchmark::State& state) {
  const int controls = static_cast<int>(state.range(0));
  for (auto _ : state) {
    state.PauseTiming();
    GateLibrary lib;  // fresh library: no memoized verdicts
    AnalysisConfig cfg;
    cfg.width_cap = controls + 1;
    state.ResumeTiming();
    // Strip the shortcut axioms by synthesizing through a composite shell.
    const GatePtr inner = lib.mcx(controls);
    std::vector<int> wires(static_cast<std::size_t>(controls) + 1);
    for (int i = 0; i <= controls; ++i) wires[static_cast<std::size_t>(i)] = i;
    const GatePtr shell = GateDef::composite(
        "shell", controls + 1, {Instruction::apply(inner, wires)});
    benchmark::DoNotOptimize(permeability_profile(*shell, cfg));
  }
}
BENCHMARK(BM_PermeabilityProfile)->DenseRange(2, 6, 1);

// One full compile: an AND-chain of depth `n` computed, used, and
// uncomputed ancilla by ancilla (inline strategy, pair substitution on).
void BM_UncomputeChain(benchmark::State& state) {
  const int levels = static_cast<int>(state.range(0));
  for (auto _ : state) {
    Session s;
    s.alloc("in", 2);
    s.apply("cx", {0, 1});
    int prev = 1;
    std::vector<std::string> temps;
    for (int k = 0; k < levels; ++k) {
      const std::string name = "t" + std::to_string(k);
      const QuantumVariable& t = s.alloc(name, 1);
      s.apply("cx", {prev, t[0]});
      prev = t[0];
      temps.push_back(name);
    }
    s.alloc("out", 1);
    s.apply("cx", {prev, s.variable("out")[0]});
    for (auto it = temps.rbegin(); it != temps.rend(); ++it) s.uncompute(*it);
    benchmark::DoNotOptimize(s.circuit().size());
  }
}
BENCHMARK(BM_UncomputeChain)->DenseRange(2, 10, 2);

// DAG construction and linearization on a ladder circuit.
void BM_DagRoundTrip(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  GateLibrary lib;
  Circuit c(n);
  const GatePtr cx = lib.get("cx");
  const GatePtr z = lib.get("z");
  for (int q = 0; q + 1 < n; ++q) {
    c.append(Instruction::apply(cx, {q, q + 1}));
    c.append(Instruction::apply(z, {q}));
  }
  for (auto _ : state) {
    const UncomputeDag dag = UncomputeDag::build(c);
    benchmark::DoNotOptimize(dag.linearize().size());
  }
}
BENCHMARK(BM_DagRoundTrip)->DenseRange(4, 10, 2);

}  // namespace

BENCHMARK_MAIN();
