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

#include <cmath>

#include "doctest.h"
#include "test_support.hpp"
#include "unqc/analysis.hpp"
#include "unqc/sim.hpp"

using namespace unqc;

TEST_CASE("alloc extends at the least significant end") {
  GateLibrary lib;
  Statevector sv;
  sv.alloc_wire(7, true, 20);
  sv.alloc_wire(3, false, 20);
  CHECK(sv.num_wires() == 2);
  CHECK(sv.wires() == std::vector<int>{7, 3});
  // |1> on wire 7 (MSB), |0> on wire 3: basis index 2.
  CHECK(std::abs(sv.amplitudes()[2] - Complex(1)) < 1e-15);
  CHECK(sv.prob_one(7) == 1.0);
  CHECK(sv.prob_one(3) == 0.0);
  CHECK(sv.has_wire(7));
  CHECK_FALSE(sv.has_wire(0));
  CHECK_THROWS_AS(sv.prob_one(0), SimulationError);
  CHECK_THROWS_AS(sv.alloc_wire(7, false, 20), SimulationError);
  CHECK_THROWS_AS(sv.alloc_wire(1, false, 2), SimulationError);  // cap
}

TEST_CASE("bell pair probabilities and deallocation") {
  GateLibrary lib;
  Statevector sv;
  sv.alloc_wire(0, false, 20);
  sv.alloc_wire(1, false, 20);
  sv.apply(*lib.get("h"), {0});
  sv.apply(*lib.get("cx"), {0, 1});
  CHECK(std::abs(sv.prob_one(0) - 0.5) < 1e-12);
  CHECK(std::abs(sv.prob_one(1) - 0.5) < 1e-12);
  CHECK(std::abs(sv.norm() - 1.0) < 1e-12);

  // Checked deallocation refuses an entangled wire...
  CHECK_THROWS_AS(sv.dealloc_wire(1, 1e-9, false), ProjectionError);
  // ...unchecked postselects |0> and renormalizes.
  const double p1 = sv.dealloc_wire(1, 1e-9, true);
  CHECK(std::abs(p1 - 0.5) < 1e-12);
  CHECK(sv.num_wires() == 1);
  CHECK(std::abs(sv.norm() - 1.0) < 1e-12);
  CHECK(sv.prob_one(0) < 1e-12);  // the surviving branch is |00>
}

TEST_CASE("postselection with no surviving weight fails loudly") {
  GateLibrary lib;
  Statevector sv;
  sv.alloc_wire(0, true, 20);
  CHECK_THROWS_AS(sv.dealloc_wire(0, 1e-9, true), ProjectionError);
}

TEST_CASE("gate application follows the MSB-first operand order") {
  GateLibrary lib;
  Statevector sv;
  sv.alloc_wire(0, true, 20);
  sv.alloc_wire(1, false, 20);
  sv.apply(*lib.get("cx"), {0, 1});  // control on wire 0
  CHECK(sv.prob_one(1) == 1.0);
  sv.apply(*lib.get("cx"), {1, 0});  // control on wire 1
  CHECK(sv.prob_one(0) == 0.0);
  CHECK(std::abs(sv.amplitudes()[1] - Complex(1)) < 1e-15);  // |01>
  CHECK_THROWS_AS(sv.apply(*lib.get("cx"), {0, 5}), SimulationError);
}

TEST_CASE("composite gates with internal temporaries materialize scratch") {
  GateLibrary lib;
  const GatePtr g = GateDef::composite(
      "cx_via_temp", 2,
      {Instruction::alloc(2), Instruction::apply(lib.get("cx"), {0, 2}),
       Instruction::apply(lib.get("cx"), {2, 1}),
       Instruction::apply(lib.get("cx"), {0, 2}), Instruction::dealloc(2)});
  Statevector sv;
  sv.alloc_wire(0, true, 20);
  sv.alloc_wire(1, false, 20);
  sv.apply(*g, {0, 1});
  CHECK(sv.num_wires() == 2);  // the scratch wire is gone again
  CHECK(sv.prob_one(1) == 1.0);
}

TEST_CASE("a temp left entangled poisons the gate application") {
  GateLibrary lib;
  const GatePtr g = GateDef::composite(
      "leaky", 1,
      {Instruction::alloc(1), Instruction::apply(lib.get("cx"), {0, 1}),
       Instruction::dealloc(1)});
  Statevector sv;
  sv.alloc_wire(0, false, 20);
  sv.apply(*lib.get("h"), {0});
  CHECK_THROWS_AS(sv.apply(*g, {0}), SimulationError);
}

TEST_CASE("run consumes initial bits at the first allocation only") {
  GateLibrary lib;
  Circuit c;
  c.append(Instruction::alloc(0));
  c.append(Instruction::apply(lib.get("x"), {0}));
  c.append(Instruction::dealloc(0));
  c.append(Instruction::alloc(0));  // reuse: must come up |0>

  RunOptions opts;
  opts.initial_bits = {1};
  const RunResult r = run(c, opts);
  CHECK(r.state.num_wires() == 1);
  CHECK(r.state.prob_one(0) == 0.0);
  REQUIRE(r.projections.size() == 1);
  CHECK(r.projections[0].qubit == 0);
  CHECK(r.projections[0].instruction == 2);
  CHECK(r.projections[0].prob_one == 0.0);  // x mapped the injected |1> to |0>
}

TEST_CASE("run honors checked and unchecked deallocations") {
  GateLibrary lib;
  Circuit c;
  c.append(Instruction::alloc(0));
  c.append(Instruction::apply(lib.get("h"), {0}));
  c.append(Instruction::dealloc(0, true));

  CHECK_NOTHROW(run(c));
  RunOptions strict;
  strict.check_all_deallocs = true;
  CHECK_THROWS_AS(run(c, strict), ProjectionError);

  Circuit bad;
  bad.append(Instruction::alloc(0));
  bad.append(Instruction::apply(lib.get("h"), {0}));
  bad.append(Instruction::dealloc(0));
  CHECK_THROWS_AS(run(bad), ProjectionError);
}

TEST_CASE("run rejects circuits beyond the qubit cap") {
  Circuit c;
  for (int q = 0; q < 4; ++q) c.append(Instruction::alloc(q));
  RunOptions opts;
  opts.qubit_cap = 3;
  CHECK_THROWS_AS(run(c, opts), SimulationError);
}

TEST_CASE("pre-wired circuits start with all wires live") {
  GateLibrary lib;
  Circuit c(2);
  c.append(Instruction::apply(lib.get("cx"), {0, 1}));
  RunOptions opts;
  opts.initial_bits = {1, 0};
  const RunResult r = run(c, opts);
  CHECK(r.state.prob_one(1) == 1.0);
}

TEST_CASE("unitary_of reproduces builtin matrices") {
  GateLibrary lib;
  for (const char* name : {"h", "cx", "cz", "mcx_2", "pt2cx"}) {
    const GatePtr g = lib.get(name);
    Circuit c(g->arity());
    std::vector<int> ops(g->arity());
    for (int i = 0; i < g->arity(); ++i) ops[i] = i;
    c.append(Instruction::apply(g, ops));
    const ComplexMatrix u = unitary_of(c);
    const auto ref = synthesize_unitary(*g);
    CHECK(max_abs_diff(u, *ref) < 1e-12);
  }

  Circuit session;
  session.append(Instruction::alloc(0));
  CHECK_THROWS_AS(unitary_of(session), SimulationError);
}

TEST_CASE("histogram groups, labels, ordering, pruning") {
  GateLibrary lib;
  Statevector sv;
  sv.alloc_wire(0, false, 20);
  sv.alloc_wire(1, false, 20);
  sv.alloc_wire(2, true, 20);
  sv.apply(*lib.get("h"), {0});
  sv.apply(*lib.get("cx"), {0, 1});

  const Histogram h = histogram(sv, {{"pair", {0, 1}}, {"flag", {2}}});
  REQUIRE(h.size() == 2);
  CHECK(h[0].first == "pair=00 flag=1");
  CHECK(std::abs(h[0].second - 0.5) < 1e-12);
  CHECK(h[1].first == "pair=11 flag=1");
  CHECK(std::abs(h[1].second - 0.5) < 1e-12);

  // Group qubit order controls the printed bit order.
  const Histogram rev = histogram(sv, {{"pair", {1, 0}}, {"flag", {2}}});
  CHECK(rev[0].first == "pair=00 flag=1");

  CHECK_THROWS_AS(histogram(sv, {{"ghost", {9}}}), SimulationError);
}

TEST_CASE("histogram marginalizes over unlisted wires") {
  GateLibrary lib;
  Statevector sv;
  sv.alloc_wire(0, false, 20);
  sv.alloc_wire(1, false, 20);
  sv.apply(*lib.get("h"), {0});
  sv.apply(*lib.get("cx"), {0, 1});
  const Histogram h = histogram(sv, {{"a", {0}}});
  REQUIRE(h.size() == 2);
  CHECK(h[0].first == "a=0");
  CHECK(std::abs(h[0].second - 0.5) < 1e-12);
  CHECK(std::abs(h[1].second - 0.5) < 1e-12);
}

TEST_CASE("simulation agrees with dense synthesis on random composites") {
  auto gen = unqc::testing::rng(41);
  GateLibrary lib;
  const char* names[] = {"x", "h", "z", "cx", "cz", "mcx_2", "pt2cx"};
  for (int trial = 0; trial < 10; ++trial) {
    const int nq = 3;
    Circuit c(nq);
    std::vector<Instruction> def;
    for (int k = 0; k < 6; ++k) {
      const GatePtr g = lib.get(names[gen() % 7]);
      std::vector<int> ops;
      while (static_cast<int>(ops.size()) < g->arity()) {
        const int q = static_cast<int>(gen() % nq);
        bool used = false;
        for (int o : ops) used = used || o == q;
        if (!used) ops.push_back(q);
      }
      c.append(Instruction::apply(g, ops));
      def.push_back(Instruction::apply(g, ops));
    }
    const GatePtr whole = GateDef::composite("trial_gate", nq, def);
    const ComplexMatrix via_sim = unitary_of(c);
    const auto via_embed = synthesize_unitary(*whole);
    CHECK(max_abs_diff(via_sim, *via_embed) < 1e-9);
  }
}
