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
#include "unqc/ir.hpp"
#include "unqc/linalg.hpp"

using namespace unqc;
using namespace unqc::testing;

namespace {

// Second-opinion construction of the relative-phase double-controlled X:
// the RY/CNOT listing multiplied out by hand with matrices built right
// here, independent of GateDef/synthesize_unitary.
ComplexMatrix reference_pt2cx() {
  const auto ry = [](double theta) {
    const double c = std::cos(theta / 2), s = std::sin(theta / 2);
    return ComplexMatrix::from_rows({{c, -s}, {s, c}});
  };
  const auto cx = ComplexMatrix::from_rows(
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  const double pi4 = std::acos(-1.0) / 4;

  ComplexMatrix u = ComplexMatrix::identity(8);
  const auto step = [&](const ComplexMatrix& g, const std::vector<int>& w) {
    u = matmul(embed(g, w, 3), u);
  };
  step(ry(pi4), {2});
  step(cx, {1, 2});
  step(ry(pi4), {2});
  step(cx, {0, 2});
  step(ry(-pi4), {2});
  step(cx, {1, 2});
  step(ry(-pi4), {2});
  return u;
}

}  // namespace

TEST_CASE("matrix_is_qfree on hand-built matrices") {
  const auto x = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
  CHECK(matrix_is_qfree(x, 1e-9));
  const double s = 1.0 / std::sqrt(2.0);
  const auto h = ComplexMatrix::from_rows({{s, s}, {s, -s}});
  CHECK_FALSE(matrix_is_qfree(h, 1e-9));
  // Diagonal phases keep a matrix qfree: one entry per column.
  const auto t = ComplexMatrix::from_rows(
      {{1, 0}, {0, std::exp(Complex(0, 0.3))}});
  CHECK(matrix_is_qfree(t, 1e-9));
}

TEST_CASE("matrix_is_permeable on hand-built matrices") {
  const auto cx = ComplexMatrix::from_rows(
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  CHECK(matrix_is_permeable(cx, 0, 1e-9));
  CHECK_FALSE(matrix_is_permeable(cx, 1, 1e-9));
  const auto x = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
  CHECK_FALSE(matrix_is_permeable(x, 0, 1e-9));
  ComplexMatrix cz = ComplexMatrix::identity(4);
  cz(3, 3) = -1;
  CHECK(matrix_is_permeable(cz, 0, 1e-9));
  CHECK(matrix_is_permeable(cz, 1, 1e-9));
}

TEST_CASE("matrix predicates match the Z-commutator oracle on randoms") {
  auto gen = rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const int nq = 1 + static_cast<int>(gen() % 3);
    const bool constructed = trial % 2 == 0;
    const int special = static_cast<int>(gen() % nq);
    const ComplexMatrix u =
        constructed && nq > 1 ? random_block_diagonal(nq, special, gen)
                              : random_unitary(std::size_t{1} << nq, gen);
    for (int q = 0; q < nq; ++q) {
      const bool oracle = z_commutator_max(u, nq, q) < 1e-9;
      CHECK(matrix_is_permeable(u, q, 1e-9) == oracle);
    }
  }
}

TEST_CASE("library gate verdicts") {
  GateLibrary lib;
  AnalysisConfig cfg;

  CHECK(is_qfree(*lib.get("x"), cfg));
  CHECK(is_qfree(*lib.get("cx"), cfg));
  CHECK(is_qfree(*lib.get("z"), cfg));
  CHECK_FALSE(is_qfree(*lib.get("h"), cfg));
  CHECK_FALSE(is_qfree(*lib.ry(0.4), cfg));

  CHECK(is_permeable(*lib.get("cx"), 0, cfg));
  CHECK_FALSE(is_permeable(*lib.get("cx"), 1, cfg));
  CHECK(is_permeable(*lib.get("cz"), 0, cfg));
  CHECK(is_permeable(*lib.get("cz"), 1, cfg));
  CHECK(is_permeable(*lib.get("z"), 0, cfg));
  CHECK_FALSE(is_permeable(*lib.get("x"), 0, cfg));
  CHECK_FALSE(is_permeable(*lib.get("h"), 0, cfg));

  const GatePtr m3 = lib.mcx(3);
  for (int q = 0; q < 3; ++q) CHECK(is_permeable(*m3, q, cfg));
  CHECK_FALSE(is_permeable(*m3, 3, cfg));
}

TEST_CASE("pt2cx analysis verdicts come from its combined unitary") {
  GateLibrary lib;
  AnalysisConfig cfg;
  const GatePtr pt = lib.get("pt2cx");

  // No axioms: these verdicts require multiplying out the definition.
  CHECK_FALSE(pt->qfree_axiom().has_value());
  CHECK(is_qfree(*pt, cfg));
  CHECK(is_permeable(*pt, 0, cfg));
  CHECK(is_permeable(*pt, 1, cfg));
  CHECK_FALSE(is_permeable(*pt, 2, cfg));

  const auto u = synthesize_unitary(*pt, cfg);
  const ComplexMatrix ref = reference_pt2cx();
  CHECK(max_abs_diff(*u, ref) < 1e-12);

  // Column support matches the doubly-controlled X; every entry has unit
  // modulus (relative phases allowed, here a -1 on |101>).
  const auto& mcx = lib.get("mcx_2")->builtin_unitary();
  for (std::size_t c = 0; c < 8; ++c)
    for (std::size_t r = 0; r < 8; ++r) {
      if (std::abs(mcx(r, c)) > 0.5)
        CHECK(std::abs(std::abs((*u)(r, c)) - 1.0) < 1e-12);
      else
        CHECK(std::abs((*u)(r, c)) < 1e-12);
    }
  CHECK(std::abs((*u)(5, 5) - Complex(-1)) < 1e-12);
}

TEST_CASE("synthesize_unitary multiplies the definition in order") {
  GateLibrary lib;
  AnalysisConfig cfg;
  const GatePtr g = GateDef::composite(
      "probe_synth", 2,
      {Instruction::apply(lib.get("h"), {0}),
       Instruction::apply(lib.get("cx"), {0, 1})});
  const auto u = synthesize_unitary(*g, cfg);
  const ComplexMatrix expect =
      matmul(lib.get("cx")->builtin_unitary(),
             kron(lib.get("h")->builtin_unitary(), ComplexMatrix::identity(2)));
  CHECK(max_abs_diff(*u, expect) < 1e-12);
}

TEST_CASE("synthesis of a temp-wire definition restricts to the |0> block") {
  GateLibrary lib;
  AnalysisConfig cfg;
  // temp = w0; w1 ^= temp; temp cleared again: acts as CX on the operands.
  const GatePtr g = GateDef::composite(
      "cx_via_temp", 2,
      {Instruction::alloc(2), Instruction::apply(lib.get("cx"), {0, 2}),
       Instruction::apply(lib.get("cx"), {2, 1}),
       Instruction::apply(lib.get("cx"), {0, 2}), Instruction::dealloc(2)});
  const auto u = synthesize_unitary(*g, cfg);
  CHECK(u->dim() == 4);
  CHECK(max_abs_diff(*u, lib.get("cx")->builtin_unitary()) < 1e-12);
  CHECK(is_qfree(*g, cfg));
  CHECK(is_permeable(*g, 0, cfg));
  CHECK_FALSE(is_permeable(*g, 1, cfg));
}

TEST_CASE("synthesis rejects definitions that leave a temp entangled") {
  GateLibrary lib;
  AnalysisConfig cfg;
  // temp = w0 and never cleared: the operand-wire action is not unitary.
  const GatePtr g = GateDef::composite(
      "leaky", 1,
      {Instruction::alloc(1), Instruction::apply(lib.get("cx"), {0, 1}),
       Instruction::dealloc(1)});
  CHECK_THROWS_AS(synthesize_unitary(*g, cfg), ValidationError);
}

TEST_CASE("width cap blocks synthesis but axioms bypass it") {
  GateLibrary lib;
  AnalysisConfig narrow;
  narrow.width_cap = 2;

  // mcx_2 spans 3 wires but carries axioms.
  CHECK(is_qfree(*lib.get("mcx_2"), narrow));
  CHECK(is_permeable(*lib.get("mcx_2"), 0, narrow));
  CHECK_FALSE(is_permeable(*lib.get("mcx_2"), 2, narrow));

  // pt2cx spans 3 wires and has no axioms: the verdict is unavailable.
  CHECK_THROWS_AS(is_qfree(*lib.get("pt2cx"), narrow), WidthCapError);
  CHECK_THROWS_AS(is_permeable(*lib.get("pt2cx"), 0, narrow), WidthCapError);
  CHECK_FALSE(qfree_verdict(*lib.get("pt2cx"), narrow).has_value());
  const auto profile = permeability_profile(*lib.get("pt2cx"), narrow);
  REQUIRE(profile.size() == 3);
  for (const auto& p : profile) CHECK(p == Permeability::Unknown);

  // The default cap synthesizes it fine.
  CHECK(qfree_verdict(*lib.get("pt2cx"), AnalysisConfig{}).value());
}

TEST_CASE("block decomposition round-trips and rejects non-permeable input") {
  auto gen = rng(29);
  ComplexMatrix cz = ComplexMatrix::identity(4);
  cz(3, 3) = -1;
  const auto blocks = block_decompose(cz, 1, 1e-9);
  REQUIRE(blocks.size() == 2);
  CHECK(max_abs_diff(blocks[0], ComplexMatrix::identity(2)) == 0.0);
  CHECK(blocks[1](1, 1) == Complex(-1));
  CHECK(max_abs_diff(block_compose(blocks), cz) == 0.0);

  const ComplexMatrix u = random_leading_permeable(3, 2, gen);
  CHECK(max_abs_diff(block_compose(block_decompose(u, 2, 1e-9)), u) < 1e-12);

  const auto x = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
  CHECK_THROWS_AS(block_decompose(kron(x, ComplexMatrix::identity(2)), 1, 1e-9),
                  NotPermeableError);
}

TEST_CASE("commutation for overlapping permeable actions") {
  auto gen = rng(31);
  // Diagonal-phase u on 2 qubits (permeable everywhere) against a
  // controlled-X reading the shared qubit: they commute.
  ComplexMatrix cz = ComplexMatrix::identity(4);
  cz(3, 3) = -1;
  const auto cx = ComplexMatrix::from_rows(
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  CHECK(check_theorem1(cz, cx, 1, 1e-9));

  for (int trial = 0; trial < 10; ++trial) {
    const int n = 2 + static_cast<int>(gen() % 2);
    const int m = 2 + static_cast<int>(gen() % 2);
    const int p = 1 + static_cast<int>(gen() % 2);
    const ComplexMatrix u = random_trailing_permeable(n, p, gen);
    const ComplexMatrix v = random_leading_permeable(m, p, gen);
    CHECK(check_theorem1(u, v, p, 1e-9));
  }

  // Precondition violations are rejected before any commutator is formed.
  const auto x = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
  CHECK_THROWS_AS(check_theorem1(x, cx, 1, 1e-9), NotPermeableError);
  CHECK_THROWS_AS(check_theorem1(cz, x, 1, 1e-9), NotPermeableError);
  CHECK_THROWS_AS(check_theorem1(cz, cx, 3, 1e-9), DimensionError);
}

TEST_CASE("permeable wires can be relabeled to the front for decomposition") {
  auto gen = rng(37);
  const int nq = 3;
  for (int q = 0; q < nq; ++q) {
    const ComplexMatrix u = random_block_diagonal(nq, q, gen);
    const ComplexMatrix fronted = move_qubit_front(u, nq, q);
    CHECK(matrix_is_permeable(fronted, 0, 1e-9));
    const auto blocks = block_decompose(fronted, 1, 1e-9);
    CHECK(max_abs_diff(block_compose(blocks), fronted) < 1e-12);
  }
}

TEST_CASE("verdicts are cached on the definition") {
  GateLibrary lib;
  AnalysisConfig cfg;
  const GatePtr pt = lib.get("pt2cx");
  CHECK(is_qfree(*pt, cfg) == is_qfree(*pt, cfg));
  CHECK(pt->cached_qfree().has_value());
  CHECK(pt->cached_unitary() != nullptr);
}
