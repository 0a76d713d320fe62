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
#include "unqc/linalg.hpp"

using namespace unqc;
using unqc::testing::random_unitary;
using unqc::testing::rng;

namespace {
const Complex I1(0, 1);
}

TEST_CASE("identity and equality") {
  const ComplexMatrix id = ComplexMatrix::identity(4);
  CHECK(id.dim() == 4);
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c)
      CHECK(id(r, c) == (r == c ? Complex(1) : Complex(0)));
  CHECK(id == ComplexMatrix::identity(4));
  CHECK_FALSE(id == ComplexMatrix(4));
}

TEST_CASE("matmul against a hand-computed product") {
  const auto a = ComplexMatrix::from_rows({{1, 2}, {3, 4}});
  const auto b = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
  const auto ab = matmul(a, b);
  CHECK(ab == ComplexMatrix::from_rows({{2, 1}, {4, 3}}));
  const auto ba = matmul(b, a);
  CHECK(ba == ComplexMatrix::from_rows({{3, 4}, {1, 2}}));
}

TEST_CASE("matmul dimension mismatch throws") {
  CHECK_THROWS_AS(matmul(ComplexMatrix(2), ComplexMatrix(4)), DimensionError);
  CHECK_THROWS_AS(add(ComplexMatrix(2), ComplexMatrix(4)), DimensionError);
}

TEST_CASE("dagger conjugates and transposes") {
  const auto m = ComplexMatrix::from_rows({{0, 1}, {I1, 0}});
  const auto d = dagger(m);
  CHECK(d(0, 0) == Complex(0));
  CHECK(d(0, 1) == -I1);
  CHECK(d(1, 0) == Complex(1));
  CHECK(d(1, 1) == Complex(0));
}

TEST_CASE("kron follows the MSB-first convention") {
  const auto z = ComplexMatrix::from_rows({{1, 0}, {0, -1}});
  const auto zi = kron(z, ComplexMatrix::identity(2));
  // Z on the leading (most significant) wire: diag(1, 1, -1, -1).
  CHECK(zi(0, 0) == Complex(1));
  CHECK(zi(1, 1) == Complex(1));
  CHECK(zi(2, 2) == Complex(-1));
  CHECK(zi(3, 3) == Complex(-1));
  const auto iz = kron(ComplexMatrix::identity(2), z);
  CHECK(iz(1, 1) == Complex(-1));
  CHECK(iz(2, 2) == Complex(1));
}

TEST_CASE("embed places single-qubit gates") {
  const auto x = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
  CHECK(max_abs_diff(embed(x, {0}, 2), kron(x, ComplexMatrix::identity(2))) ==
        0.0);
  CHECK(max_abs_diff(embed(x, {1}, 2), kron(ComplexMatrix::identity(2), x)) ==
        0.0);
}

TEST_CASE("embed with permuted positions relabels wires") {
  const auto cx = ComplexMatrix::from_rows(
      {{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}});
  // Local wire 0 (the control) goes to physical wire 1 (LSB): |b0 b1> maps
  // to itself when b1 = 0 and flips b0 when b1 = 1.
  const auto m = embed(cx, {1, 0}, 2);
  ComplexMatrix expect(4);
  expect(0, 0) = 1;  // |00> -> |00>
  expect(3, 1) = 1;  // |01> -> |11>
  expect(2, 2) = 1;  // |10> -> |10>
  expect(1, 3) = 1;  // |11> -> |01>
  CHECK(max_abs_diff(m, expect) == 0.0);
}

TEST_CASE("embed rejects bad positions") {
  const auto x = ComplexMatrix::from_rows({{0, 1}, {1, 0}});
  CHECK_THROWS_AS(embed(x, {2}, 2), DimensionError);
  CHECK_THROWS_AS(embed(x, {0, 0}, 2), DimensionError);
}

TEST_CASE("embedding composes like kron on disjoint wires") {
  auto gen = rng(7);
  const auto a = random_unitary(2, gen);
  const auto b = random_unitary(2, gen);
  const auto lhs = matmul(embed(a, {0}, 2), embed(b, {1}, 2));
  CHECK(max_abs_diff(lhs, kron(a, b)) < 1e-12);
}

TEST_CASE("is_unitary") {
  auto gen = rng(11);
  for (std::size_t dim : {2u, 4u, 8u}) {
    const auto u = random_unitary(dim, gen);
    CHECK(is_unitary(u, 1e-9));
    auto broken = u;
    broken(0, 0) += 0.01;
    CHECK_FALSE(is_unitary(broken, 1e-9));
  }
  CHECK_FALSE(is_unitary(ComplexMatrix(2), 1e-9));
}

TEST_CASE("global phase normalization") {
  auto gen = rng(13);
  const auto u = random_unitary(4, gen);
  const Complex phase = std::exp(I1 * 0.7);
  auto v = u;
  for (std::size_t r = 0; r < 4; ++r)
    for (std::size_t c = 0; c < 4; ++c) v(r, c) *= phase;
  CHECK(max_abs_diff(u, v) > 0.1);
  CHECK(max_abs_diff_up_to_phase(u, v) < 1e-12);

  std::vector<Complex> s{Complex(0.6), Complex(0, 0.8)};
  std::vector<Complex> t{Complex(0, 0.6), Complex(-0.8, 0)};  // i * s
  CHECK(max_abs_diff_up_to_phase(s, t) < 1e-12);
}

TEST_CASE("phase comparison is not equality-blind") {
  const auto z = ComplexMatrix::from_rows({{1, 0}, {0, -1}});
  CHECK(max_abs_diff_up_to_phase(z, ComplexMatrix::identity(2)) > 1.0);
}

TEST_CASE("phase comparison is stable when entry magnitudes tie") {
  // Both entries have magnitude 1/sqrt(2) but different phases. Nudging one
  // magnitude by 1e-13 flips which entry is largest, so any scheme that
  // picks a reference entry per side would align the sides to different
  // phases and report a spurious O(1) difference.
  const Complex w(M_SQRT1_2, 0.0);
  const std::vector<Complex> a{w, w * Complex(0, 1)};
  std::vector<Complex> b{a[0] * Complex(0, 1), a[1] * Complex(0, 1)};
  b[1] *= 1.0 + 1e-13;
  CHECK(max_abs_diff_up_to_phase(a, b) < 1e-9);

  const auto ma = ComplexMatrix::from_rows({{a[0], 0}, {0, a[1]}});
  const auto mb = ComplexMatrix::from_rows({{b[0], 0}, {0, b[1]}});
  CHECK(max_abs_diff_up_to_phase(ma, mb) < 1e-9);
}

TEST_CASE("dagger inverts random unitaries") {
  auto gen = rng(17);
  const auto u = random_unitary(8, gen);
  CHECK(max_abs_diff(matmul(u, dagger(u)), ComplexMatrix::identity(8)) <
        1e-12);
  CHECK(max_abs_diff(matmul(dagger(u), u), ComplexMatrix::identity(8)) <
        1e-12);
}

TEST_CASE("qubit_count_for_dim") {
  CHECK(qubit_count_for_dim(1) == 0);
  CHECK(qubit_count_for_dim(2) == 1);
  CHECK(qubit_count_for_dim(8) == 3);
  CHECK_THROWS_AS(qubit_count_for_dim(6), DimensionError);
  CHECK_THROWS_AS(qubit_count_for_dim(0), DimensionError);
}
