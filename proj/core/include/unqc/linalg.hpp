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

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "unqc/errors.hpp"

namespace unqc {

using Complex = std::complex<double>;

/**
 * Dense square complex matrix, row-major.
 *
 * Basis-index convention used throughout: wire 0 of a gate is the most
 * significant bit of the local basis index, so a controlled gate with its
 * control on wire 0 has the block form diag(I, U).
 */
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  explicit ComplexMatrix(std::size_t dim) : dim_(dim), a_(dim * dim) {}

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<Complex>> rows);

  std::size_t dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  Complex& operator()(std::size_t r, std::size_t c) { return a_[r * dim_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const {
    return a_[r * dim_ + c];
  }

  const std::vector<Complex>& data() const { return a_; }

  bool operator==(const ComplexMatrix& o) const {
    return dim_ == o.dim_ && a_ == o.a_;
  }

 private:
  std::size_t dim_ = 0;
  std::vector<Complex> a_;
};

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix dagger(const ComplexMatrix& a);

// Largest entrywise |a - b|; dimension mismatch throws.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/**
 * Lift a k-qubit unitary onto `total_qubits` wires, acting on the wires in
 * `positions` (positions[0] is the most significant local bit). Positions
 * must be distinct and in range.
 */
ComplexMatrix embed(const ComplexMatrix& u, const std::vector<int>& positions,
                    int total_qubits);

bool is_unitary(const ComplexMatrix& u, double tol);

// Multiply by the conjugate phase of the largest-magnitude entry so that
// entry becomes real nonnegative. Zero matrices are returned unchanged.
ComplexMatrix normalize_global_phase(const ComplexMatrix& a);
std::vector<Complex> normalize_global_phase(const std::vector<Complex>& v);

// Largest entrywise |a - e^{it} b| after rotating b by the phase of the
// inner product <b, a>. That phase is exact whenever the inputs differ only
// by a global phase; independent per-side normalization would be unstable
// when several entries tie for the largest magnitude.
double max_abs_diff_up_to_phase(const ComplexMatrix& a, const ComplexMatrix& b);
double max_abs_diff_up_to_phase(const std::vector<Complex>& a,
                                const std::vector<Complex>& b);

// Number of qubits for a dimension; throws unless dim is a power of two >= 1.
int qubit_count_for_dim(std::size_t dim);

}  // namespace unqc
