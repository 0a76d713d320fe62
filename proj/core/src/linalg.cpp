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

#include "unqc/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <string>

namespace unqc {

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<Complex>> rows) {
  ComplexMatrix m(rows.size());
  std::size_t r = 0;
  for (const auto& row : rows) {
    if (row.size() != rows.size())
      throw DimensionError("from_rows requires a square initializer");
    std::size_t c = 0;
    for (const auto& v : row) m(r, c++) = v;
    ++r;
  }
  return m;
}

static void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b,
                             const char* op) {
  if (a.dim() != b.dim())
    throw DimensionError(std::string(op) + ": dimension mismatch " +
                         std::to_string(a.dim()) + " vs " +
                         std::to_string(b.dim()));
}

ComplexMatrix matmul(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "matmul");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  }
  return out;
}

ComplexMatrix add(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "add");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = a(i, j) + b(i, j);
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t na = a.dim(), nb = b.dim();
  ComplexMatrix out(na * nb);
  for (std::size_t i = 0; i < na; ++i)
    for (std::size_t j = 0; j < na; ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < nb; ++k)
        for (std::size_t l = 0; l < nb; ++l)
          out(i * nb + k, j * nb + l) = aij * b(k, l);
    }
  return out;
}

ComplexMatrix dagger(const ComplexMatrix& a) {
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = std::conj(a(j, i));
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  const std::size_t n = a.dim();
  for (std::size_t i = 0; i < n * n; ++i)
    m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
  return m;
}

int qubit_count_for_dim(std::size_t dim) {
  if (dim == 0) throw DimensionError("zero-dimensional matrix");
  int n = 0;
  std::size_t d = dim;
  while (d > 1) {
    if (d % 2 != 0)
      throw DimensionError("dimension " + std::to_string(dim) +
                           " is not a power of two");
    d /= 2;
    ++n;
  }
  return n;
}

ComplexMatrix embed(const ComplexMatrix& u, const std::vector<int>& positions,
                    int total_qubits) {
  const int k = qubit_count_for_dim(u.dim());
  if (static_cast<int>(positions.size()) != k)
    throw DimensionError("embed: unitary acts on " + std::to_string(k) +
                         " qubits but " + std::to_string(positions.size()) +
                         " positions given");
  std::set<int> seen;
  for (int p : positions) {
    if (p < 0 || p >= total_qubits)
      throw DimensionError("embed: position " + std::to_string(p) +
                           " out of range for " + std::to_string(total_qubits) +
                           " qubits");
    if (!seen.insert(p).second)
      throw DimensionError("embed: duplicate position " + std::to_string(p));
  }

  const std::size_t dim = std::size_t{1} << total_qubits;
  const std::size_t ldim = std::size_t{1} << k;
  // Qubit q occupies bit (total_qubits - 1 - q) of the global index.
  std::vector<std::size_t> mask(k);
  for (int j = 0; j < k; ++j)
    mask[j] = std::size_t{1} << (total_qubits - 1 - positions[j]);

  ComplexMatrix out(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    std::size_t lcol = 0, base = col;
    for (int j = 0; j < k; ++j) {
      if (col & mask[j]) lcol |= std::size_t{1} << (k - 1 - j);
      base &= ~mask[j];
    }
    for (std::size_t lrow = 0; lrow < ldim; ++lrow) {
      const Complex v = u(lrow, lcol);
      if (v == Complex{}) continue;
      std::size_t row = base;
      for (int j = 0; j < k; ++j)
        if (lrow & (std::size_t{1} << (k - 1 - j))) row |= mask[j];
      out(row, col) = v;
    }
  }
  return out;
}

bool is_unitary(const ComplexMatrix& u, double tol) {
  if (u.empty()) return false;
  return max_abs_diff(matmul(dagger(u), u),
                      ComplexMatrix::identity(u.dim())) < tol;
}

static Complex dominant_phase(const std::vector<Complex>& v) {
  double best = 0.0;
  Complex entry{};
  for (const Complex& c : v) {
    const double m = std::abs(c);
    if (m > best) {
      best = m;
      entry = c;
    }
  }
  if (best == 0.0) return Complex{1.0, 0.0};
  return entry / best;
}

ComplexMatrix normalize_global_phase(const ComplexMatrix& a) {
  const Complex ph = dominant_phase(a.data());
  ComplexMatrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      out(i, j) = a(i, j) * std::conj(ph);
  return out;
}

std::vector<Complex> normalize_global_phase(const std::vector<Complex>& v) {
  const Complex ph = dominant_phase(v);
  std::vector<Complex> out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] * std::conj(ph);
  return out;
}

// Unit phase of <b, a>: rotating b by it minimizes the Frobenius distance
// to a, and recovers the phase exactly when a == e^{it} b. A zero inner
// product means no rotation can help, so 1 is as good as any.
static Complex alignment_phase(const std::vector<Complex>& a,
                               const std::vector<Complex>& b) {
  Complex ip{};
  for (std::size_t i = 0; i < a.size(); ++i) ip += std::conj(b[i]) * a[i];
  const double m = std::abs(ip);
  if (m == 0.0) return Complex{1.0, 0.0};
  return ip / m;
}

double max_abs_diff_up_to_phase(const ComplexMatrix& a,
                                const ComplexMatrix& b) {
  if (a.dim() != b.dim())
    throw DimensionError("max_abs_diff_up_to_phase: dimension mismatch");
  const Complex ph = alignment_phase(a.data(), b.data());
  double m = 0.0;
  for (std::size_t i = 0; i < a.data().size(); ++i)
    m = std::max(m, std::abs(a.data()[i] - ph * b.data()[i]));
  return m;
}

double max_abs_diff_up_to_phase(const std::vector<Complex>& a,
                                const std::vector<Complex>& b) {
  if (a.size() != b.size())
    throw DimensionError("max_abs_diff_up_to_phase: state size mismatch");
  const Complex ph = alignment_phase(a, b);
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i)
    m = std::max(m, std::abs(a[i] - ph * b[i]));
  return m;
}

}  // namespace unqc
