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

#include "unqc/analysis.hpp"

#include <cmath>
#include <string>

namespace unqc {

std::shared_ptr<const ComplexMatrix> synthesize_unitary(
    const GateDef& g, const AnalysisConfig& cfg) {
  if (g.definition_wires() > cfg.width_cap)
    throw WidthCapError("gate '" + g.name() + "' spans " +
                        std::to_string(g.definition_wires()) +
                        " wires, above the width cap of " +
                        std::to_string(cfg.width_cap));
  if (auto cached = g.cached_unitary()) return cached;
  if (g.body() == GateDef::Body::Builtin)
    return g.store_unitary(g.builtin_unitary());

  // Fold the definition over all local wires, including internal
  // temporaries. Temporaries start at |0> and are verified to return there,
  // so pseudo-ops contribute identity and the operand-space action is the
  // (|0> in, |0> out) sub-block over the temporary bits.
  const int total = g.definition_wires();
  const std::size_t full_dim = std::size_t{1} << total;
  ComplexMatrix u = ComplexMatrix::identity(full_dim);
  for (const Instruction& ins : g.definition()) {
    if (ins.kind != Instruction::Kind::Apply) continue;
    auto part = synthesize_unitary(*ins.gate, cfg);
    u = matmul(embed(*part, ins.operands, total), u);
  }
  if (total == g.arity()) return g.store_unitary(std::move(u));

  const int t = total - g.arity();
  const std::size_t dim = std::size_t{1} << g.arity();
  ComplexMatrix r(dim);
  for (std::size_t row = 0; row < dim; ++row)
    for (std::size_t col = 0; col < dim; ++col)
      r(row, col) = u(row << t, col << t);
  if (!is_unitary(r, cfg.tolerance))
    throw ValidationError("gate '" + g.name() +
                          "': an internal wire is not returned to |0>, so "
                          "the action on the operand wires is not unitary");
  return g.store_unitary(std::move(r));
}

bool matrix_is_qfree(const ComplexMatrix& u, double tol) {
  const std::size_t n = u.dim();
  for (std::size_t c = 0; c < n; ++c) {
    int hits = 0;
    for (std::size_t r = 0; r < n; ++r)
      if (std::abs(u(r, c)) > tol && ++hits > 1) return false;
    if (hits != 1) return false;
  }
  return true;
}

bool matrix_is_permeable(const ComplexMatrix& u, int qubit, double tol) {
  const int n = qubit_count_for_dim(u.dim());
  if (qubit < 0 || qubit >= n)
    throw DimensionError("permeability test: qubit " + std::to_string(qubit) +
                         " out of range");
  const std::size_t mask = std::size_t{1} << (n - 1 - qubit);
  const std::size_t dim = u.dim();
  for (std::size_t r = 0; r < dim; ++r)
    for (std::size_t c = 0; c < dim; ++c)
      if (((r ^ c) & mask) && std::abs(u(r, c)) > tol) return false;
  return true;
}

bool is_qfree(const GateDef& g, const AnalysisConfig& cfg) {
  if (auto ax = g.qfree_axiom()) return *ax;
  if (auto cached = g.cached_qfree()) return *cached;
  auto u = synthesize_unitary(g, cfg);
  const bool v = matrix_is_qfree(*u, cfg.tolerance);
  g.store_qfree(v);
  return v;
}

bool is_permeable(const GateDef& g, int pos, const AnalysisConfig& cfg) {
  if (pos < 0 || pos >= g.arity())
    throw ValidationError("operand position " + std::to_string(pos) +
                          " out of range for '" + g.name() + "'");
  if (auto ax = g.permeable_axiom(pos)) return *ax;
  if (auto cached = g.cached_permeability(pos)) {
    if (*cached != Permeability::Unknown)
      return *cached == Permeability::Permeable;
  }
  auto u = synthesize_unitary(g, cfg);
  const bool v = matrix_is_permeable(*u, pos, cfg.tolerance);
  g.store_permeability(
      pos, v ? Permeability::Permeable : Permeability::NotPermeable);
  return v;
}

std::vector<Permeability> permeability_profile(const GateDef& g,
                                               const AnalysisConfig& cfg) {
  std::vector<Permeability> out(g.arity(), Permeability::Unknown);
  for (int i = 0; i < g.arity(); ++i) {
    try {
      out[i] = is_permeable(g, i, cfg) ? Permeability::Permeable
                                       : Permeability::NotPermeable;
    } catch (const WidthCapError&) {
      out[i] = Permeability::Unknown;
    }
  }
  return out;
}

std::optional<bool> qfree_verdict(const GateDef& g, const AnalysisConfig& cfg) {
  try {
    return is_qfree(g, cfg);
  } catch (const WidthCapError&) {
    return std::nullopt;
  }
}

std::vector<ComplexMatrix> block_decompose(const ComplexMatrix& u, int p,
                                           double tol) {
  const int n = qubit_count_for_dim(u.dim());
  if (p < 0 || p > n)
    throw DimensionError("block_decompose: invalid qubit count " +
                         std::to_string(p));
  const std::size_t blocks = std::size_t{1} << p;
  const std::size_t bdim = u.dim() >> p;
  for (std::size_t r = 0; r < u.dim(); ++r)
    for (std::size_t c = 0; c < u.dim(); ++c)
      if (r / bdim != c / bdim && std::abs(u(r, c)) > tol)
        throw NotPermeableError(
            "matrix is not permeable on its first " + std::to_string(p) +
            " qubits: off-diagonal block entry at (" + std::to_string(r) +
            ", " + std::to_string(c) + ")");
  std::vector<ComplexMatrix> out;
  out.reserve(blocks);
  for (std::size_t b = 0; b < blocks; ++b) {
    ComplexMatrix m(bdim);
    for (std::size_t r = 0; r < bdim; ++r)
      for (std::size_t c = 0; c < bdim; ++c)
        m(r, c) = u(b * bdim + r, b * bdim + c);
    out.push_back(std::move(m));
  }
  return out;
}

ComplexMatrix block_compose(const std::vector<ComplexMatrix>& blocks) {
  if (blocks.empty()) throw DimensionError("block_compose: no blocks");
  const std::size_t bdim = blocks.front().dim();
  for (const auto& b : blocks)
    if (b.dim() != bdim)
      throw DimensionError("block_compose: ragged block dimensions");
  ComplexMatrix out(blocks.size() * bdim);
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (std::size_t r = 0; r < bdim; ++r)
      for (std::size_t c = 0; c < bdim; ++c)
        out(b * bdim + r, b * bdim + c) = blocks[b](r, c);
  return out;
}

bool check_theorem1(const ComplexMatrix& u, const ComplexMatrix& v, int p,
                    double tol) {
  const int n = qubit_count_for_dim(u.dim());
  const int m = qubit_count_for_dim(v.dim());
  if (p < 1 || p > n || p > m)
    throw DimensionError("overlap of " + std::to_string(p) +
                         " qubits does not fit operands of " +
                         std::to_string(n) + " and " + std::to_string(m) +
                         " qubits");
  for (int i = n - p; i < n; ++i)
    if (!matrix_is_permeable(u, i, tol))
      throw NotPermeableError(
          "left operand is not permeable on its qubit " + std::to_string(i));
  for (int i = 0; i < p; ++i)
    if (!matrix_is_permeable(v, i, tol))
      throw NotPermeableError(
          "right operand is not permeable on its qubit " + std::to_string(i));

  const int total = n + m - p;
  std::vector<int> upos(n), vpos(m);
  for (int i = 0; i < n; ++i) upos[i] = i;
  for (int i = 0; i < m; ++i) vpos[i] = n - p + i;
  const ComplexMatrix ue = embed(u, upos, total);
  const ComplexMatrix ve = embed(v, vpos, total);
  return max_abs_diff(matmul(ue, ve), matmul(ve, ue)) < tol;
}

}  // namespace unqc
