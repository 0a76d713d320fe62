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

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "unqc/ir.hpp"

namespace unqc {

/**
 * Statevector over the currently live physical qubits.
 *
 * The wire list orders the basis index: wires_[0] is the most significant
 * bit. Allocating appends a wire at the least significant end; deallocating
 * projects the wire out, shrinking the state, so compiled-circuit
 * simulation exercises qubit reuse directly.
 */
class Statevector {
 public:
  Statevector() = default;

  int num_wires() const { return static_cast<int>(wires_.size()); }
  const std::vector<int>& wires() const { return wires_; }
  const std::vector<Complex>& amplitudes() const { return amps_; }

  bool has_wire(int qubit) const;
  double prob_one(int qubit) const;
  double norm() const;

  void alloc_wire(int qubit, bool one, int cap);

  // Projects the wire onto |0> and renormalizes; returns the pre-projection
  // |1>-probability. Checked deallocation throws ProjectionError when that
  // probability exceeds `tol`; unchecked postselects silently (and only
  // fails when nothing of the state survives).
  double dealloc_wire(int qubit, double tol, bool unchecked);

  void apply(const GateDef& g, const std::vector<int>& qubits);

 private:
  int wire_pos(int qubit) const;
  void apply_matrix(const ComplexMatrix& u, const std::vector<int>& qubits);

  std::vector<Complex> amps_{};
  std::vector<int> wires_{};
};

struct RunOptions {
  // Consumed by the first Alloc of each qubit id; later re-allocations
  // always extend with |0>. Indexed by physical qubit id.
  std::vector<uint8_t> initial_bits;
  int qubit_cap = 20;
  double dealloc_tol = 1e-9;
  // Treat every deallocation as checked, including ones flagged unchecked.
  bool check_all_deallocs = false;
};

struct ProjectionEvent {
  std::size_t instruction;
  int qubit;
  double prob_one;  // before the projection
};

struct RunResult {
  Statevector state;
  std::vector<ProjectionEvent> projections;
};

// Executes a circuit from scratch. Pre-wired circuits start with all wires
// live (in wire order); session circuits allocate as they go.
RunResult run(const Circuit& c, const RunOptions& opts = {});

// Full unitary of a pre-wired gate block, column by column through the
// simulator. Independent of the embed-and-multiply synthesis route.
ComplexMatrix unitary_of(const Circuit& c, int qubit_cap = 20);

// Exact outcome distribution; no sampling. Labels are produced per group of
// qubits as "<name>=<bits>" joined with spaces, entries ordered by basis
// index, probabilities below 1e-12 pruned.
using Histogram = std::vector<std::pair<std::string, double>>;

struct VariableBits {
  std::string name;
  std::vector<int> qubits;  // qubits[0] is the label's most significant bit
};

Histogram histogram(const Statevector& state,
                    const std::vector<VariableBits>& groups);

}  // namespace unqc
