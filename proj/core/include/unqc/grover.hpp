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

#include <string>
#include <vector>

#include "unqc/ir.hpp"
#include "unqc/sim.hpp"
#include "unqc/uncompute.hpp"

namespace unqc {

/**
 * Grover search demo built on the uncomputation pass.
 *
 * Each iteration allocates a one-qubit tag, raises it with a wrapped oracle
 * (tag flips exactly on the marked basis states), converts it to a phase
 * with Z, and — with `uncompute_tag` — automatically uncomputes it inside
 * an auto scope before the diffusion step, so the freed qubit is reused by
 * the next iteration and the algorithm runs on num_qubits + 1 physical
 * qubits. With `uncompute_tag = false` every tag stays live and entangled
 * with the register, which both widens the circuit and visibly degrades the
 * amplification.
 */
struct GroverConfig {
  int num_qubits = 3;
  std::vector<std::string> marked = {"101"};  // MSB-first bitstrings
  int iterations = 2;
  bool uncompute_tag = true;
  Strategy strategy = Strategy::Inline;
  int sim_qubit_cap = 20;
};

struct GroverResult {
  Circuit circuit;
  Histogram histogram;  // marginal over the search register
  double marked_probability = 0.0;
  int physical_qubits = 0;
  CompileStats stats;
};

GroverResult grover_demo(const GroverConfig& cfg);

}  // namespace unqc
