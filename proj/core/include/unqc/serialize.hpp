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

#include "unqc/ir.hpp"
#include "unqc/sim.hpp"
#include "unqc/uncompute.hpp"

namespace unqc {

/**
 * JSON text forms. Circuits serialize as
 *
 *   {"qubits": N,
 *    "instructions": [{"op": "alloc", "qubit": 0},
 *                     {"op": "apply", "gate": "h", "operands": [0]},
 *                     {"op": "dealloc", "qubit": 0}]}
 *
 * with "unchecked": true on unverified deallocations and "prewired": K on
 * circuits built over a fixed wire range. `indent < 0` emits compact text.
 */
std::string circuit_to_json(const Circuit& c, int indent = 2);

// Parses the format above; gate names resolve against `lib` (dynamic
// families such as mcx_k and ry(theta) included). Schema violations and
// unknown gates throw ValidationError.
Circuit circuit_from_json(const std::string& text, GateLibrary& lib);

std::string stats_to_json(const CompileStats& stats, int indent = 2);

// {"name=bits": probability, ...} in histogram order.
std::string histogram_to_json(const Histogram& h, int indent = 2);

}  // namespace unqc
