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

#include <vector>

#include "unqc/ir.hpp"

namespace unqc {

struct AnalysisConfig {
  double tolerance = 1e-9;        // predicate tolerance (entry magnitudes)
  double exact_tolerance = 1e-12; // algebraic identities
  int width_cap = 10;             // max wires for dense unitary synthesis
};

/**
 * Dense unitary of a gate: builtins return their matrix, composite and
 * wrapped gates the product of their embedded constituents in definition
 * order. Cached on the definition; throws WidthCapError above the cap.
 */
std::shared_ptr<const ComplexMatrix> synthesize_unitary(
    const GateDef& g, const AnalysisConfig& cfg = {});

// A gate is qfree when its unitary maps every basis state to a single basis
// state (exactly one entry per column above tolerance). Wrapped and
// composite gates are judged on the combined unitary, never per constituent.
bool is_qfree(const GateDef& g, const AnalysisConfig& cfg = {});

// A gate is permeable on operand `pos` when its unitary commutes with Z on
// that wire, i.e. it can only read the wire's basis value. Every control of
// a classical gate is permeable, but permeability is strictly weaker than
// being a control.
bool is_permeable(const GateDef& g, int pos, const AnalysisConfig& cfg = {});

// Per-operand verdicts; Unknown where synthesis exceeded the width cap.
std::vector<Permeability> permeability_profile(const GateDef& g,
                                               const AnalysisConfig& cfg = {});
// Qfree verdict or Unknown-as-nullopt above the cap.
std::optional<bool> qfree_verdict(const GateDef& g,
                                  const AnalysisConfig& cfg = {});

// --- matrix-level predicates -------------------------------------------

bool matrix_is_qfree(const ComplexMatrix& u, double tol);

// Permeability on `qubit` via the permuted block test: with the tested
// qubit moved to the leading position the two off-diagonal blocks must
// vanish, which is exactly "no entry above tolerance connects basis states
// whose tested bit differs".
bool matrix_is_permeable(const ComplexMatrix& u, int qubit, double tol);

/**
 * Split a unitary permeable on its first p qubits into its 2^p diagonal
 * blocks: u = sum_i |i><i| (x) block[i]. Throws NotPermeableError when an
 * off-diagonal block entry exceeds tolerance.
 */
std::vector<ComplexMatrix> block_decompose(const ComplexMatrix& u, int p,
                                           double tol);

// Reassemble sum_i |i><i| (x) block[i]; inverse of block_decompose.
ComplexMatrix block_compose(const std::vector<ComplexMatrix>& blocks);

/**
 * Commutation check for overlap-on-permeable-qubits: u acts on n qubits and
 * is permeable on its last p, v acts on m qubits and is permeable on its
 * first p; both are embedded on n + m - p wires overlapping exactly on
 * those p qubits, and the commutator is tested entrywise.
 *
 * Precondition violations throw NotPermeableError (distinct from the check
 * returning false).
 */
bool check_theorem1(const ComplexMatrix& u, const ComplexMatrix& v, int p,
                    double tol);

}  // namespace unqc
