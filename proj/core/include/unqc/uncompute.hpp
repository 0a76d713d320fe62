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

#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "unqc/analysis.hpp"
#include "unqc/dag.hpp"
#include "unqc/errors.hpp"
#include "unqc/ir.hpp"

namespace unqc {

/**
 * Uncomputation strategies.
 *
 * Inline inserts inverse gates at the correct DAG positions, re-reading the
 * exact value nodes the originals read; already-uncomputed values are never
 * recomputed. Revert appends inverses at the end of the circuit and, when a
 * needed intermediate value is no longer current, first replays its
 * producing chain onto freshly allocated qubits (possibly different physical
 * ids), un-replaying afterwards.
 */
enum class Strategy { Inline, Revert };

struct QuantumVariable {
  std::string name;
  std::vector<int> qubits;  // physical ids; qubits[0] is the MSB
  bool allocated = true;    // false once Deleted

  int width() const { return static_cast<int>(qubits.size()); }
  int operator[](int i) const { return qubits.at(i); }
};

struct UncomputeReport {
  Strategy strategy = Strategy::Inline;
  int inserted_gates = 0;   // gate applications added by the pass
  int replayed_gates = 0;   // forward recomputation gates (Revert only)
  int pt_substitutions = 0; // compute/uncompute pairs swapped for pt gates
  std::vector<int> freed_qubits;
};

// Aggregate statistics of a session's compiled circuit.
struct CompileStats {
  int qubits = 0;
  std::map<std::string, long> gate_counts;
  long mcx_count = 0;  // cx, mcx_k, and their phase-tolerant stand-ins
  std::vector<int> freed_qubits;  // chronological, may repeat reused ids
  long pt_substitutions = 0;
  std::string strategy;
};

struct SessionConfig {
  AnalysisConfig analysis;
  bool pt_substitution = true;
  int sim_qubit_cap = 20;
};

/**
 * A quantum program under construction: named variables over physical
 * qubits, a growing circuit, and the uncomputation pass.
 *
 * Deallocated qubits enter a free pool; allocation draws from the pool
 * first (ascending id) before minting fresh ids, so uncomputed ancillas are
 * transparently reused.
 *
 * Every uncompute invocation is transactional: it either succeeds with all
 * postconditions or throws, leaving circuit and variables untouched.
 */
class Session {
 public:
  explicit Session(SessionConfig cfg = {},
                   std::shared_ptr<GateLibrary> lib = nullptr);

  const SessionConfig& config() const { return cfg_; }
  GateLibrary& library() { return *lib_; }
  const std::shared_ptr<GateLibrary>& library_ptr() const { return lib_; }

  const QuantumVariable& alloc(const std::string& name, int width);

  void apply(const GatePtr& g, const std::vector<int>& qubits);
  void apply(const std::string& gate_name, const std::vector<int>& qubits);

  /**
   * Uncompute and delete a variable.
   *
   * Preconditions: the variable is Allocated; every gate writing its qubits
   * is qfree; every other operand of those gates is read permeably or lies
   * inside the variable's own qubit set. Violations throw UncomputeError
   * (NonQfree / EntangledTargets / ValueUnavailable / AnalysisUnavailable).
   */
  UncomputeReport uncompute(const std::string& name,
                            Strategy strategy = Strategy::Inline);

  // Deallocates a variable's qubits. Unless `unchecked`, the variable must
  // be provably |0> (no gate ever touched its live qubits).
  void delete_variable(const std::string& name, bool unchecked = false);

  // Registers `definition` (a pre-wired local circuit, temporaries allowed
  // as wires beyond the pre-wired range) as an opaque wrapped gate.
  GatePtr wrap(const Circuit& definition, const std::string& name);

  // Auto-uncompute scopes: every variable allocated between begin and end
  // and not named in `returned` is uncomputed (then deleted) in reverse
  // allocation order. Returned variables escape to the enclosing scope.
  void begin_auto_scope();
  std::vector<UncomputeReport> end_auto_scope(
      const std::vector<std::string>& returned,
      Strategy strategy = Strategy::Inline);
  // Closes the scope without uncomputing (error-path cleanup); allocations
  // merge into the enclosing scope.
  void abandon_auto_scope();

  const Circuit& circuit() const { return circuit_; }
  int num_physical_qubits() const { return circuit_.num_qubits(); }
  const std::vector<int>& free_pool() const { return free_pool_; }

  bool has_variable(const std::string& name) const;
  const QuantumVariable& variable(const std::string& name) const;
  // Allocated variables in allocation order.
  std::vector<std::string> surviving_variables() const;

  CompileStats stats() const;
  std::string dag_dot() const;

 private:
  QuantumVariable& live_variable(const std::string& name);
  int take_pool_id(std::vector<int>& pool, int& fresh) const;
  void release_qubits(const std::vector<int>& qubits);
  std::vector<int> computing_nodes(const UncomputeDag& dag,
                                   const QuantumVariable& v,
                                   const std::string& name) const;
  int substitute_pairs(Circuit& circuit,
                       const std::vector<std::pair<std::size_t, std::size_t>>&
                           pair_positions);
  UncomputeReport uncompute_inline(QuantumVariable& v);
  UncomputeReport uncompute_revert(QuantumVariable& v);

  SessionConfig cfg_;
  std::shared_ptr<GateLibrary> lib_;
  Circuit circuit_;
  std::map<std::string, QuantumVariable> vars_;
  std::vector<std::string> order_;  // allocation order of variable names
  std::map<int, std::string> owner_;  // live qubit -> variable name
  std::vector<int> free_pool_;        // sorted ascending
  int next_fresh_ = 0;
  std::vector<std::vector<std::string>> auto_stack_;
  std::vector<int> freed_log_;
  long pt_total_ = 0;
  std::string strategy_label_ = "inline";
};

/**
 * Runs `body` inside an auto-uncompute scope. The body returns the names of
 * the variables to keep; everything else it allocated is uncomputed in
 * reverse allocation order.
 */
template <class Fn>
std::vector<std::string> auto_uncompute_scope(
    Session& session, Fn&& body, Strategy strategy = Strategy::Inline) {
  session.begin_auto_scope();
  std::vector<std::string> keep;
  try {
    keep = body();
  } catch (...) {
    session.abandon_auto_scope();
    throw;
  }
  session.end_auto_scope(keep, strategy);
  return keep;
}

// Library-level gate wrapping without a session.
GatePtr gate_wrap(GateLibrary& lib, const Circuit& definition,
                  const std::string& name, const AnalysisConfig& cfg = {});

}  // namespace unqc
