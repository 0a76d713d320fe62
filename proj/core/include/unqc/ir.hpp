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
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "unqc/linalg.hpp"

namespace unqc {

class GateDef;
using GatePtr = std::shared_ptr<const GateDef>;

// Tri-state analysis verdict; Unknown only arises when unitary synthesis
// exceeded the width cap.
enum class Permeability { Permeable, NotPermeable, Unknown };

/**
 * One circuit instruction: a gate application or an allocation pseudo-op.
 */
struct Instruction {
  enum class Kind { Apply, Alloc, Dealloc };

  Kind kind = Kind::Apply;
  GatePtr gate;               // Apply
  std::vector<int> operands;  // Apply: physical qubit ids, MSB first
  int qubit = -1;             // Alloc / Dealloc
  bool unchecked = false;     // Dealloc: skip the |0> assertion

  static Instruction apply(GatePtr g, std::vector<int> ops);
  static Instruction alloc(int q);
  static Instruction dealloc(int q, bool unchecked = false);
};

/**
 * Gate definition. Builtins carry an explicit unitary; composites and
 * wrapped gates carry a defining instruction list over `arity` local wires
 * (wire 0 is the most significant local bit).
 *
 * Wrapped gates are opaque to the uncomputation pass exactly like builtins:
 * their definition is never dissolved, and analysis verdicts are computed on
 * the combined unitary only.
 */
class GateDef {
 public:
  enum class Body { Builtin, Composite, Wrapped };

  static GatePtr builtin(std::string name, ComplexMatrix unitary);
  static GatePtr composite(std::string name, int arity,
                           std::vector<Instruction> definition,
                           Body body = Body::Composite);

  const std::string& name() const { return name_; }
  int arity() const { return arity_; }
  Body body() const { return body_; }

  // Builtin only.
  const ComplexMatrix& builtin_unitary() const;
  // Composite/Wrapped only.
  const std::vector<Instruction>& definition() const;

  // Total local wires used by the definition. Wires arity..definition_wires-1
  // are internal temporaries: each is allocated once, deallocated (checked)
  // before the end, and must hold |0> again at its deallocation. For
  // builtins this equals the arity.
  int definition_wires() const { return def_wires_; }

  // Axiomatic analysis facts, set by the library for gates whose structure
  // is known (multi-controlled X controls, diagonal gates). They bypass
  // unitary synthesis so wide library gates stay analyzable.
  std::optional<bool> qfree_axiom() const { return qfree_axiom_; }
  std::optional<bool> permeable_axiom(int pos) const;
  void set_axioms(std::optional<bool> qfree,
                  std::vector<std::optional<bool>> permeable);

  // --- write-once analysis caches -------------------------------------
  // Guarded by an internal mutex; recomputation is idempotent, so losing a
  // publication race is harmless.
  std::shared_ptr<const ComplexMatrix> cached_unitary() const;
  std::shared_ptr<const ComplexMatrix> store_unitary(ComplexMatrix m) const;
  std::optional<bool> cached_qfree() const;
  void store_qfree(bool v) const;
  std::optional<Permeability> cached_permeability(int pos) const;
  void store_permeability(int pos, Permeability v) const;
  GatePtr cached_inverse() const;
  void store_inverse(GatePtr g) const;

 private:
  GateDef() = default;

  std::string name_;
  int arity_ = 0;
  int def_wires_ = 0;
  Body body_ = Body::Builtin;
  ComplexMatrix unitary_;
  std::vector<Instruction> definition_;

  std::optional<bool> qfree_axiom_;
  std::vector<std::optional<bool>> perm_axiom_;

  mutable std::mutex mu_;
  mutable std::shared_ptr<const ComplexMatrix> unitary_cache_;
  mutable std::optional<bool> qfree_cache_;
  mutable std::vector<std::optional<Permeability>> perm_cache_;
  mutable GatePtr inverse_cache_;
};

/**
 * Flat instruction list over physical qubits.
 *
 * Two flavors exist. Session circuits (default constructor) manage liveness
 * through Alloc/Dealloc pseudo-ops. Gate-definition circuits
 * (`Circuit(num_wires)`) have wires 0..num_wires-1 live for their whole
 * extent; pseudo-ops are admitted only for temporary wires beyond that
 * range.
 *
 * `append` validates incrementally; a rejected instruction is not added and
 * the error carries its would-be index.
 */
class Circuit {
 public:
  Circuit() = default;
  explicit Circuit(int num_wires);

  bool wires_preallocated() const { return preallocated_; }
  int preallocated_wires() const { return prealloc_wires_; }
  int num_qubits() const { return num_qubits_; }
  const std::vector<Instruction>& instructions() const { return instrs_; }
  std::size_t size() const { return instrs_.size(); }
  const Instruction& operator[](std::size_t i) const { return instrs_[i]; }

  void append(Instruction ins);
  bool is_live(int qubit) const;

  // Re-checks every invariant from scratch; throws ValidationError.
  void validate() const;

 private:
  void check(const Instruction& ins, std::vector<int>& state, int& num_qubits,
             long index) const;

  bool preallocated_ = false;
  int prealloc_wires_ = 0;
  int num_qubits_ = 0;
  std::vector<Instruction> instrs_;
  std::vector<int> live_;  // per-qubit: 0 never allocated, 1 live, 2 freed
};

/**
 * Builtin gate registry.
 *
 * Fixed members: x, h, z, cx, cz, mcx_2, pt2cx. Parameterized families
 * (ry(theta), mcx_k, mcz_k) are materialized and memoized on demand so a
 * given gate identity is shared and analysis caches stick.
 *
 * pt2cx is the phase-tolerant equivalent of mcx_2 (a relative-phase
 * 3-qubit gate built from RY rotations and CNOTs); the registry records
 * that pairing for the uncomputation pass.
 */
class GateLibrary {
 public:
  GateLibrary();

  GatePtr get(const std::string& name) const;  // throws on unknown name
  std::optional<GatePtr> find(const std::string& name) const;

  GatePtr mcx(int controls);  // controls >= 1; mcx(1) == cx
  GatePtr mcz(int controls);  // mcz(1) == cz
  GatePtr ry(double theta);

  // Resolves dynamic names too: "ry(<angle>)", "mcx_<k>", "mcz_<k>".
  std::optional<GatePtr> resolve(const std::string& name);

  void register_gate(GatePtr g);  // throws on name collision
  std::optional<GatePtr> pt_equivalent(const std::string& gate_name) const;

  std::map<std::string, GatePtr> gates() const;

  static std::string ry_name(double theta);

  // Widest builtin we materialize densely (matrix dim 2^10).
  static constexpr int kMaxBuiltinWires = 10;

 private:
  GatePtr add(GatePtr g);

  mutable std::mutex mu_;
  std::map<std::string, GatePtr> gates_;
  std::map<std::string, std::string> pt_equiv_;
};

std::shared_ptr<GateLibrary> default_library();

/**
 * Inverse of a gate.
 *
 * Builtins whose unitary is self-adjoint (X, CX, multi-controlled X, Z, H)
 * invert to themselves. Otherwise a new definition is derived: builtins get
 * the daggered unitary, composites and wrapped gates get the reversed
 * definition with every constituent inverted (wrapped stays wrapped). The
 * derived name toggles a "_dg" suffix.
 */
GatePtr inverse_gate(const GatePtr& g);

}  // namespace unqc
