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

#include "unqc/ir.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>

namespace unqc {

namespace {

constexpr double kUnitaryTol = 1e-9;
constexpr double kExactTol = 1e-12;

std::string toggle_dg(const std::string& name) {
  static const std::string suffix = "_dg";
  if (name.size() > suffix.size() &&
      name.compare(name.size() - suffix.size(), suffix.size(), suffix) == 0)
    return name.substr(0, name.size() - suffix.size());
  return name + suffix;
}

}  // namespace

// ----------------------------------------------------------------------
// Instruction

Instruction Instruction::apply(GatePtr g, std::vector<int> ops) {
  Instruction ins;
  ins.kind = Kind::Apply;
  ins.gate = std::move(g);
  ins.operands = std::move(ops);
  return ins;
}

Instruction Instruction::alloc(int q) {
  Instruction ins;
  ins.kind = Kind::Alloc;
  ins.qubit = q;
  return ins;
}

Instruction Instruction::dealloc(int q, bool unchecked) {
  Instruction ins;
  ins.kind = Kind::Dealloc;
  ins.qubit = q;
  ins.unchecked = unchecked;
  return ins;
}

// ----------------------------------------------------------------------
// GateDef

GatePtr GateDef::builtin(std::string name, ComplexMatrix unitary) {
  const int n = qubit_count_for_dim(unitary.dim());
  if (n < 1) throw DimensionError("builtin gate needs at least one qubit");
  if (!is_unitary(unitary, kUnitaryTol))
    throw ValidationError("gate '" + name + "' is not unitary");
  auto g = std::shared_ptr<GateDef>(new GateDef());
  g->name_ = std::move(name);
  g->arity_ = n;
  g->def_wires_ = n;
  g->body_ = Body::Builtin;
  g->unitary_ = std::move(unitary);
  return g;
}

GatePtr GateDef::composite(std::string name, int arity,
                           std::vector<Instruction> definition, Body body) {
  if (body == Body::Builtin)
    throw ValidationError("composite factory cannot build a builtin");
  if (arity < 1) throw ValidationError("composite gate needs arity >= 1");
  // Wires < arity are the gate's operands, live throughout. Wires >= arity
  // are internal temporaries: allocated exactly once, used only while live,
  // and deallocated (checked) before the definition ends.
  int total = arity;
  std::map<int, int> temp_state;  // wire -> 0 dead, 1 live, 2 freed
  long idx = 0;
  for (const auto& ins : definition) {
    switch (ins.kind) {
      case Instruction::Kind::Alloc: {
        if (ins.qubit < arity)
          throw ValidationError(
              "definition of '" + name + "' allocates operand wire " +
                  std::to_string(ins.qubit) +
                  "; only wires beyond the arity may be temporaries",
              idx);
        if (temp_state[ins.qubit] != 0)
          throw ValidationError("definition of '" + name +
                                    "' allocates temporary wire " +
                                    std::to_string(ins.qubit) + " twice",
                                idx);
        temp_state[ins.qubit] = 1;
        total = std::max(total, ins.qubit + 1);
        break;
      }
      case Instruction::Kind::Dealloc: {
        if (ins.qubit < arity || temp_state[ins.qubit] != 1)
          throw ValidationError("definition of '" + name +
                                    "' deallocates wire " +
                                    std::to_string(ins.qubit) +
                                    " which is not a live temporary",
                                idx);
        if (ins.unchecked)
          throw ValidationError(
              "definition of '" + name +
                  "' discards temporary wire " + std::to_string(ins.qubit) +
                  " unchecked; gate definitions must stay unitary",
              idx);
        temp_state[ins.qubit] = 2;
        break;
      }
      case Instruction::Kind::Apply: {
        if (!ins.gate) throw ValidationError("null gate in definition", idx);
        if (static_cast<int>(ins.operands.size()) != ins.gate->arity())
          throw ValidationError("operand count does not match arity of '" +
                                    ins.gate->name() + "'",
                                idx);
        std::set<int> seen;
        for (int w : ins.operands) {
          if (w < 0 || (w >= arity && temp_state[w] != 1))
            throw ValidationError("wire " + std::to_string(w) +
                                      " is not live in definition of '" +
                                      name + "'",
                                  idx);
          if (!seen.insert(w).second)
            throw ValidationError(
                "duplicate wire in definition of '" + name + "'", idx);
        }
        break;
      }
    }
    ++idx;
  }
  for (const auto& [w, st] : temp_state)
    if (st == 1)
      throw ValidationError("temporary wire " + std::to_string(w) +
                            " escapes the definition of '" + name +
                            "' (never deallocated)");
  auto g = std::shared_ptr<GateDef>(new GateDef());
  g->name_ = std::move(name);
  g->arity_ = arity;
  g->def_wires_ = total;
  g->body_ = body;
  g->definition_ = std::move(definition);
  return g;
}

const ComplexMatrix& GateDef::builtin_unitary() const {
  if (body_ != Body::Builtin)
    throw ValidationError("gate '" + name_ + "' has no builtin unitary");
  return unitary_;
}

const std::vector<Instruction>& GateDef::definition() const {
  if (body_ == Body::Builtin)
    throw ValidationError("gate '" + name_ + "' has no definition circuit");
  return definition_;
}

std::optional<bool> GateDef::permeable_axiom(int pos) const {
  if (pos < 0 || pos >= arity_)
    throw ValidationError("operand position out of range for '" + name_ + "'");
  if (perm_axiom_.empty()) return std::nullopt;
  return perm_axiom_[pos];
}

void GateDef::set_axioms(std::optional<bool> qfree,
                         std::vector<std::optional<bool>> permeable) {
  if (!permeable.empty() && static_cast<int>(permeable.size()) != arity_)
    throw ValidationError("axiom vector does not match arity of '" + name_ +
                          "'");
  qfree_axiom_ = qfree;
  perm_axiom_ = std::move(permeable);
}

std::shared_ptr<const ComplexMatrix> GateDef::cached_unitary() const {
  std::lock_guard<std::mutex> lk(mu_);
  return unitary_cache_;
}

std::shared_ptr<const ComplexMatrix> GateDef::store_unitary(
    ComplexMatrix m) const {
  std::lock_guard<std::mutex> lk(mu_);
  if (!unitary_cache_)
    unitary_cache_ = std::make_shared<const ComplexMatrix>(std::move(m));
  return unitary_cache_;
}

std::optional<bool> GateDef::cached_qfree() const {
  std::lock_guard<std::mutex> lk(mu_);
  return qfree_cache_;
}

void GateDef::store_qfree(bool v) const {
  std::lock_guard<std::mutex> lk(mu_);
  if (!qfree_cache_) qfree_cache_ = v;
}

std::optional<Permeability> GateDef::cached_permeability(int pos) const {
  std::lock_guard<std::mutex> lk(mu_);
  if (perm_cache_.empty() || pos < 0 || pos >= arity_) return std::nullopt;
  return perm_cache_[pos];
}

void GateDef::store_permeability(int pos, Permeability v) const {
  std::lock_guard<std::mutex> lk(mu_);
  if (perm_cache_.empty()) perm_cache_.resize(arity_);
  if (pos >= 0 && pos < arity_ && !perm_cache_[pos]) perm_cache_[pos] = v;
}

GatePtr GateDef::cached_inverse() const {
  std::lock_guard<std::mutex> lk(mu_);
  return inverse_cache_;
}

void GateDef::store_inverse(GatePtr g) const {
  std::lock_guard<std::mutex> lk(mu_);
  if (!inverse_cache_) inverse_cache_ = std::move(g);
}

// ----------------------------------------------------------------------
// Circuit

Circuit::Circuit(int num_wires)
    : preallocated_(true), prealloc_wires_(num_wires), num_qubits_(num_wires) {
  if (num_wires < 1)
    throw ValidationError("pre-wired circuit needs at least one wire");
  live_.assign(num_wires, 1);
}

bool Circuit::is_live(int qubit) const {
  return qubit >= 0 && qubit < static_cast<int>(live_.size()) &&
         live_[qubit] == 1;
}

void Circuit::check(const Instruction& ins, std::vector<int>& state,
                    int& num_qubits, long index) const {
  switch (ins.kind) {
    case Instruction::Kind::Alloc: {
      if (ins.qubit < 0)
        throw ValidationError("negative qubit id in alloc", index);
      if (ins.qubit < prealloc_wires_)
        throw ValidationError(
            "allocation pseudo-op on pre-wired wire " +
                std::to_string(ins.qubit),
            index);
      if (ins.qubit < static_cast<int>(state.size()) &&
          state[ins.qubit] == 1)
        throw ValidationError(
            "qubit " + std::to_string(ins.qubit) + " allocated while live",
            index);
      if (ins.qubit >= static_cast<int>(state.size()))
        state.resize(ins.qubit + 1, 0);
      state[ins.qubit] = 1;
      num_qubits = std::max(num_qubits, ins.qubit + 1);
      break;
    }
    case Instruction::Kind::Dealloc: {
      if (ins.qubit >= 0 && ins.qubit < prealloc_wires_)
        throw ValidationError(
            "deallocation pseudo-op on pre-wired wire " +
                std::to_string(ins.qubit),
            index);
      if (ins.qubit < 0 || ins.qubit >= static_cast<int>(state.size()) ||
          state[ins.qubit] != 1)
        throw ValidationError(
            "qubit " + std::to_string(ins.qubit) + " deallocated while dead",
            index);
      state[ins.qubit] = 2;
      break;
    }
    case Instruction::Kind::Apply: {
      if (!ins.gate) throw ValidationError("null gate", index);
      if (static_cast<int>(ins.operands.size()) != ins.gate->arity())
        throw ValidationError(
            "gate '" + ins.gate->name() + "' expects " +
                std::to_string(ins.gate->arity()) + " operands, got " +
                std::to_string(ins.operands.size()),
            index);
      std::set<int> seen;
      for (int q : ins.operands) {
        if (q < 0 || q >= static_cast<int>(state.size()) || state[q] != 1)
          throw ValidationError("gate '" + ins.gate->name() +
                                    "' touches dead qubit " +
                                    std::to_string(q),
                                index);
        if (!seen.insert(q).second)
          throw ValidationError(
              "duplicate operand " + std::to_string(q) + " on gate '" +
                  ins.gate->name() + "'",
              index);
      }
      break;
    }
  }
}

void Circuit::append(Instruction ins) {
  check(ins, live_, num_qubits_, static_cast<long>(instrs_.size()));
  instrs_.push_back(std::move(ins));
}

void Circuit::validate() const {
  std::vector<int> state(prealloc_wires_, 1);
  int nq = prealloc_wires_;
  long idx = 0;
  for (const auto& ins : instrs_) check(ins, state, nq, idx++);
}

// ----------------------------------------------------------------------
// GateLibrary

namespace {

ComplexMatrix x_matrix() {
  return ComplexMatrix::from_rows({{0, 1}, {1, 0}});
}

ComplexMatrix h_matrix() {
  const double s = 1.0 / std::sqrt(2.0);
  return ComplexMatrix::from_rows({{s, s}, {s, -s}});
}

ComplexMatrix z_matrix() {
  return ComplexMatrix::from_rows({{1, 0}, {0, -1}});
}

ComplexMatrix ry_matrix(double theta) {
  const double c = std::cos(theta / 2), s = std::sin(theta / 2);
  return ComplexMatrix::from_rows({{c, -s}, {s, c}});
}

ComplexMatrix mcx_matrix(int controls) {
  const std::size_t dim = std::size_t{1} << (controls + 1);
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m(dim - 2, dim - 2) = 0;
  m(dim - 1, dim - 1) = 0;
  m(dim - 2, dim - 1) = 1;
  m(dim - 1, dim - 2) = 1;
  return m;
}

ComplexMatrix mcz_matrix(int controls) {
  const std::size_t dim = std::size_t{1} << (controls + 1);
  ComplexMatrix m = ComplexMatrix::identity(dim);
  m(dim - 1, dim - 1) = -1;
  return m;
}

std::vector<std::optional<bool>> control_target_axioms(int controls) {
  std::vector<std::optional<bool>> perm(controls + 1, true);
  perm.back() = false;
  return perm;
}

}  // namespace

std::string GateLibrary::ry_name(double theta) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "ry(%.17g)", theta);
  return buf;
}

GateLibrary::GateLibrary() {
  auto xg = GateDef::builtin("x", x_matrix());
  const_cast<GateDef*>(xg.get())->set_axioms(true, {false});
  add(xg);

  auto hg = GateDef::builtin("h", h_matrix());
  const_cast<GateDef*>(hg.get())->set_axioms(false, {false});
  add(hg);

  auto zg = GateDef::builtin("z", z_matrix());
  const_cast<GateDef*>(zg.get())->set_axioms(true, {true});
  add(zg);

  auto cxg = GateDef::builtin("cx", mcx_matrix(1));
  const_cast<GateDef*>(cxg.get())->set_axioms(true, control_target_axioms(1));
  add(cxg);

  auto czg = GateDef::builtin("cz", mcz_matrix(1));
  const_cast<GateDef*>(czg.get())->set_axioms(true, {true, true});
  add(czg);

  auto mcx2 = GateDef::builtin("mcx_2", mcx_matrix(2));
  const_cast<GateDef*>(mcx2.get())->set_axioms(true, control_target_axioms(2));
  add(mcx2);

  // Phase-tolerant 2-controlled X: a relative-phase Toffoli over wires
  // (c0, c1, t). Same column support as mcx_2, with a -1 phase on |101>.
  // No axioms on purpose: its verdicts must come out of the combined
  // unitary, never out of the RY constituents.
  const double q = M_PI / 4;
  auto ryp = ry(q);
  auto rym = ry(-q);
  std::vector<Instruction> marg;
  marg.push_back(Instruction::apply(ryp, {2}));
  marg.push_back(Instruction::apply(cxg, {1, 2}));
  marg.push_back(Instruction::apply(ryp, {2}));
  marg.push_back(Instruction::apply(cxg, {0, 2}));
  marg.push_back(Instruction::apply(rym, {2}));
  marg.push_back(Instruction::apply(cxg, {1, 2}));
  marg.push_back(Instruction::apply(rym, {2}));
  add(GateDef::composite("pt2cx", 3, std::move(marg)));

  pt_equiv_["mcx_2"] = "pt2cx";
}

GatePtr GateLibrary::add(GatePtr g) {
  std::lock_guard<std::mutex> lk(mu_);
  auto [it, inserted] = gates_.emplace(g->name(), g);
  if (!inserted && it->second != g)
    throw ValidationError("gate name already registered: " + g->name());
  return it->second;
}

GatePtr GateLibrary::get(const std::string& name) const {
  auto g = find(name);
  if (!g) throw ValidationError("unknown gate: " + name);
  return *g;
}

std::optional<GatePtr> GateLibrary::find(const std::string& name) const {
  std::lock_guard<std::mutex> lk(mu_);
  auto it = gates_.find(name);
  if (it == gates_.end()) return std::nullopt;
  return it->second;
}

GatePtr GateLibrary::mcx(int controls) {
  if (controls < 1) throw ValidationError("mcx needs at least one control");
  if (controls == 1) return get("cx");
  if (controls + 1 > kMaxBuiltinWires)
    throw WidthCapError("mcx with " + std::to_string(controls) +
                        " controls exceeds the builtin width cap");
  const std::string name = "mcx_" + std::to_string(controls);
  if (auto g = find(name)) return *g;
  auto g = GateDef::builtin(name, mcx_matrix(controls));
  const_cast<GateDef*>(g.get())->set_axioms(true,
                                            control_target_axioms(controls));
  return add(g);
}

GatePtr GateLibrary::mcz(int controls) {
  if (controls < 1) throw ValidationError("mcz needs at least one control");
  if (controls == 1) return get("cz");
  if (controls + 1 > kMaxBuiltinWires)
    throw WidthCapError("mcz with " + std::to_string(controls) +
                        " controls exceeds the builtin width cap");
  const std::string name = "mcz_" + std::to_string(controls);
  if (auto g = find(name)) return *g;
  auto g = GateDef::builtin(name, mcz_matrix(controls));
  const_cast<GateDef*>(g.get())->set_axioms(
      true, std::vector<std::optional<bool>>(controls + 1, true));
  return add(g);
}

GatePtr GateLibrary::ry(double theta) {
  const std::string name = ry_name(theta);
  if (auto g = find(name)) return *g;
  return add(GateDef::builtin(name, ry_matrix(theta)));
}

std::optional<GatePtr> GateLibrary::resolve(const std::string& name) {
  if (auto g = find(name)) return g;
  if (name.rfind("ry(", 0) == 0 && name.back() == ')') {
    try {
      return ry(std::stod(name.substr(3, name.size() - 4)));
    } catch (const std::invalid_argument&) {
      return std::nullopt;
    }
  }
  for (const char* prefix : {"mcx_", "mcz_"}) {
    if (name.rfind(prefix, 0) == 0) {
      try {
        const int k = std::stoi(name.substr(4));
        if (k < 2) return std::nullopt;
        return name[2] == 'x' ? mcx(k) : mcz(k);
      } catch (const std::exception&) {
        return std::nullopt;
      }
    }
  }
  return std::nullopt;
}

void GateLibrary::register_gate(GatePtr g) { add(std::move(g)); }

std::optional<GatePtr> GateLibrary::pt_equivalent(
    const std::string& gate_name) const {
  std::string target;
  {
    std::lock_guard<std::mutex> lk(mu_);
    auto it = pt_equiv_.find(gate_name);
    if (it == pt_equiv_.end()) return std::nullopt;
    target = it->second;
  }
  return find(target);
}

std::map<std::string, GatePtr> GateLibrary::gates() const {
  std::lock_guard<std::mutex> lk(mu_);
  return gates_;
}

std::shared_ptr<GateLibrary> default_library() {
  return std::make_shared<GateLibrary>();
}

// ----------------------------------------------------------------------
// inverse_gate

GatePtr inverse_gate(const GatePtr& g) {
  if (!g) throw ValidationError("inverse of null gate");
  if (auto cached = g->cached_inverse()) return cached;

  GatePtr inv;
  if (g->body() == GateDef::Body::Builtin) {
    const ComplexMatrix& u = g->builtin_unitary();
    ComplexMatrix ud = dagger(u);
    if (max_abs_diff(u, ud) < kExactTol) {
      inv = g;
    } else {
      inv = GateDef::builtin(toggle_dg(g->name()), std::move(ud));
      // The dagger preserves both qfreeness and per-qubit permeability.
      std::vector<std::optional<bool>> perm;
      for (int i = 0; i < g->arity(); ++i)
        perm.push_back(g->permeable_axiom(i));
      bool any = false;
      for (const auto& p : perm) any = any || p.has_value();
      const_cast<GateDef*>(inv.get())->set_axioms(
          g->qfree_axiom(), any ? perm : std::vector<std::optional<bool>>{});
    }
  } else {
    std::vector<Instruction> def;
    const auto& orig = g->definition();
    for (auto it = orig.rbegin(); it != orig.rend(); ++it) {
      switch (it->kind) {
        case Instruction::Kind::Apply:
          def.push_back(
              Instruction::apply(inverse_gate(it->gate), it->operands));
          break;
        // Reversal turns a temporary's lifetime inside out.
        case Instruction::Kind::Alloc:
          def.push_back(Instruction::dealloc(it->qubit));
          break;
        case Instruction::Kind::Dealloc:
          def.push_back(Instruction::alloc(it->qubit));
          break;
      }
    }
    inv = GateDef::composite(toggle_dg(g->name()), g->arity(), std::move(def),
                             g->body());
  }

  g->store_inverse(inv);
  if (inv != g) inv->store_inverse(g);
  return g->cached_inverse();
}

}  // namespace unqc
