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

#include "unqc/uncompute.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>

#include "unqc/sim.hpp"

namespace unqc {

namespace {

bool contains(const std::vector<int>& v, int x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

void insert_sorted(std::vector<int>& v, int x) {
  v.insert(std::upper_bound(v.begin(), v.end(), x), x);
}

}  // namespace

Session::Session(SessionConfig cfg, std::shared_ptr<GateLibrary> lib)
    : cfg_(cfg), lib_(lib ? std::move(lib) : default_library()) {}

QuantumVariable& Session::live_variable(const std::string& name) {
  auto it = vars_.find(name);
  if (it == vars_.end())
    throw ValidationError("unknown variable: '" + name + "'");
  if (!it->second.allocated)
    throw ValidationError("variable '" + name + "' was already deleted");
  return it->second;
}

int Session::take_pool_id(std::vector<int>& pool, int& fresh) const {
  if (!pool.empty()) {
    const int q = pool.front();
    pool.erase(pool.begin());
    return q;
  }
  return fresh++;
}

void Session::release_qubits(const std::vector<int>& qubits) {
  for (int q : qubits) {
    owner_.erase(q);
    insert_sorted(free_pool_, q);
    freed_log_.push_back(q);
  }
}

const QuantumVariable& Session::alloc(const std::string& name, int width) {
  if (width < 1)
    throw ValidationError("variable '" + name + "' needs a positive width");
  if (vars_.count(name))
    throw ValidationError("variable name already in use: '" + name + "'");
  QuantumVariable v;
  v.name = name;
  for (int i = 0; i < width; ++i) {
    const int q = take_pool_id(free_pool_, next_fresh_);
    circuit_.append(Instruction::alloc(q));
    owner_[q] = name;
    v.qubits.push_back(q);
  }
  order_.push_back(name);
  if (!auto_stack_.empty()) auto_stack_.back().push_back(name);
  return vars_.emplace(name, std::move(v)).first->second;
}

void Session::apply(const GatePtr& g, const std::vector<int>& qubits) {
  if (!g) throw ValidationError("null gate");
  circuit_.append(Instruction::apply(g, qubits));
}

void Session::apply(const std::string& gate_name,
                    const std::vector<int>& qubits) {
  auto g = lib_->resolve(gate_name);
  if (!g) throw ValidationError("unknown gate: " + gate_name);
  apply(*g, qubits);
}

bool Session::has_variable(const std::string& name) const {
  return vars_.count(name) != 0;
}

const QuantumVariable& Session::variable(const std::string& name) const {
  auto it = vars_.find(name);
  if (it == vars_.end())
    throw ValidationError("unknown variable: '" + name + "'");
  return it->second;
}

std::vector<std::string> Session::surviving_variables() const {
  std::vector<std::string> out;
  for (const auto& name : order_)
    if (vars_.at(name).allocated) out.push_back(name);
  return out;
}

// ----------------------------------------------------------------------
// Uncomputation pass

std::vector<int> Session::computing_nodes(const UncomputeDag& dag,
                                          const QuantumVariable& v,
                                          const std::string& name) const {
  std::vector<int> comp;
  for (int q : v.qubits) {
    const auto& intervals = dag.intervals(q);
    const auto& last = intervals.back();
    for (const auto& val : last.values)
      if (dag.nodes()[val.producer].kind == DagNode::Kind::Gate)
        comp.push_back(val.producer);
  }
  std::sort(comp.begin(), comp.end());
  comp.erase(std::unique(comp.begin(), comp.end()), comp.end());

  for (int id : comp) {
    const DagNode& n = dag.nodes()[id];
    const auto qf = qfree_verdict(*n.gate, cfg_.analysis);
    if (!qf)
      throw UncomputeError(
          UncomputeError::Reason::AnalysisUnavailable,
          "cannot uncompute variable '" + name + "': qfree-ness of gate '" +
              n.gate->name() + "' is unknown (width cap)");
    if (!*qf) {
      int written = -1;
      for (std::size_t pos = 0; pos < n.operands.size(); ++pos)
        if (n.operand_kinds[pos] == EdgeKind::Target &&
            contains(v.qubits, n.operands[pos]))
          written = n.operands[pos];
      throw UncomputeError(
          UncomputeError::Reason::NonQfree,
          "cannot uncompute variable '" + name + "': gate '" +
              n.gate->name() + "' writing qubit " + std::to_string(written) +
              " is not qfree");
    }
    for (std::size_t pos = 0; pos < n.operands.size(); ++pos) {
      const int q = n.operands[pos];
      if (contains(v.qubits, q)) continue;
      if (n.operand_kinds[pos] == EdgeKind::Target) {
        const auto it = owner_.find(q);
        const std::string of =
            it != owner_.end() ? " of variable '" + it->second + "'" : "";
        throw UncomputeError(
            UncomputeError::Reason::EntangledTargets,
            "cannot uncompute variable '" + name + "': gate '" +
                n.gate->name() + "' also writes qubit " + std::to_string(q) +
                of + "; joint uncomputation is not supported");
      }
    }
  }
  return comp;
}

int Session::substitute_pairs(
    Circuit& c,
    const std::vector<std::pair<std::size_t, std::size_t>>& pair_positions) {
  std::map<std::size_t, Instruction> repl;
  int count = 0;
  for (const auto& [po, pi] : pair_positions) {
    const Instruction& orig = c[po];
    const Instruction& inv = c[pi];
    if (orig.operands != inv.operands) continue;
    const auto pt = lib_->pt_equivalent(orig.gate->name());
    if (!pt) continue;

    // The phases of a phase-tolerant pair cancel only if the basis values
    // of its operands are untouched in between: every instruction in the
    // window that acts on a pair qubit must act permeably on it.
    bool ok = true;
    for (std::size_t k = po + 1; k < pi && ok; ++k) {
      const Instruction& mid = c[k];
      if (mid.kind == Instruction::Kind::Apply) {
        for (std::size_t mp = 0; mp < mid.operands.size() && ok; ++mp) {
          if (!contains(orig.operands, mid.operands[mp])) continue;
          try {
            if (!is_permeable(*mid.gate, static_cast<int>(mp), cfg_.analysis))
              ok = false;
          } catch (const WidthCapError&) {
            ok = false;
          }
        }
      } else if (contains(orig.operands, mid.qubit)) {
        ok = false;
      }
    }
    if (!ok) continue;

    repl.emplace(po, Instruction::apply(*pt, orig.operands));
    repl.emplace(pi, Instruction::apply(inverse_gate(*pt), inv.operands));
    ++count;
  }
  if (repl.empty()) return 0;

  Circuit out =
      c.wires_preallocated() ? Circuit(c.preallocated_wires()) : Circuit();
  for (std::size_t i = 0; i < c.size(); ++i) {
    const auto it = repl.find(i);
    out.append(it == repl.end() ? c[i] : it->second);
  }
  c = std::move(out);
  return count;
}

UncomputeReport Session::uncompute_inline(QuantumVariable& v) {
  UncomputeDag dag = UncomputeDag::build(circuit_, cfg_.analysis);
  const std::vector<int> comp = computing_nodes(dag, v, v.name);

  std::vector<std::pair<int, int>> pairs;  // (original node, inverse node)
  for (auto it = comp.rbegin(); it != comp.rend(); ++it)
    pairs.emplace_back(*it, dag.insert_inverse(*it));
  for (int q : v.qubits) dag.insert_term(q);

  std::vector<int> order;
  Circuit lin = dag.linearize(TieBreak::AscendingIndex, &order);
  std::vector<std::size_t> pos_of(dag.nodes().size(), 0);
  for (std::size_t i = 0; i < order.size(); ++i) pos_of[order[i]] = i;
  std::vector<std::pair<std::size_t, std::size_t>> pair_pos;
  for (const auto& [o, i] : pairs) pair_pos.emplace_back(pos_of[o], pos_of[i]);

  const int subs = cfg_.pt_substitution ? substitute_pairs(lin, pair_pos) : 0;

  circuit_ = std::move(lin);
  v.allocated = false;
  release_qubits(v.qubits);
  pt_total_ += subs;
  strategy_label_ = "inline";

  UncomputeReport rep;
  rep.strategy = Strategy::Inline;
  rep.inserted_gates = static_cast<int>(pairs.size());
  rep.pt_substitutions = subs;
  rep.freed_qubits = v.qubits;
  return rep;
}

UncomputeReport Session::uncompute_revert(QuantumVariable& v) {
  const UncomputeDag dag = UncomputeDag::build(circuit_, cfg_.analysis);
  const std::vector<int> comp = computing_nodes(dag, v, v.name);

  Circuit work = circuit_;
  std::vector<int> pool = free_pool_;
  int fresh = next_fresh_;
  std::map<std::pair<int, int>, int> memo;  // (qubit, producer) -> new id
  struct Temp {
    int qubit;
    std::vector<Instruction> replay;
  };
  std::vector<Temp> temps;
  int replayed = 0;
  const auto in_var = [&](int q) { return contains(v.qubits, q); };

  // Makes the value `producer` wrote on `qubit` readable at the end of the
  // circuit: the qubit itself when the value is still current, otherwise a
  // fresh qubit onto which the producing chain is replayed.
  std::function<int(int, int)> materialize = [&](int qubit,
                                                 int producer) -> int {
    if (dag.value_is_current(qubit, producer)) return qubit;
    const auto key = std::make_pair(qubit, producer);
    if (const auto it = memo.find(key); it != memo.end()) return it->second;

    const std::vector<int> chain = dag.producer_chain(qubit, producer);
    const int nq = take_pool_id(pool, fresh);
    work.append(Instruction::alloc(nq));
    Temp t{nq, {}};
    for (int cid : chain) {
      const DagNode& cn = dag.nodes()[cid];
      const auto qf = qfree_verdict(*cn.gate, cfg_.analysis);
      if (!qf)
        throw UncomputeError(
            UncomputeError::Reason::AnalysisUnavailable,
            "cannot uncompute variable '" + v.name +
                "': qfree-ness of gate '" + cn.gate->name() +
                "' is unknown (width cap)");
      if (!*qf)
        throw UncomputeError(
            UncomputeError::Reason::ValueUnavailable,
            "cannot uncompute variable '" + v.name + "': the value of qubit " +
                std::to_string(qubit) +
                " must be recomputed but its producer '" + cn.gate->name() +
                "' is not qfree");
      std::vector<int> ops(cn.operands.size());
      for (std::size_t pos = 0; pos < cn.operands.size(); ++pos) {
        const int oq = cn.operands[pos];
        if (cn.operand_kinds[pos] == EdgeKind::Target) {
          if (oq != qubit)
            throw UncomputeError(
                UncomputeError::Reason::ValueUnavailable,
                "cannot uncompute variable '" + v.name +
                    "': recomputing the value of qubit " +
                    std::to_string(qubit) + " would also rewrite qubit " +
                    std::to_string(oq));
          ops[pos] = nq;
        } else if (in_var(oq)) {
          // By the time the replay would run, the variable's own qubits are
          // being rolled back and no longer hold the value the producer read.
          throw UncomputeError(
              UncomputeError::Reason::ValueUnavailable,
              "cannot uncompute variable '" + v.name +
                  "': recomputing the value of qubit " +
                  std::to_string(qubit) + " would read the variable itself");
        } else {
          ops[pos] = materialize(oq, cn.value_in[pos]);
        }
      }
      Instruction ins = Instruction::apply(cn.gate, ops);
      work.append(ins);
      t.replay.push_back(std::move(ins));
      ++replayed;
    }
    memo[key] = nq;
    temps.push_back(std::move(t));
    return nq;
  };

  std::vector<std::pair<std::size_t, std::size_t>> pair_pos;
  int inserted = 0;
  for (auto it = comp.rbegin(); it != comp.rend(); ++it) {
    const DagNode& n = dag.nodes()[*it];
    std::vector<int> ops(n.operands.size());
    for (std::size_t pos = 0; pos < n.operands.size(); ++pos) {
      const int q = n.operands[pos];
      ops[pos] = in_var(q) || n.operand_kinds[pos] == EdgeKind::Target
                     ? q
                     : materialize(q, n.value_in[pos]);
    }
    work.append(Instruction::apply(inverse_gate(n.gate), ops));
    ++inserted;
    if (ops == n.operands)
      pair_pos.emplace_back(static_cast<std::size_t>(n.orig_index),
                            work.size() - 1);
  }

  // Un-replay in reverse completion order: a later temporary may read an
  // earlier one, so it is rolled back first, while the values it read are
  // still intact.
  for (auto t = temps.rbegin(); t != temps.rend(); ++t) {
    for (auto ins = t->replay.rbegin(); ins != t->replay.rend(); ++ins) {
      work.append(Instruction::apply(inverse_gate(ins->gate), ins->operands));
      ++inserted;
    }
    work.append(Instruction::dealloc(t->qubit));
  }
  for (int q : v.qubits) work.append(Instruction::dealloc(q));

  const int subs = cfg_.pt_substitution ? substitute_pairs(work, pair_pos) : 0;

  circuit_ = std::move(work);
  v.allocated = false;
  free_pool_ = std::move(pool);
  next_fresh_ = fresh;
  for (const auto& t : temps) insert_sorted(free_pool_, t.qubit);
  release_qubits(v.qubits);
  pt_total_ += subs;
  strategy_label_ = "revert";

  UncomputeReport rep;
  rep.strategy = Strategy::Revert;
  rep.inserted_gates = inserted;
  rep.replayed_gates = replayed;
  rep.pt_substitutions = subs;
  rep.freed_qubits = v.qubits;
  return rep;
}

UncomputeReport Session::uncompute(const std::string& name,
                                   Strategy strategy) {
  QuantumVariable& v = live_variable(name);
  return strategy == Strategy::Inline ? uncompute_inline(v)
                                      : uncompute_revert(v);
}

// ----------------------------------------------------------------------
// delete / wrap / auto scopes

void Session::delete_variable(const std::string& name, bool unchecked) {
  QuantumVariable& v = live_variable(name);

  std::map<int, std::size_t> last_alloc;
  for (std::size_t i = 0; i < circuit_.size(); ++i)
    if (circuit_[i].kind == Instruction::Kind::Alloc &&
        contains(v.qubits, circuit_[i].qubit))
      last_alloc[circuit_[i].qubit] = i;
  bool touched = false;
  for (std::size_t i = 0; i < circuit_.size() && !touched; ++i) {
    const Instruction& ins = circuit_[i];
    if (ins.kind != Instruction::Kind::Apply) continue;
    for (int q : ins.operands)
      if (contains(v.qubits, q) && i > last_alloc[q]) touched = true;
  }
  if (touched && !unchecked)
    throw DeleteError("variable '" + name +
                      "' is not provably |0>; uncompute it first or delete "
                      "it unchecked");

  for (int q : v.qubits) circuit_.append(Instruction::dealloc(q, touched));
  v.allocated = false;
  release_qubits(v.qubits);
}

GatePtr gate_wrap(GateLibrary& lib, const Circuit& definition,
                  const std::string& name, const AnalysisConfig& cfg) {
  if (!definition.wires_preallocated())
    throw WrapError(
        "gate definitions are built over pre-wired local circuits");
  const int k = definition.preallocated_wires();

  GatePtr g;
  try {
    g = GateDef::composite(name, k, definition.instructions(),
                           GateDef::Body::Wrapped);
  } catch (const ValidationError& e) {
    throw WrapError(e.what());
  }

  if (definition.num_qubits() > k) {
    // Internal temporaries must come back to |0> for every basis input of
    // the operand wires, otherwise the wrapped gate is not a unitary on
    // them. The checked deallocations inside apply() enforce exactly that.
    if (k > cfg.width_cap)
      throw WidthCapError("cannot verify internal wires of '" + name + "': " +
                          std::to_string(k) +
                          " operand wires exceed the width cap");
    std::vector<int> wires(k);
    std::iota(wires.begin(), wires.end(), 0);
    for (std::size_t x = 0; x < (std::size_t{1} << k); ++x) {
      Statevector sv;
      for (int w = 0; w < k; ++w)
        sv.alloc_wire(w, ((x >> (k - 1 - w)) & 1) != 0,
                      definition.num_qubits() + 1);
      try {
        sv.apply(*g, wires);
      } catch (const ProjectionError& e) {
        std::string bits(k, '0');
        for (int w = 0; w < k; ++w)
          if ((x >> (k - 1 - w)) & 1) bits[w] = '1';
        throw WrapError(std::string(e.what()) + " for basis input " + bits);
      }
    }
  }

  lib.register_gate(g);
  return g;
}

GatePtr Session::wrap(const Circuit& definition, const std::string& name) {
  return gate_wrap(*lib_, definition, name, cfg_.analysis);
}

void Session::begin_auto_scope() { auto_stack_.emplace_back(); }

void Session::abandon_auto_scope() {
  if (auto_stack_.empty())
    throw ValidationError("no auto-uncompute scope is open");
  std::vector<std::string> scope = std::move(auto_stack_.back());
  auto_stack_.pop_back();
  if (!auto_stack_.empty())
    auto_stack_.back().insert(auto_stack_.back().end(), scope.begin(),
                              scope.end());
}

std::vector<UncomputeReport> Session::end_auto_scope(
    const std::vector<std::string>& returned, Strategy strategy) {
  if (auto_stack_.empty())
    throw ValidationError("no auto-uncompute scope is open");
  const std::vector<std::string> scope = std::move(auto_stack_.back());
  auto_stack_.pop_back();

  std::set<std::string> keep;
  for (const auto& r : returned) {
    if (!vars_.count(r))
      throw ValidationError("scope returns unknown variable: '" + r + "'");
    keep.insert(r);
  }
  if (!auto_stack_.empty())
    for (const auto& n : scope)
      if (keep.count(n)) auto_stack_.back().push_back(n);

  std::vector<UncomputeReport> reports;
  for (auto it = scope.rbegin(); it != scope.rend(); ++it) {
    if (keep.count(*it)) continue;
    if (!vars_.at(*it).allocated) continue;  // handled inside the scope
    try {
      reports.push_back(uncompute(*it, strategy));
    } catch (const UncomputeError& e) {
      throw UncomputeError(e.reason(), "auto-uncompute of variable '" + *it +
                                           "': " + e.what());
    }
  }
  return reports;
}

// ----------------------------------------------------------------------
// Reporting

CompileStats Session::stats() const {
  CompileStats st;
  st.qubits = circuit_.num_qubits();
  for (const Instruction& ins : circuit_.instructions()) {
    if (ins.kind != Instruction::Kind::Apply) continue;
    const std::string& name = ins.gate->name();
    ++st.gate_counts[name];
    if (name == "cx" || name == "pt2cx" || name == "pt2cx_dg" ||
        name.rfind("mcx_", 0) == 0)
      ++st.mcx_count;
  }
  st.freed_qubits = freed_log_;
  st.pt_substitutions = pt_total_;
  st.strategy = strategy_label_;
  return st;
}

std::string Session::dag_dot() const {
  return UncomputeDag::build(circuit_, cfg_.analysis).to_dot();
}

}  // namespace unqc
