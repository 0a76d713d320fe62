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

#include "unqc/dag.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <queue>
#include <sstream>
#include <tuple>

#include "unqc/errors.hpp"

namespace unqc {

namespace {

std::string node_label(const DagNode& n) {
  std::ostringstream os;
  switch (n.kind) {
    case DagNode::Kind::Init:
      os << "init q" << n.qubit;
      break;
    case DagNode::Kind::Term:
      os << "term q" << n.qubit;
      break;
    case DagNode::Kind::Gate:
      os << n.gate->name();
      for (std::size_t i = 0; i < n.operands.size(); ++i)
        os << (i == 0 ? " q" : ",q") << n.operands[i];
      break;
  }
  return os.str();
}

}  // namespace

int UncomputeDag::add_node(DagNode n) {
  n.id = static_cast<int>(nodes_.size());
  nodes_.push_back(std::move(n));
  return nodes_.back().id;
}

UncomputeDag::Interval& UncomputeDag::open_interval(int qubit) {
  if (qubit < 0 || qubit >= num_qubits())
    throw ValidationError("qubit " + std::to_string(qubit) +
                          " does not exist in the DAG");
  auto& iv = intervals_[qubit];
  if (iv.empty() || iv.back().term_node != -1)
    throw ValidationError("qubit " + std::to_string(qubit) +
                          " has no open liveness interval");
  return iv.back();
}

const UncomputeDag::Value& UncomputeDag::find_value(int qubit,
                                                    int producer) const {
  for (const auto& interval : intervals_.at(qubit))
    for (const auto& v : interval.values)
      if (v.producer == producer) return v;
  throw ValidationError("no value of qubit " + std::to_string(qubit) +
                        " produced by node " + std::to_string(producer));
}

UncomputeDag::Value& UncomputeDag::find_value(int qubit, int producer) {
  return const_cast<Value&>(
      static_cast<const UncomputeDag*>(this)->find_value(qubit, producer));
}

const std::vector<UncomputeDag::Interval>& UncomputeDag::intervals(
    int qubit) const {
  return intervals_.at(qubit);
}

bool UncomputeDag::value_is_current(int qubit, int producer) const {
  const auto& iv = intervals_.at(qubit);
  if (iv.empty()) return false;
  const Interval& last = iv.back();
  return last.term_node == -1 && !last.values.empty() &&
         last.values.back().producer == producer;
}

std::vector<int> UncomputeDag::producer_chain(int qubit, int producer) const {
  for (const auto& interval : intervals_.at(qubit)) {
    std::vector<int> chain;
    for (const auto& v : interval.values) {
      if (nodes_[v.producer].kind == DagNode::Kind::Gate)
        chain.push_back(v.producer);
      if (v.producer == producer) return chain;
    }
  }
  throw ValidationError("no value of qubit " + std::to_string(qubit) +
                        " produced by node " + std::to_string(producer));
}

UncomputeDag UncomputeDag::build(const Circuit& c, const AnalysisConfig& cfg) {
  UncomputeDag d;
  d.preallocated_ = c.wires_preallocated();
  d.intervals_.resize(c.num_qubits());

  if (d.preallocated_) {
    // Synthetic Init per wire; negative orig_index keeps them ahead of every
    // instruction while preserving wire order.
    for (int q = 0; q < c.num_qubits(); ++q) {
      DagNode init;
      init.kind = DagNode::Kind::Init;
      init.qubit = q;
      init.orig_index = q - c.num_qubits();
      int id = d.add_node(init);
      d.intervals_[q].push_back(Interval{id, {Value{id, {}, -1}}, -1});
    }
  }

  for (std::size_t i = 0; i < c.size(); ++i) {
    const Instruction& ins = c[i];
    switch (ins.kind) {
      case Instruction::Kind::Alloc: {
        DagNode init;
        init.kind = DagNode::Kind::Init;
        init.qubit = ins.qubit;
        init.orig_index = static_cast<long>(i);
        if (ins.qubit >= static_cast<int>(d.intervals_.size()))
          d.intervals_.resize(ins.qubit + 1);
        int id = d.add_node(init);
        d.intervals_[ins.qubit].push_back(Interval{id, {Value{id, {}, -1}}, -1});
        break;
      }
      case Instruction::Kind::Dealloc: {
        Interval& interval = d.open_interval(ins.qubit);
        DagNode term;
        term.kind = DagNode::Kind::Term;
        term.qubit = ins.qubit;
        term.unchecked = ins.unchecked;
        term.orig_index = static_cast<long>(i);
        int id = d.add_node(term);
        Value& tail = interval.values.back();
        d.edges_.push_back(DagEdge{tail.producer, id, ins.qubit,
                                   EdgeKind::Target});
        tail.next_writer = id;
        interval.term_node = id;
        break;
      }
      case Instruction::Kind::Apply: {
        DagNode gate;
        gate.kind = DagNode::Kind::Gate;
        gate.gate = ins.gate;
        gate.operands = ins.operands;
        gate.orig_index = static_cast<long>(i);
        gate.operand_kinds.resize(ins.operands.size());
        gate.value_in.resize(ins.operands.size());
        for (std::size_t pos = 0; pos < ins.operands.size(); ++pos) {
          bool perm = false;
          try {
            perm = is_permeable(*ins.gate, static_cast<int>(pos), cfg);
          } catch (const WidthCapError&) {
            throw UncomputeError(
                UncomputeError::Reason::AnalysisUnavailable,
                "permeability of gate '" + ins.gate->name() + "' on operand " +
                    std::to_string(pos) +
                    " is unknown: unitary wider than the analysis cap");
          }
          gate.operand_kinds[pos] =
              perm ? EdgeKind::Permeable : EdgeKind::Target;
        }
        int id = d.add_node(gate);
        DagNode& n = d.nodes_[id];
        for (std::size_t pos = 0; pos < n.operands.size(); ++pos) {
          int q = n.operands[pos];
          Interval& interval = d.open_interval(q);
          Value& tail = interval.values.back();
          d.edges_.push_back(
              DagEdge{tail.producer, id, q, n.operand_kinds[pos]});
          n.value_in[pos] = tail.producer;
          if (n.operand_kinds[pos] == EdgeKind::Permeable) {
            tail.readers.push_back(id);
          } else {
            tail.next_writer = id;
            interval.values.push_back(Value{id, {}, -1});
          }
        }
        break;
      }
    }
  }
  return d;
}

std::vector<std::vector<int>> UncomputeDag::full_adjacency() const {
  std::vector<std::vector<int>> adj(nodes_.size());
  for (const auto& e : edges_) adj[e.from].push_back(e.to);
  for (const auto& per_qubit : intervals_) {
    for (std::size_t k = 0; k < per_qubit.size(); ++k) {
      const Interval& interval = per_qubit[k];
      // Readers of a value precede its next writer.
      for (const auto& v : interval.values)
        if (v.next_writer != -1)
          for (int r : v.readers) adj[r].push_back(v.next_writer);
      // A closed interval precedes the next one on the same qubit.
      if (k + 1 < per_qubit.size() && interval.term_node != -1)
        adj[interval.term_node].push_back(per_qubit[k + 1].init_node);
    }
  }
  return adj;
}

bool UncomputeDag::reaches(const std::vector<std::vector<int>>& adj, int from,
                           const std::vector<int>& targets) const {
  std::vector<char> want(nodes_.size(), 0);
  for (int t : targets) want[t] = 1;
  std::vector<char> seen(nodes_.size(), 0);
  std::deque<int> frontier{from};
  seen[from] = 1;
  while (!frontier.empty()) {
    int n = frontier.front();
    frontier.pop_front();
    if (want[n]) return true;
    for (int s : adj[n])
      if (!seen[s]) {
        seen[s] = 1;
        frontier.push_back(s);
      }
  }
  return false;
}

int UncomputeDag::insert_inverse(int gate_node) {
  const DagNode& orig = nodes_.at(gate_node);
  if (orig.kind != DagNode::Kind::Gate)
    throw ValidationError("insert_inverse expects a gate node");

  // The inverse acts permeably on exactly the operands the original did (a
  // unitary commutes with Z on a wire iff its inverse does), so the original
  // edge pattern is reused verbatim.
  GatePtr inv = inverse_gate(orig.gate);

  // Predecessors the new node must follow, and successors it must precede.
  std::vector<int> preds;
  std::vector<int> forced_succ;
  for (std::size_t pos = 0; pos < orig.operands.size(); ++pos) {
    int q = orig.operands[pos];
    if (orig.operand_kinds[pos] == EdgeKind::Permeable) {
      const Value& v = find_value(q, orig.value_in[pos]);
      preds.push_back(v.producer);
      if (v.next_writer != -1) forced_succ.push_back(v.next_writer);
    } else {
      const auto& iv = intervals_.at(q);
      if (iv.empty() || iv.back().term_node != -1)
        throw UncomputeError(
            UncomputeError::Reason::ValueUnavailable,
            "cannot insert inverse of '" + orig.gate->name() + "': qubit " +
                std::to_string(q) + " is no longer live");
      const Value& tail = iv.back().values.back();
      preds.push_back(tail.producer);
      for (int r : tail.readers) preds.push_back(r);
    }
  }

  auto adj = full_adjacency();
  for (int w : forced_succ) {
    if (reaches(adj, w, preds)) {
      // A later writer of a value the inverse must read already precedes one
      // of the inverse's mandatory predecessors: no topological order can
      // place the inverse inside the value's window.
      int bad_qubit = -1;
      for (std::size_t pos = 0; pos < orig.operands.size(); ++pos)
        if (orig.operand_kinds[pos] == EdgeKind::Permeable &&
            find_value(orig.operands[pos], orig.value_in[pos]).next_writer == w)
          bad_qubit = orig.operands[pos];
      throw UncomputeError(
          UncomputeError::Reason::ValueUnavailable,
          "cannot insert inverse of '" + orig.gate->name() + "': the value of qubit " +
              std::to_string(bad_qubit) +
              " it must read is no longer available");
    }
  }

  DagNode node;
  node.kind = DagNode::Kind::Gate;
  node.gate = inv;
  node.operands = orig.operands;
  node.operand_kinds = orig.operand_kinds;
  node.value_in.resize(orig.operands.size());
  node.insert_seq = next_insert_seq_++;
  int id = add_node(node);
  DagNode& n = nodes_[id];

  for (std::size_t pos = 0; pos < n.operands.size(); ++pos) {
    int q = n.operands[pos];
    if (n.operand_kinds[pos] == EdgeKind::Permeable) {
      Value& v = find_value(q, orig.value_in[pos]);
      edges_.push_back(DagEdge{v.producer, id, q, EdgeKind::Permeable});
      v.readers.push_back(id);
      n.value_in[pos] = v.producer;
    } else {
      Interval& interval = open_interval(q);
      Value& tail = interval.values.back();
      edges_.push_back(DagEdge{tail.producer, id, q, EdgeKind::Target});
      tail.next_writer = id;
      n.value_in[pos] = tail.producer;
      interval.values.push_back(Value{id, {}, -1});
    }
  }
  return id;
}

int UncomputeDag::insert_term(int qubit, bool unchecked) {
  Interval& interval = open_interval(qubit);
  DagNode term;
  term.kind = DagNode::Kind::Term;
  term.qubit = qubit;
  term.unchecked = unchecked;
  term.insert_seq = next_insert_seq_++;
  int id = add_node(term);
  Value& tail = interval.values.back();
  edges_.push_back(DagEdge{tail.producer, id, qubit, EdgeKind::Target});
  tail.next_writer = id;
  interval.term_node = id;
  return id;
}

Circuit UncomputeDag::linearize(TieBreak tb, std::vector<int>* order) const {
  if (order) order->clear();
  auto adj = full_adjacency();
  std::vector<int> indegree(nodes_.size(), 0);
  for (const auto& succs : adj)
    for (int s : succs) ++indegree[s];

  // Deterministic Kahn order: source-circuit nodes first by instruction
  // index, inserted nodes by insertion sequence (both flipped under the
  // descending tie-break).
  auto key = [tb](const DagNode& n) {
    long group = n.orig_index >= 0 || n.kind == DagNode::Kind::Init ? 0 : 1;
    long k = group == 0 ? n.orig_index : n.insert_seq;
    if (tb == TieBreak::DescendingIndex) k = -k;
    return std::make_tuple(group, k, static_cast<long>(n.id));
  };
  using Entry = std::tuple<long, long, long>;
  std::priority_queue<std::pair<Entry, int>, std::vector<std::pair<Entry, int>>,
                      std::greater<>>
      ready;
  for (const auto& n : nodes_)
    if (indegree[n.id] == 0) ready.push({key(n), n.id});

  Circuit out = preallocated_ ? Circuit(num_qubits()) : Circuit();
  std::size_t emitted = 0;
  while (!ready.empty()) {
    int id = ready.top().second;
    ready.pop();
    ++emitted;
    const DagNode& n = nodes_[id];
    switch (n.kind) {
      case DagNode::Kind::Init:
        // Synthetic inits of pre-wired circuits emit nothing; inits that
        // came from real Alloc instructions (session circuits, temporary
        // wires) re-emit them.
        if (!(preallocated_ && n.orig_index < 0)) {
          out.append(Instruction::alloc(n.qubit));
          if (order) order->push_back(id);
        }
        break;
      case DagNode::Kind::Term:
        out.append(Instruction::dealloc(n.qubit, n.unchecked));
        if (order) order->push_back(id);
        break;
      case DagNode::Kind::Gate:
        out.append(Instruction::apply(n.gate, n.operands));
        if (order) order->push_back(id);
        break;
    }
    for (int s : adj[id])
      if (--indegree[s] == 0) ready.push({key(nodes_[s]), s});
  }
  if (emitted != nodes_.size())
    throw ValidationError("internal error: circuit DAG contains a cycle");
  return out;
}

std::string UncomputeDag::to_dot() const {
  std::ostringstream os;
  os << "digraph circuit {\n  rankdir=LR;\n";
  for (const auto& n : nodes_) {
    const char* shape = n.kind == DagNode::Kind::Gate ? "box" : "ellipse";
    os << "  n" << n.id << " [label=\"" << node_label(n) << "\" shape="
       << shape << "];\n";
  }
  for (const auto& e : edges_) {
    os << "  n" << e.from << " -> n" << e.to << " [label=\"q" << e.qubit
       << "\"";
    if (e.kind == EdgeKind::Permeable) os << " style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace unqc
