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

#include "unqc/analysis.hpp"
#include "unqc/ir.hpp"

namespace unqc {

// Target edges thread each qubit's value history from Init toward Term;
// Permeable edges attach readers to the value node they observe. Readers of
// the same value carry no mutual ordering, which is what gives inserted
// inverses their placement freedom.
enum class EdgeKind { Target, Permeable };

struct DagNode {
  enum class Kind { Init, Gate, Term };

  Kind kind = Kind::Gate;
  int id = -1;
  int qubit = -1;     // Init / Term
  bool unchecked = false;  // Term
  GatePtr gate;
  std::vector<int> operands;
  std::vector<EdgeKind> operand_kinds;  // per operand position
  std::vector<int> value_in;  // producer node whose value each operand read

  // Position in the source circuit, or -1 for nodes inserted afterwards;
  // inserted nodes carry a monotone insertion sequence instead.
  long orig_index = -1;
  long insert_seq = -1;
};

struct DagEdge {
  int from;
  int to;
  int qubit;
  EdgeKind kind;
};

enum class TieBreak { AscendingIndex, DescendingIndex };

/**
 * Circuit DAG with permeability-typed edges.
 *
 * Construction consults the analysis module once per gate operand; a gate
 * whose permeability is unknown (width cap) aborts the build with
 * AnalysisUnavailable.
 *
 * Linearization emits a topological order. Beyond the stored edges it
 * enforces the two implicit constraint families that keep the order
 * semantically faithful: every reader of a value precedes that value's next
 * writer, and a qubit's Term precedes the Init of its next liveness
 * interval.
 */
class UncomputeDag {
 public:
  struct Value {
    int producer;  // Init or Gate node whose output this value is
    std::vector<int> readers;
    int next_writer = -1;  // Gate or Term node, -1 while this is the tail
  };

  struct Interval {
    int init_node = -1;
    std::vector<Value> values;  // values[0] is the Init output
    int term_node = -1;
  };

  static UncomputeDag build(const Circuit& c, const AnalysisConfig& cfg = {});

  const std::vector<DagNode>& nodes() const { return nodes_; }
  const std::vector<DagEdge>& edges() const { return edges_; }
  int num_qubits() const { return static_cast<int>(intervals_.size()); }
  const std::vector<Interval>& intervals(int qubit) const;

  // Whether `producer`'s value on `qubit` is still the readable tail at the
  // end of the circuit.
  bool value_is_current(int qubit, int producer) const;

  // Gate nodes that wrote `qubit` within `producer`'s interval, in order,
  // up to and including the producer itself (empty when the value is the
  // Init output).
  std::vector<int> producer_chain(int qubit, int producer) const;

  /**
   * Insert the inverse of an existing gate node. Target operands splice at
   * the tail of their qubit's chain; permeable operands re-read exactly the
   * value nodes the original read. Throws ValueUnavailable when no valid
   * schedule admits the insertion (the required value's window is already
   * closed off).
   */
  int insert_inverse(int gate_node);

  int insert_term(int qubit, bool unchecked = false);

  // `order`, when given, receives the node id behind each emitted
  // instruction (aligned with the returned circuit's instruction list).
  Circuit linearize(TieBreak tb = TieBreak::AscendingIndex,
                    std::vector<int>* order = nullptr) const;

  std::string to_dot() const;

 private:
  UncomputeDag() = default;

  int add_node(DagNode n);
  Interval& open_interval(int qubit);
  const Value& find_value(int qubit, int producer) const;
  Value& find_value(int qubit, int producer);
  std::vector<std::vector<int>> full_adjacency() const;
  bool reaches(const std::vector<std::vector<int>>& adj, int from,
               const std::vector<int>& targets) const;

  bool preallocated_ = false;
  std::vector<DagNode> nodes_;
  std::vector<DagEdge> edges_;
  std::vector<std::vector<Interval>> intervals_;  // per qubit
  long next_insert_seq_ = 0;
};

}  // namespace unqc
