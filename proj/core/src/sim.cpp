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

#include "unqc/sim.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace unqc {

bool Statevector::has_wire(int qubit) const {
  return std::find(wires_.begin(), wires_.end(), qubit) != wires_.end();
}

int Statevector::wire_pos(int qubit) const {
  for (std::size_t i = 0; i < wires_.size(); ++i)
    if (wires_[i] == qubit) return static_cast<int>(i);
  throw SimulationError("qubit " + std::to_string(qubit) +
                        " is not live in the statevector");
}

double Statevector::norm() const {
  double s = 0.0;
  for (const Complex& a : amps_) s += std::norm(a);
  return std::sqrt(s);
}

double Statevector::prob_one(int qubit) const {
  const int pos = wire_pos(qubit);
  const std::size_t mask = std::size_t{1} << (wires_.size() - 1 - pos);
  double p = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if (i & mask) p += std::norm(amps_[i]);
  return p;
}

void Statevector::alloc_wire(int qubit, bool one, int cap) {
  if (has_wire(qubit))
    throw SimulationError("qubit " + std::to_string(qubit) +
                          " allocated while live");
  if (num_wires() + 1 > cap)
    throw SimulationError("statevector would exceed the simulator cap of " +
                          std::to_string(cap) + " qubits");
  if (wires_.empty()) {
    wires_.push_back(qubit);
    amps_ = one ? std::vector<Complex>{{0.0, 0.0}, {1.0, 0.0}}
                : std::vector<Complex>{{1.0, 0.0}, {0.0, 0.0}};
    return;
  }
  // The new wire becomes the least significant bit.
  std::vector<Complex> next(amps_.size() * 2);
  for (std::size_t i = 0; i < amps_.size(); ++i)
    next[2 * i + (one ? 1 : 0)] = amps_[i];
  amps_ = std::move(next);
  wires_.push_back(qubit);
}

double Statevector::dealloc_wire(int qubit, double tol, bool unchecked) {
  const int pos = wire_pos(qubit);
  const std::size_t mask = std::size_t{1} << (wires_.size() - 1 - pos);
  double p_one = 0.0;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if (i & mask) p_one += std::norm(amps_[i]);

  if (!unchecked && p_one > tol)
    throw ProjectionError("qubit " + std::to_string(qubit) +
                          " deallocated with |1>-probability " +
                          std::to_string(p_one));
  const double keep = 1.0 - p_one;
  if (keep <= 0.0)
    throw ProjectionError("projection of qubit " + std::to_string(qubit) +
                          " annihilates the state");

  const double scale = 1.0 / std::sqrt(keep);
  std::vector<Complex> next(amps_.size() / 2);
  std::size_t j = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i)
    if (!(i & mask)) next[j++] = amps_[i] * scale;
  amps_ = std::move(next);
  wires_.erase(wires_.begin() + pos);
  return p_one;
}

void Statevector::apply(const GateDef& g, const std::vector<int>& qubits) {
  if (static_cast<int>(qubits.size()) != g.arity())
    throw SimulationError("gate '" + g.name() + "' expects " +
                          std::to_string(g.arity()) + " operands");
  if (g.body() == GateDef::Body::Builtin) {
    apply_matrix(g.builtin_unitary(), qubits);
    return;
  }
  // Composite and wrapped gates execute constituent-wise, so wide gate
  // bodies stay simulable regardless of the analysis width cap. Internal
  // temporary wires materialize as scratch wires on unused global ids and
  // are projected back out before the call returns.
  std::map<int, int> scratch;  // local temp wire -> global scratch wire
  auto global = [&](int w) {
    return w < g.arity() ? qubits[w] : scratch.at(w);
  };
  for (const Instruction& ins : g.definition()) {
    switch (ins.kind) {
      case Instruction::Kind::Alloc: {
        const int fresh =
            wires_.empty()
                ? 0
                : *std::max_element(wires_.begin(), wires_.end()) + 1;
        scratch[ins.qubit] = fresh;
        alloc_wire(fresh, false, num_wires() + 1);
        break;
      }
      case Instruction::Kind::Dealloc:
        try {
          dealloc_wire(scratch.at(ins.qubit), 1e-9, false);
        } catch (const ProjectionError&) {
          throw ProjectionError("internal wire " + std::to_string(ins.qubit) +
                                " of gate '" + g.name() +
                                "' not returned to |0>");
        }
        scratch.erase(ins.qubit);
        break;
      case Instruction::Kind::Apply: {
        std::vector<int> mapped(ins.operands.size());
        for (std::size_t i = 0; i < ins.operands.size(); ++i)
          mapped[i] = global(ins.operands[i]);
        apply(*ins.gate, mapped);
        break;
      }
    }
  }
}

void Statevector::apply_matrix(const ComplexMatrix& u,
                               const std::vector<int>& qubits) {
  const int k = static_cast<int>(qubits.size());
  const int n = num_wires();
  std::vector<std::size_t> mask(k);
  std::size_t all = 0;
  for (int j = 0; j < k; ++j) {
    mask[j] = std::size_t{1} << (n - 1 - wire_pos(qubits[j]));
    all |= mask[j];
  }
  const std::size_t ldim = std::size_t{1} << k;
  std::vector<std::size_t> offset(ldim, 0);
  for (std::size_t l = 0; l < ldim; ++l)
    for (int j = 0; j < k; ++j)
      if (l & (std::size_t{1} << (k - 1 - j))) offset[l] |= mask[j];

  std::vector<Complex> in(ldim), out(ldim);
  for (std::size_t base = 0; base < amps_.size(); ++base) {
    if (base & all) continue;
    for (std::size_t l = 0; l < ldim; ++l) in[l] = amps_[base | offset[l]];
    for (std::size_t r = 0; r < ldim; ++r) {
      Complex acc{};
      for (std::size_t c = 0; c < ldim; ++c) acc += u(r, c) * in[c];
      out[r] = acc;
    }
    for (std::size_t l = 0; l < ldim; ++l) amps_[base | offset[l]] = out[l];
  }
}

RunResult run(const Circuit& c, const RunOptions& opts) {
  RunResult res;
  std::vector<uint8_t> consumed(std::max<std::size_t>(
                                    opts.initial_bits.size(),
                                    static_cast<std::size_t>(c.num_qubits())),
                                0);
  auto initial_bit = [&](int q) {
    if (q < static_cast<int>(opts.initial_bits.size()) && !consumed[q]) {
      consumed[q] = 1;
      return opts.initial_bits[q] != 0;
    }
    return false;
  };

  if (c.wires_preallocated()) {
    for (int q = 0; q < c.preallocated_wires(); ++q)
      res.state.alloc_wire(q, initial_bit(q), opts.qubit_cap);
  }

  std::size_t idx = 0;
  for (const Instruction& ins : c.instructions()) {
    switch (ins.kind) {
      case Instruction::Kind::Alloc:
        res.state.alloc_wire(ins.qubit, initial_bit(ins.qubit),
                             opts.qubit_cap);
        break;
      case Instruction::Kind::Dealloc: {
        const bool unchecked = ins.unchecked && !opts.check_all_deallocs;
        const double p =
            res.state.dealloc_wire(ins.qubit, opts.dealloc_tol, unchecked);
        res.projections.push_back({idx, ins.qubit, p});
        break;
      }
      case Instruction::Kind::Apply:
        res.state.apply(*ins.gate, ins.operands);
        break;
    }
    ++idx;
  }
  return res;
}

ComplexMatrix unitary_of(const Circuit& c, int qubit_cap) {
  if (!c.wires_preallocated())
    throw SimulationError(
        "unitary extraction requires a pre-wired gate block");
  const int n = c.preallocated_wires();
  if (c.num_qubits() > qubit_cap)
    throw SimulationError("gate block exceeds the simulator cap");
  const std::size_t dim = std::size_t{1} << n;
  ComplexMatrix u(dim);
  for (std::size_t col = 0; col < dim; ++col) {
    RunOptions opts;
    opts.qubit_cap = qubit_cap;
    opts.initial_bits.resize(n);
    for (int q = 0; q < n; ++q)
      opts.initial_bits[q] = (col >> (n - 1 - q)) & 1;
    RunResult r = run(c, opts);
    for (std::size_t row = 0; row < dim; ++row)
      u(row, col) = r.state.amplitudes()[row];
  }
  return u;
}

Histogram histogram(const Statevector& state,
                    const std::vector<VariableBits>& groups) {
  constexpr double kPrune = 1e-12;
  const int n = state.num_wires();

  std::vector<std::vector<std::size_t>> masks(groups.size());
  for (std::size_t g = 0; g < groups.size(); ++g)
    for (int q : groups[g].qubits) {
      int pos = -1;
      for (int i = 0; i < n; ++i)
        if (state.wires()[i] == q) pos = i;
      if (pos < 0)
        throw SimulationError("histogram over dead qubit " +
                              std::to_string(q));
      masks[g].push_back(std::size_t{1} << (n - 1 - pos));
    }

  std::vector<double> probs;
  std::vector<std::string> labels;
  std::vector<long> index_of;  // dense map basis-pattern -> slot

  // Accumulate probabilities by the joint bit pattern of all groups.
  std::size_t bits_total = 0;
  for (const auto& m : masks) bits_total += m.size();
  index_of.assign(std::size_t{1} << bits_total, -1);

  for (std::size_t i = 0; i < state.amplitudes().size(); ++i) {
    const double p = std::norm(state.amplitudes()[i]);
    if (p == 0.0) continue;
    std::size_t pattern = 0;
    for (const auto& group_masks : masks)
      for (std::size_t m : group_masks)
        pattern = (pattern << 1) | ((i & m) ? 1 : 0);
    if (index_of[pattern] < 0) {
      index_of[pattern] = static_cast<long>(probs.size());
      probs.push_back(0.0);
      std::string label;
      std::size_t shift = bits_total;
      for (std::size_t g = 0; g < groups.size(); ++g) {
        if (g) label += ' ';
        label += groups[g].name;
        label += '=';
        for (std::size_t b = 0; b < masks[g].size(); ++b) {
          --shift;
          label += ((pattern >> shift) & 1) ? '1' : '0';
        }
      }
      labels.push_back(std::move(label));
    }
    probs[index_of[pattern]] += p;
  }

  // Deterministic order: ascending joint bit pattern.
  Histogram out;
  for (std::size_t pattern = 0; pattern < index_of.size(); ++pattern) {
    const long slot = index_of[pattern];
    if (slot >= 0 && probs[slot] >= kPrune)
      out.emplace_back(labels[slot], probs[slot]);
  }
  return out;
}

}  // namespace unqc
