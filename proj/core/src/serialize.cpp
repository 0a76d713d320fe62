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

#include "unqc/serialize.hpp"

#include "json.hpp"
#include "unqc/errors.hpp"

namespace unqc {

using json = nlohmann::ordered_json;

std::string circuit_to_json(const Circuit& c, int indent) {
  json out;
  out["qubits"] = c.num_qubits();
  if (c.wires_preallocated()) out["prewired"] = c.preallocated_wires();
  json list = json::array();
  for (const Instruction& ins : c.instructions()) {
    json j;
    switch (ins.kind) {
      case Instruction::Kind::Apply:
        j["op"] = "apply";
        j["gate"] = ins.gate->name();
        j["operands"] = ins.operands;
        break;
      case Instruction::Kind::Alloc:
        j["op"] = "alloc";
        j["qubit"] = ins.qubit;
        break;
      case Instruction::Kind::Dealloc:
        j["op"] = "dealloc";
        j["qubit"] = ins.qubit;
        if (ins.unchecked) j["unchecked"] = true;
        break;
    }
    list.push_back(std::move(j));
  }
  out["instructions"] = std::move(list);
  return out.dump(indent);
}

Circuit circuit_from_json(const std::string& text, GateLibrary& lib) {
  json in;
  try {
    in = json::parse(text);
  } catch (const json::exception& e) {
    throw ValidationError(std::string("circuit JSON: ") + e.what());
  }
  try {
    Circuit c = in.contains("prewired")
                    ? Circuit(in.at("prewired").get<int>())
                    : Circuit();
    for (const json& j : in.at("instructions")) {
      const std::string op = j.at("op").get<std::string>();
      if (op == "apply") {
        const std::string name = j.at("gate").get<std::string>();
        const auto g = lib.resolve(name);
        if (!g) throw ValidationError("circuit JSON: unknown gate: " + name);
        c.append(
            Instruction::apply(*g, j.at("operands").get<std::vector<int>>()));
      } else if (op == "alloc") {
        c.append(Instruction::alloc(j.at("qubit").get<int>()));
      } else if (op == "dealloc") {
        c.append(Instruction::dealloc(j.at("qubit").get<int>(),
                                      j.value("unchecked", false)));
      } else {
        throw ValidationError("circuit JSON: unknown op: " + op);
      }
    }
    return c;
  } catch (const json::exception& e) {
    throw ValidationError(std::string("circuit JSON: ") + e.what());
  }
}

std::string stats_to_json(const CompileStats& stats, int indent) {
  json out;
  out["qubits"] = stats.qubits;
  json counts = json::object();
  for (const auto& [name, n] : stats.gate_counts) counts[name] = n;
  out["gate_counts"] = std::move(counts);
  out["mcx_count"] = stats.mcx_count;
  out["freed_qubits"] = stats.freed_qubits;
  out["pt_substitutions"] = stats.pt_substitutions;
  out["strategy"] = stats.strategy;
  return out.dump(indent);
}

std::string histogram_to_json(const Histogram& h, int indent) {
  json out = json::object();
  for (const auto& [label, p] : h) out[label] = p;
  return out.dump(indent);
}

}  // namespace unqc
