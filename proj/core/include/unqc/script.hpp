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

#include <optional>
#include <string>
#include <vector>

#include "unqc/uncompute.hpp"

namespace unqc {

/**
 * A tiny line-oriented language over Session:
 *
 *   qvar a 1                 # allocate a named variable
 *   qvar t 1
 *   gate h a.0               # apply a gate; name.i selects qubit i (0 = MSB)
 *   gate cx a.0 t.0          # a bare name expands to all qubits in order
 *
 *   wrap toffoli {           # register the body as one composite gate and
 *     gate ry(pi/4) t.0      # apply it; local wires are numbered by first
 *     gate cx b.0 t.0        # use, so `gate toffoli a b t` reuses it later
 *     ...
 *   }
 *
 *   uncompute t              # inline strategy unless overridden
 *   uncompute t revert
 *
 *   auto {                   # auto-uncompute scope: everything allocated
 *     qvar tmp 1             # inside and not returned is uncomputed in
 *     ...                    # reverse allocation order at the brace
 *     return out
 *   }
 *
 * `#` starts a comment. Angles accept decimals or pi fractions with no
 * embedded spaces: pi, -pi/4, 3pi/4, 0.25pi, 1.5707963267948966.
 */

struct OperandRef {
  std::string var;
  int index = -1;  // -1 selects the whole variable
};

struct Statement {
  enum class Kind { QVar, Gate, Wrap, Uncompute, Auto };
  Kind kind = Kind::Gate;
  int line = 0;  // 1-based source line

  std::string name;  // variable (QVar/Uncompute), gate (Gate), new gate (Wrap)
  int width = 0;     // QVar
  std::vector<OperandRef> operands;   // Gate
  std::vector<Statement> body;        // Wrap (gate lines only) / Auto
  std::vector<std::string> returned;  // Auto
  std::optional<Strategy> strategy;   // Uncompute modifier
};

// Parses source text into statements; throws ParseError carrying the
// 1-based line number.
std::vector<Statement> parse_script(const std::string& source);

// Runs the program against the session. `default_strategy` applies to
// uncompute statements without an explicit modifier and to auto scopes.
void execute(const std::vector<Statement>& program, Session& session,
             Strategy default_strategy = Strategy::Inline);

}  // namespace unqc
