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

#include <stdexcept>
#include <string>
#include <utility>

namespace unqc {

/**
 * Base class for all library errors.
 *
 * `kind()` is a stable machine-readable tag; the CLI prints every failure as
 * a single line `ERROR:<kind>: <message>` so callers can dispatch on it.
 */
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& msg)
      : std::runtime_error(msg), kind_(std::move(kind)) {}

  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

// Mismatched or non-power-of-two matrix dimensions.
class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& msg) : Error("Dimension", msg) {}
};

// Circuit invariant violation; carries the index of the offending
// instruction (-1 when the violation is not tied to a single instruction).
class ValidationError : public Error {
 public:
  ValidationError(const std::string& msg, long instruction_index = -1)
      : Error("Validation", msg), index_(instruction_index) {}

  long instruction_index() const noexcept { return index_; }

 private:
  long index_;
};

// Unitary synthesis refused because the gate is wider than the analysis cap.
class WidthCapError : public Error {
 public:
  explicit WidthCapError(const std::string& msg) : Error("WidthCap", msg) {}
};

// A matrix fails a permeability precondition (block decomposition, theorem
// preconditions). Distinct from a commutation check returning false.
class NotPermeableError : public Error {
 public:
  explicit NotPermeableError(const std::string& msg)
      : Error("NotPermeable", msg) {}
};

class SimulationError : public Error {
 public:
  explicit SimulationError(const std::string& msg)
      : Error("Simulation", msg) {}

 protected:
  SimulationError(const std::string& kind, const std::string& msg)
      : Error(kind, msg) {}
};

// A checked deallocation hit a qubit with |1>-probability above tolerance.
class ProjectionError : public SimulationError {
 public:
  explicit ProjectionError(const std::string& msg)
      : SimulationError("Projection", msg) {}
};

// Program text rejected; carries a 1-based line number.
class ParseError : public Error {
 public:
  ParseError(const std::string& msg, long line)
      : Error("Parse", msg), line_(line) {}

  long line() const noexcept { return line_; }

 private:
  long line_;
};

// gate_wrap rejected its subcircuit.
class WrapError : public Error {
 public:
  explicit WrapError(const std::string& msg) : Error("Wrap", msg) {}
};

// Deleting a variable that is not provably |0> without the unchecked flag.
class DeleteError : public Error {
 public:
  explicit DeleteError(const std::string& msg) : Error("Delete", msg) {}
};

/**
 * Failure of the uncomputation pass. The session circuit is untouched when
 * one of these propagates.
 */
class UncomputeError : public Error {
 public:
  enum class Reason {
    NonQfree,            // a computing gate does not map basis states to basis states
    ValueUnavailable,    // a permeable operand's value can no longer be read
    EntangledTargets,    // a computing gate targets another variable's qubits
    AnalysisUnavailable  // permeability unknown (width cap exceeded)
  };

  UncomputeError(Reason reason, const std::string& msg)
      : Error(reason_tag(reason), msg), reason_(reason) {}

  Reason reason() const noexcept { return reason_; }

  static const char* reason_tag(Reason r) {
    switch (r) {
      case Reason::NonQfree: return "NonQfree";
      case Reason::ValueUnavailable: return "ValueUnavailable";
      case Reason::EntangledTargets: return "EntangledTargets";
      case Reason::AnalysisUnavailable: return "AnalysisUnavailable";
    }
    return "Uncompute";
  }

 private:
  Reason reason_;
};

}  // namespace unqc
