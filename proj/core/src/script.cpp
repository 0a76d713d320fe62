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

#include "unqc/script.hpp"

#include <cctype>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "unqc/errors.hpp"

namespace unqc {

namespace {

struct Line {
  int number;
  std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& source) {
  std::vector<Line> out;
  std::istringstream in(source);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (const auto hash = raw.find('#'); hash != std::string::npos)
      raw.erase(hash);
    std::istringstream ls(raw);
    Line line{number, {}};
    std::string tok;
    while (ls >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty()) out.push_back(std::move(line));
  }
  return out;
}

bool is_identifier(const std::string& s) {
  if (s.empty() || (!std::isalpha(static_cast<unsigned char>(s[0])) &&
                    s[0] != '_'))
    return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_')
      return false;
  return true;
}

double parse_number(const std::string& s, int line) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ParseError("bad number '" + s + "'", line);
  }
  if (used != s.size()) throw ParseError("bad number '" + s + "'", line);
  return v;
}

// pi, -pi/4, 3pi/4, 0.25pi, 2*pi/3, or a plain decimal. No spaces.
double parse_angle(const std::string& s, int line) {
  if (s.empty()) throw ParseError("empty angle", line);
  double sign = 1.0;
  std::string t = s;
  if (t[0] == '+' || t[0] == '-') {
    sign = t[0] == '-' ? -1.0 : 1.0;
    t.erase(0, 1);
  }
  const auto pp = t.find("pi");
  if (pp == std::string::npos) return sign * parse_number(t, line);

  std::string coeff = t.substr(0, pp);
  if (!coeff.empty() && coeff.back() == '*') coeff.pop_back();
  const double c = coeff.empty() ? 1.0 : parse_number(coeff, line);

  double div = 1.0;
  if (const std::string tail = t.substr(pp + 2); !tail.empty()) {
    if (tail[0] != '/')
      throw ParseError("bad angle '" + s + "'", line);
    div = parse_number(tail.substr(1), line);
    if (div == 0.0) throw ParseError("angle divides by zero", line);
  }
  return sign * c * std::numbers::pi / div;
}

// Normalizes pi-fraction angles so the gate library's decimal-only name
// resolution can handle the token.
std::string normalize_gate_name(const std::string& name, int line) {
  if (name.rfind("ry(", 0) != 0 || name.back() != ')') return name;
  const double theta =
      parse_angle(name.substr(3, name.size() - 4), line);
  char buf[48];
  std::snprintf(buf, sizeof buf, "ry(%.17g)", theta);
  return buf;
}

OperandRef parse_ref(const std::string& tok, int line) {
  OperandRef ref;
  const auto dot = tok.find('.');
  if (dot == std::string::npos) {
    ref.var = tok;
  } else {
    ref.var = tok.substr(0, dot);
    const std::string idx = tok.substr(dot + 1);
    if (idx.empty() ||
        idx.find_first_not_of("0123456789") != std::string::npos)
      throw ParseError("bad operand reference '" + tok + "'", line);
    ref.index = std::stoi(idx);
  }
  if (!is_identifier(ref.var))
    throw ParseError("bad operand reference '" + tok + "'", line);
  return ref;
}

int parse_width(const std::string& tok, int line) {
  if (tok.empty() || tok.find_first_not_of("0123456789") != std::string::npos)
    throw ParseError("bad width '" + tok + "'", line);
  const int w = std::stoi(tok);
  if (w < 1) throw ParseError("width must be positive", line);
  return w;
}

enum class BlockKind { Top, Wrap, Auto };

std::vector<Statement> parse_block(const std::vector<Line>& lines,
                                   std::size_t& pos, BlockKind block,
                                   int open_line,
                                   std::vector<std::string>* returned) {
  std::vector<Statement> out;
  while (pos < lines.size()) {
    const Line& line = lines[pos];
    const std::vector<std::string>& t = line.tokens;
    const std::string& head = t[0];

    if (head == "}") {
      if (block == BlockKind::Top)
        throw ParseError("unmatched '}'", line.number);
      if (t.size() != 1)
        throw ParseError("'}' must stand alone", line.number);
      ++pos;
      return out;
    }
    if (block == BlockKind::Wrap && head != "gate")
      throw ParseError("only gate applications may appear in a wrap body",
                       line.number);

    Statement st;
    st.line = line.number;
    if (head == "qvar") {
      if (t.size() != 3)
        throw ParseError("expected: qvar <name> <width>", line.number);
      if (!is_identifier(t[1]))
        throw ParseError("bad variable name '" + t[1] + "'", line.number);
      st.kind = Statement::Kind::QVar;
      st.name = t[1];
      st.width = parse_width(t[2], line.number);
    } else if (head == "gate") {
      if (t.size() < 3)
        throw ParseError("expected: gate <name> <operand>...", line.number);
      st.kind = Statement::Kind::Gate;
      st.name = normalize_gate_name(t[1], line.number);
      for (std::size_t i = 2; i < t.size(); ++i)
        st.operands.push_back(parse_ref(t[i], line.number));
    } else if (head == "wrap") {
      if (t.size() != 3 || t[2] != "{")
        throw ParseError("expected: wrap <name> {", line.number);
      if (!is_identifier(t[1]))
        throw ParseError("bad gate name '" + t[1] + "'", line.number);
      st.kind = Statement::Kind::Wrap;
      st.name = t[1];
      ++pos;
      st.body = parse_block(lines, pos, BlockKind::Wrap, line.number, nullptr);
      if (st.body.empty())
        throw ParseError("empty wrap body", line.number);
      out.push_back(std::move(st));
      continue;
    } else if (head == "auto") {
      if (t.size() != 2 || t[1] != "{")
        throw ParseError("expected: auto {", line.number);
      st.kind = Statement::Kind::Auto;
      ++pos;
      st.body =
          parse_block(lines, pos, BlockKind::Auto, line.number, &st.returned);
      out.push_back(std::move(st));
      continue;
    } else if (head == "return") {
      if (block != BlockKind::Auto)
        throw ParseError("'return' is only valid inside an auto block",
                         line.number);
      if (!returned->empty())
        throw ParseError("duplicate 'return' in auto block", line.number);
      if (t.size() < 2)
        throw ParseError("expected: return <name>...", line.number);
      for (std::size_t i = 1; i < t.size(); ++i) {
        if (!is_identifier(t[i]))
          throw ParseError("bad variable name '" + t[i] + "'", line.number);
        returned->push_back(t[i]);
      }
      ++pos;
      continue;
    } else if (head == "uncompute") {
      if (t.size() < 2 || t.size() > 3)
        throw ParseError("expected: uncompute <name> [inline|revert]",
                         line.number);
      st.kind = Statement::Kind::Uncompute;
      st.name = t[1];
      if (t.size() == 3) {
        if (t[2] == "inline")
          st.strategy = Strategy::Inline;
        else if (t[2] == "revert")
          st.strategy = Strategy::Revert;
        else
          throw ParseError("unknown uncompute modifier '" + t[2] + "'",
                           line.number);
      }
    } else {
      throw ParseError("unknown statement '" + head + "'", line.number);
    }
    out.push_back(std::move(st));
    ++pos;
  }
  if (block != BlockKind::Top)
    throw ParseError("unterminated block opened here", open_line);
  return out;
}

std::vector<int> resolve_refs(Session& s,
                              const std::vector<OperandRef>& refs) {
  std::vector<int> out;
  for (const OperandRef& ref : refs) {
    const QuantumVariable& v = s.variable(ref.var);
    if (!v.allocated)
      throw ValidationError("variable '" + ref.var + "' was already deleted");
    if (ref.index < 0) {
      out.insert(out.end(), v.qubits.begin(), v.qubits.end());
    } else {
      if (ref.index >= v.width())
        throw ValidationError("variable '" + ref.var + "' has no qubit " +
                              std::to_string(ref.index));
      out.push_back(v[ref.index]);
    }
  }
  return out;
}

void exec_wrap(const Statement& st, Session& s) {
  // Local wires are numbered by first use across the body, so the wrapped
  // gate can immediately be applied to the referenced qubits.
  std::vector<int> first_use;
  std::map<int, int> local;
  for (const Statement& g : st.body)
    for (int q : resolve_refs(s, g.operands))
      if (local.emplace(q, static_cast<int>(first_use.size())).second)
        first_use.push_back(q);

  Circuit def(static_cast<int>(first_use.size()));
  for (const Statement& g : st.body) {
    const auto gate = s.library().resolve(g.name);
    if (!gate) throw ValidationError("unknown gate: " + g.name);
    std::vector<int> ops;
    for (int q : resolve_refs(s, g.operands)) ops.push_back(local.at(q));
    def.append(Instruction::apply(*gate, ops));
  }
  s.apply(s.wrap(def, st.name), first_use);
}

void exec_block(const std::vector<Statement>& program, Session& s,
                Strategy def) {
  for (const Statement& st : program) {
    switch (st.kind) {
      case Statement::Kind::QVar:
        s.alloc(st.name, st.width);
        break;
      case Statement::Kind::Gate:
        s.apply(st.name, resolve_refs(s, st.operands));
        break;
      case Statement::Kind::Wrap:
        exec_wrap(st, s);
        break;
      case Statement::Kind::Uncompute:
        s.uncompute(st.name, st.strategy.value_or(def));
        break;
      case Statement::Kind::Auto: {
        s.begin_auto_scope();
        try {
          exec_block(st.body, s, def);
        } catch (...) {
          s.abandon_auto_scope();
          throw;
        }
        s.end_auto_scope(st.returned, def);
        break;
      }
    }
  }
}

}  // namespace

std::vector<Statement> parse_script(const std::string& source) {
  const std::vector<Line> lines = tokenize(source);
  std::size_t pos = 0;
  return parse_block(lines, pos, BlockKind::Top, 0, nullptr);
}

void execute(const std::vector<Statement>& program, Session& session,
             Strategy default_strategy) {
  exec_block(program, session, default_strategy);
}

}  // namespace unqc
