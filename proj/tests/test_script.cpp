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

#include <string>

#include "doctest.h"
#include "unqc/script.hpp"
#include "unqc/serialize.hpp"

using namespace unqc;

namespace {

long parse_error_line(const std::string& src) {
  try {
    parse_script(src);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

}  // namespace

TEST_CASE("statements carry kinds, payloads, and line numbers") {
  const std::string src =
      "# a comment line\n"
      "qvar reg 3\n"
      "\n"
      "gate h reg.0   # trailing comment\n"
      "gate cx reg.0 reg.2\n"
      "uncompute reg revert\n";
  const auto prog = parse_script(src);
  REQUIRE(prog.size() == 4);

  CHECK(prog[0].kind == Statement::Kind::QVar);
  CHECK(prog[0].name == "reg");
  CHECK(prog[0].width == 3);
  CHECK(prog[0].line == 2);

  CHECK(prog[1].kind == Statement::Kind::Gate);
  CHECK(prog[1].name == "h");
  REQUIRE(prog[1].operands.size() == 1);
  CHECK(prog[1].operands[0].var == "reg");
  CHECK(prog[1].operands[0].index == 0);
  CHECK(prog[1].line == 4);

  CHECK(prog[2].operands[1].index == 2);

  CHECK(prog[3].kind == Statement::Kind::Uncompute);
  CHECK(prog[3].strategy == Strategy::Revert);
  CHECK(prog[3].line == 6);
}

TEST_CASE("bare variable references select every qubit") {
  const auto prog = parse_script("qvar a 2\ngate cx a\n");
  REQUIRE(prog[1].operands.size() == 1);
  CHECK(prog[1].operands[0].index == -1);

  Session s;
  execute(prog, s);
  CHECK(s.circuit()[2].operands == std::vector<int>{0, 1});
}

TEST_CASE("angle spellings normalize to one canonical gate name") {
  const char* spellings[] = {"pi/4",
                             "0.25pi",
                             "0.7853981633974483",
                             "1pi/4",
                             "pi/4.0"};
  for (const char* a : spellings) {
    const auto prog =
        parse_script("qvar q 1\ngate ry(" + std::string(a) + ") q.0\n");
    CHECK(prog[1].name == "ry(0.78539816339744828)");
  }
  const auto neg = parse_script("qvar q 1\ngate ry(-pi/4) q.0\n");
  CHECK(neg[1].name == "ry(-0.78539816339744828)");
  const auto tw = parse_script("qvar q 1\ngate ry(2*pi/3) q.0\n");
  CHECK(tw[1].name == "ry(2.0943951023931953)");
  CHECK(parse_error_line("qvar q 1\ngate ry(3pi4) q.0\n") == 2);
  CHECK(parse_error_line("qvar q 1\ngate ry() q.0\n") == 2);
}

TEST_CASE("parse errors carry the offending line number") {
  CHECK(parse_error_line("qvar\n") == 1);                     // missing args
  CHECK(parse_error_line("qvar a x\n") == 1);                 // bad width
  CHECK(parse_error_line("qvar a 0\n") == 1);                 // bad width
  CHECK(parse_error_line("qvar 3a 1\n") == 1);                // bad name
  CHECK(parse_error_line("\n\nnonsense a b\n") == 3);         // unknown verb
  CHECK(parse_error_line("qvar a 1\ngate cx a.x\n") == 2);    // bad index
  CHECK(parse_error_line("qvar a 1\ngate cx a.-1\n") == 2);   // bad index
  CHECK(parse_error_line("qvar a 1\ngate\n") == 2);           // no gate name
  CHECK(parse_error_line("uncompute a inline extra\n") == 1); // extra token
  CHECK(parse_error_line("uncompute a sideways\n") == 1);     // bad modifier
  CHECK(parse_error_line("qvar a 1\ngate ry(pi/0) a.0\n") == 2);  // div by 0
  CHECK(parse_error_line("wrap g {\nqvar t 1\n}\n") == 2);    // non-gate body
  CHECK(parse_error_line("auto {\nreturn a\nreturn b\n}\n") == 3);
  CHECK(parse_error_line("wrap g {\ngate cx a b\n") == 1);    // unterminated
  CHECK(parse_error_line("auto {\ngate x a.0 }\n}\n") == 2);  // brace not alone
  CHECK(parse_error_line("}\n") == 1);                        // stray brace
  CHECK(parse_error_line("wrap g\n") == 1);                   // missing brace
}

TEST_CASE("executing a script matches the same program built by hand") {
  const std::string src =
      "qvar a 3\n"
      "qvar result 1\n"
      "qvar helper 1\n"
      "gate mcx_2 a.0 a.1 helper.0\n"
      "gate mcx_2 helper.0 a.2 result.0\n"
      "uncompute helper\n";
  Session scripted;
  execute(parse_script(src), scripted);

  Session direct;
  direct.alloc("a", 3);
  direct.alloc("result", 1);
  direct.alloc("helper", 1);
  direct.apply("mcx_2", {0, 1, 4});
  direct.apply("mcx_2", {4, 2, 3});
  direct.uncompute("helper");

  CHECK(circuit_to_json(scripted.circuit()) ==
        circuit_to_json(direct.circuit()));
  CHECK(scripted.free_pool() == direct.free_pool());
}

TEST_CASE("execute resolves variables and reports runtime errors") {
  Session s;
  CHECK_THROWS_AS(execute(parse_script("gate x nope.0\n"), s),
                  ValidationError);
  CHECK_THROWS_AS(execute(parse_script("qvar a 1\ngate x a.5\n"), s),
                  ValidationError);
  CHECK_THROWS_AS(
      execute(parse_script("qvar b 1\ngate h b.0\nuncompute b\n"), s),
      UncomputeError);
}

TEST_CASE("wrap defines local wires by first use and applies once") {
  const std::string src =
      "qvar a 1\n"
      "qvar b 1\n"
      "qvar t 1\n"
      "wrap and_pair {\n"
      "  gate mcx_2 a.0 b.0 t.0\n"
      "}\n"
      "gate x a.0\n"
      "gate and_pair a.0 b.0 t.0\n";  // reusable by name afterwards
  Session s;
  execute(parse_script(src), s);

  const auto found = s.library().find("and_pair");
  REQUIRE(found.has_value());
  const GatePtr g = *found;
  CHECK(g->arity() == 3);

  const Circuit& c = s.circuit();
  REQUIRE(c.size() == 6);
  CHECK(c[3].gate->name() == "and_pair");
  CHECK(c[3].operands == std::vector<int>{0, 1, 2});  // first-use order
  CHECK(c[4].gate->name() == "x");
  CHECK(c[5].gate->name() == "and_pair");
}

TEST_CASE("wrap numbers local wires in first-use order, not source order") {
  const std::string src =
      "qvar p 1\n"
      "qvar q 1\n"
      "wrap flipped {\n"
      "  gate cx q.0 p.0\n"  // q.0 becomes local wire 0
      "}\n";
  Session s;
  execute(parse_script(src), s);
  // The statement applied cx with control q.0 = qubit 1.
  CHECK(s.circuit()[2].operands == std::vector<int>{1, 0});
  const auto found = s.library().find("flipped");
  REQUIRE(found.has_value());
  CHECK((*found)->definition()[0].operands == std::vector<int>{0, 1});
}

TEST_CASE("auto scopes run their body and return the named survivors") {
  const std::string src =
      "qvar q 1\n"
      "auto {\n"
      "  qvar tag 1\n"
      "  qvar keep 1\n"
      "  gate cx q.0 tag.0\n"
      "  gate cx q.0 keep.0\n"
      "  return keep\n"
      "}\n";
  Session s;
  execute(parse_script(src), s);
  CHECK(s.surviving_variables() == std::vector<std::string>{"q", "keep"});
  CHECK(s.free_pool() == std::vector<int>{1});  // tag's qubit came back
}

TEST_CASE("the default strategy steers unmodified uncompute statements") {
  // The value cx read from a.0 is destroyed by h, and cz pins t behind c:
  // the inline pass has nowhere to put the inverse, revert recomputes.
  const std::string src =
      "qvar a 1\n"
      "qvar c 1\n"
      "qvar t 1\n"
      "gate cx a.0 t.0\n"
      "gate h a.0\n"
      "gate cx a.0 c.0\n"
      "gate cz c.0 t.0\n"
      "uncompute t\n";
  Session inline_s;
  CHECK_THROWS_AS(execute(parse_script(src), inline_s, Strategy::Inline),
                  UncomputeError);
  Session revert_s;
  execute(parse_script(src), revert_s, Strategy::Revert);
  CHECK(revert_s.stats().strategy == "revert");
  // The explicit modifier wins over the default.
  const std::string forced =
      "qvar a 2\nqvar t 1\ngate mcx_2 a.0 a.1 t.0\nuncompute t inline\n";
  Session forced_s;
  execute(parse_script(forced), forced_s, Strategy::Revert);
  CHECK(forced_s.stats().strategy == "inline");
}
