// Copyright 2026 The petrigame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <string>

#include "doctest.h"
#include "petrigame/gdl.h"

namespace petrigame {
namespace {

const std::string kDir = std::string(PETRIGAME_SOURCE_DIR) + "/corpus/";

const char* kSmall = R"(game "Small"
players A, B
time chronon 50 horizon 2

place p init 1 bound 2 visible A
place q init 0 bound 1 visible A, B

transition go owner A pre {p:1} post {q:1} label "Go"
chance flip group coin weight 2/3 pre {} post {p:1} label "flip"

payoff A = 1/2 + 2*q - 1*p
payoff B = -1*q

terminal = tokens(q) >= 1 and tokens(p) <= 1
)";

TEST_CASE("corpus parses, validates and round-trips") {
  for (const char* name : {"bluff", "matching_pennies", "matching_pennies_open",
                           "nim_3_4_5", "prisoners_dilemma"}) {
    CAPTURE(name);
    const GameDescription d = ParseFile(kDir + name + ".game");
    CHECK(Validate(d).empty());
    const std::string text = Serialize(d);
    CHECK(Parse(text) == d);
    CHECK(Serialize(Parse(text)) == text);
  }
}

TEST_CASE("parsed structure") {
  const GameDescription d = Parse(kSmall);
  CHECK(d.title == "Small");
  CHECK(d.players() == std::vector<std::string>{"A", "B"});
  CHECK(d.chronon_ms == 50);
  CHECK(d.horizon == 2);
  REQUIRE(d.net.places.size() == 2);
  CHECK(d.net.places[0].bound == 2);
  CHECK(d.net.places[1].visible_to == std::vector<std::string>{"A", "B"});
  REQUIRE(d.net.transitions.size() == 2);
  CHECK(d.net.transitions[0].pre == std::vector<TokenCount>{1, 0});
  CHECK(d.net.transitions[0].post == std::vector<TokenCount>{0, 1});
  CHECK(d.net.transitions[1].is_chance());
  CHECK(std::get<ChanceOwner>(d.net.transitions[1].owner).weight == Rational(2, 3));
}

TEST_CASE("payoffs and terminal are evaluated on markings") {
  const GameDescription d = Parse(kSmall);
  // A = 1/2 + 2q - p
  CHECK(EvaluatePayoff(d, "A", Marking({1, 1})) == Rational(3, 2));
  CHECK(EvaluatePayoffs(d, Marking({2, 0})) ==
        std::vector<Rational>{Rational(-3, 2), Rational(0)});
  CHECK(EvaluateTerminal(d, Marking({1, 1})));
  CHECK_FALSE(EvaluateTerminal(d, Marking({2, 1})));
  CHECK_FALSE(EvaluateTerminal(d, Marking({0, 0})));
}

TEST_CASE("syntax errors carry a source span") {
  const std::string text = "game \"x\"\nplayers A\nplace p init 1 bound\n";
  try {
    Parse(text);
    FAIL("expected a ParseError");
  } catch (const ParseError& e) {
    REQUIRE_FALSE(e.diagnostics().empty());
    CHECK(e.diagnostics().front().span.line == 3);
    CHECK(e.diagnostics().front().severity == Severity::kError);
  }
}

TEST_CASE("semantic errors") {
  auto errors_of = [](const std::string& text) {
    try {
      return Validate(Parse(text));
    } catch (const ParseError& e) {
      return e.diagnostics();
    }
  };
  const std::string base = "game \"x\"\nplayers A\ntime chronon 10 horizon 1\n";
  CHECK(HasErrors(errors_of(base + "place p init 0 bound 1\nplace p init 0 bound 1\n")));
  CHECK(HasErrors(errors_of(base + "place p init 2 bound 1\n")));
  CHECK(HasErrors(errors_of(base + "transition t owner Z pre {} post {} label \"t\"\n")));
  CHECK(HasErrors(errors_of(base + "transition t owner A pre {r:1} post {} label \"t\"\n")));
  CHECK(HasErrors(errors_of(base + "transition noop owner A pre {} post {} label \"n\"\n")));
  CHECK(HasErrors(errors_of(base + "payoff Q = 1\n")));
  CHECK(HasErrors(errors_of("game \"x\"\nplayers A, chance\ntime chronon 10 horizon 1\n")));
  CHECK(HasErrors(errors_of("game \"x\"\nplayers A\ntime chronon 10 horizon 0\n")));
}

TEST_CASE("warnings do not block") {
  const std::string text =
      "game \"x\"\nplayers A, B\ntime chronon 10 horizon 1\n"
      "place p init 0 bound 1\n"
      "transition t owner A pre {p:2} post {} label \"t\"\n"
      "payoff A = 1\n";
  const GameDescription d = Parse(text);
  const auto diags = Validate(d);
  CHECK_FALSE(diags.empty());
  CHECK_FALSE(HasErrors(diags));
  CHECK_NOTHROW(ValidateOrThrow(d));
}

TEST_CASE("empty and garbage input") {
  CHECK_THROWS_AS(Parse(""), ParseError);
  CHECK_THROWS_AS(Parse("\x01\x02\xff"), ParseError);
  CHECK_THROWS_AS(Parse("game"), ParseError);
}

}  // namespace
}  // namespace petrigame
