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
#include "oracles.h"
#include "petrigame/gdl.h"
#include "petrigame/gen.h"
#include "petrigame/lp.h"
#include "petrigame/solve.h"
#include "petrigame/unfold.h"

namespace petrigame {
namespace {

const std::string kDir = std::string(PETRIGAME_SOURCE_DIR) + "/corpus/";

GameDescription Corpus(const std::string& name) { return ParseFile(kDir + name + ".game"); }

LinearProgram::Row Row(std::vector<std::pair<std::size_t, Rational>> terms,
                       LinearProgram::Sense sense, Rational rhs) {
  return {std::move(terms), sense, std::move(rhs)};
}

TEST_CASE("exact LP: a textbook maximum") {
  // max 3x + 2y, x + y <= 4, x + 3y <= 6, x <= 3  ->  x = 3, y = 1, 11.
  LinearProgram lp;
  const auto x = lp.AddVariable();
  const auto y = lp.AddVariable();
  lp.objective = {3, 2};
  using S = LinearProgram::Sense;
  lp.rows = {Row({{x, 1}, {y, 1}}, S::kLessEqual, 4), Row({{x, 1}, {y, 3}}, S::kLessEqual, 6),
             Row({{x, 1}}, S::kLessEqual, 3)};
  const LpSolution s = SolveExact(lp);
  REQUIRE(s.status == LpSolution::Status::kOptimal);
  CHECK(s.objective == 11);
  CHECK(s.values[x] == 3);
  CHECK(s.values[y] == 1);
}

TEST_CASE("exact LP: equality, free variables, fractions") {
  // max -z with z free, z >= 1/3 - x, x + y = 1/2, y >= 1/7.
  LinearProgram lp;
  const auto x = lp.AddVariable();
  const auto y = lp.AddVariable();
  const auto z = lp.AddVariable(true);
  lp.objective = {0, 0, -1};
  using S = LinearProgram::Sense;
  lp.rows = {Row({{z, 1}, {x, 1}}, S::kGreaterEqual, Rational(1, 3)),
             Row({{x, 1}, {y, 1}}, S::kEqual, Rational(1, 2)),
             Row({{y, 1}}, S::kGreaterEqual, Rational(1, 7))};
  const LpSolution s = SolveExact(lp);
  REQUIRE(s.status == LpSolution::Status::kOptimal);
  // x as large as possible: 1/2 - 1/7 = 5/14, z = 1/3 - 5/14 = -1/42.
  CHECK(s.values[x] == Rational(5, 14));
  CHECK(s.objective == Rational(1, 42));
}

TEST_CASE("exact LP: infeasible and unbounded") {
  using S = LinearProgram::Sense;
  LinearProgram bad;
  const auto x = bad.AddVariable();
  bad.objective = {1};
  bad.rows = {Row({{x, 1}}, S::kLessEqual, 1), Row({{x, 1}}, S::kGreaterEqual, 2)};
  CHECK(SolveExact(bad).status == LpSolution::Status::kInfeasible);
  LinearProgram open;
  const auto y = open.AddVariable();
  open.objective = {1};
  open.rows = {Row({{y, 1}}, S::kGreaterEqual, 2)};
  CHECK(SolveExact(open).status == LpSolution::Status::kUnbounded);
}

TEST_CASE("prisoner's dilemma normal form") {
  const GameTree tree = Unfold(Corpus("prisoners_dilemma"));
  const NormalForm nf = ToNormalForm(tree);
  REQUIRE(nf.num_profiles() == 4);
  const auto table = testing::OneShotTable(Corpus("prisoners_dilemma"));
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(nf.payoffs[nf.ProfileIndex({i, j})] == table.payoff.at({i, j}));
    }
  }
  const auto eqs = PureNash(nf);
  REQUIRE(eqs.size() == 1);
  CHECK(ToString(nf, eqs[0]) == "(Defect,Defect)");
  CHECK(nf.payoffs[nf.ProfileIndex(eqs[0].strategies)] ==
        std::vector<Rational>{Rational(1), Rational(1)});
}

TEST_CASE("normal form budget") {
  const GameTree tree = Unfold(Corpus("bluff"));
  CHECK_THROWS_AS(ToNormalForm(tree, NormalFormOptions{2}), BudgetExceeded);
}

TEST_CASE("backward induction on open matching pennies") {
  const GameTree tree = Unfold(Corpus("matching_pennies_open"));
  const Equilibrium eq = BackwardInduction(tree);
  // The second mover sees the first coin and always mismatches.
  CHECK(eq.values == std::vector<Rational>{Rational(-1), Rational(1)});
  CHECK(eq.kind == EquilibriumKind::kSubgamePerfect);
  CHECK(ExpectedPayoffs(tree, std::get<PureBehavior>(eq.profile)) == eq.values);
}

TEST_CASE("backward induction needs perfect information") {
  CHECK_THROWS_AS(BackwardInduction(Unfold(Corpus("matching_pennies"))), ImperfectInformation);
}

TEST_CASE("zero-sum value of the bluffing game") {
  const GameDescription d = Corpus("bluff");
  const GameTree tree = Unfold(d);
  const Equilibrium eq = ZeroSumValue(tree);
  // Reduced game with a high card always bet: rows are bet/check on a low
  // card, columns call/fold facing a bet. With deal weights 1/3 and 2/3:
  //   bet,call   = 1/3*2 + 2/3*(-2)    bet,fold   = 1
  //   check,call = 1/3*2 + 2/3*(-1)    check,fold = 1/3*1 + 2/3*(-1)
  const Rational hi(1, 3), lo(2, 3);
  const auto oracle = testing::SolveTwoByTwo(hi * 2 + lo * -2, Rational(1), hi * 2 + lo * -1,
                                             hi * 1 + lo * -1);
  REQUIRE(oracle.has_value());
  CHECK(eq.values[0] == oracle->value);
  CHECK(eq.values[0] + eq.values[1] == 0);
  const auto& profile = std::get<BehaviorProfile>(eq.profile);
  CHECK(ExpectedPayoffs(tree, profile) == eq.values);
  // Neither player can gain against the other's equilibrium strategy.
  CHECK(BestResponseValue(tree, profile, 0) == eq.values[0]);
  CHECK(BestResponseValue(tree, profile, 1) == eq.values[1]);
}

TEST_CASE("zero-sum preconditions and budget") {
  CHECK_THROWS_AS(ZeroSumValue(Unfold(Corpus("prisoners_dilemma"))), NotConstantSum);
  GenParams p;
  p.players = 3;
  p.constant_sum = true;
  CHECK_THROWS_AS(ZeroSumValue(Unfold(Generate(p))), NotTwoPlayer);
  CHECK_THROWS_AS(ZeroSumValue(Unfold(Corpus("bluff")), ZeroSumOptions{10}), BudgetExceeded);
}

TEST_CASE("uniform expectation matches the marking oracle") {
  for (const char* name : {"prisoners_dilemma", "matching_pennies", "bluff",
                           "matching_pennies_open"}) {
    CAPTURE(name);
    const GameDescription d = Corpus(name);
    const GameTree tree = Unfold(d);
    CHECK(ExpectedPayoffs(tree, UniformProfile(tree)) == testing::UniformPlayExpectation(d));
  }
}

TEST_CASE("best response against uniform play in matching pennies") {
  const GameTree tree = Unfold(Corpus("matching_pennies"));
  const BehaviorProfile uniform = UniformProfile(tree);
  CHECK(BestResponseValue(tree, uniform, 0) == 0);
  CHECK(BestResponseValue(tree, uniform, 1) == 0);
}

TEST_CASE("Gambit exports") {
  const GameDescription d = Corpus("prisoners_dilemma");
  const GameTree tree = Unfold(d);
  const std::string efg = ExportEfg(tree, d.title);
  CHECK(efg.rfind("EFG 2 R \"Prisoner's Dilemma\" { \"P1\" \"P2\" }", 0) == 0);
  NormalForm nf = ToNormalForm(tree);
  nf.title = d.title;
  const std::string nfg = ExportNfg(nf);
  CHECK(nfg.rfind("NFG 1 R", 0) == 0);
  CHECK(nfg.find("3 3 5 0 0 5 1 1") != std::string::npos);
}

}  // namespace
}  // namespace petrigame
