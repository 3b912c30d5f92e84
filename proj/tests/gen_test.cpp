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


#include <stdexcept>

#include "doctest.h"
#include "oracles.h"
#include "petrigame/gen.h"
#include "petrigame/solve.h"
#include "petrigame/unfold.h"

namespace petrigame {
namespace {

TEST_CASE("generation is deterministic in its parameters") {
  GenParams p;
  p.seed = 42;
  p.chance_groups = 1;
  CHECK(Serialize(Generate(p)) == Serialize(Generate(p)));
  GenParams q = p;
  q.seed = 43;
  CHECK(Serialize(Generate(p)) != Serialize(Generate(q)));
}

TEST_CASE("generated games honour their contract") {
  for (std::uint64_t s = 1; s <= 60; ++s) {
    CAPTURE(s);
    GenParams p;
    p.seed = s;
    p.players = 2 + s % 3;
    p.chance_groups = s % 2;
    p.node_budget = 2000;
    const GameDescription d = Generate(p);
    CHECK(Validate(d).empty());
    CHECK(d.players().size() == p.players);
    const GameTree tree = Unfold(d, UnfoldOptions{p.node_budget});
    CHECK(tree.num_info_sets() > 0);
    bool terminal_leaf = false;
    for (NodeId id = 0; id < tree.size(); ++id) {
      if (tree.node(id).kind == NodeKind::kTerminal) {
        terminal_leaf |= EvaluateTerminal(d, tree.outcome(id).marking);
      }
    }
    CHECK(terminal_leaf);
  }
}

TEST_CASE("perfect-information constant-sum games") {
  for (std::uint64_t s = 1; s <= 30; ++s) {
    CAPTURE(s);
    GenParams p;
    p.seed = s;
    p.perfect_information = true;
    p.constant_sum = true;
    const GameDescription d = Generate(p);
    const GameTree tree = Unfold(d);
    for (const auto& members : tree.InfoSetMembers()) CHECK(members.size() == 1);
    for (std::size_t o = 0; o < tree.num_outcomes(); ++o) {
      const auto& u = tree.outcome_by_id(o).payoffs;
      CHECK(u[0] + u[1] == 0);
    }
    CHECK_NOTHROW(BackwardInduction(tree));
  }
}

TEST_CASE("parameter checks") {
  GenParams p;
  p.players = 0;
  CHECK_THROWS_AS(CheckGenParams(p), std::invalid_argument);
  p = GenParams{};
  p.horizon = 0;
  CHECK_THROWS_AS(CheckGenParams(p), std::invalid_argument);
}

TEST_CASE("nim descriptions") {
  const GameDescription d = NimDescription({1, 2});
  CHECK(Validate(d).empty());
  const Equilibrium eq = BackwardInduction(Unfold(d));
  CHECK((eq.values[0] == 1) == testing::NimMoverWins({1, 2}));
  CHECK((eq.values[0] == 1) == testing::NimXorRule({1, 2}));
}

}  // namespace
}  // namespace petrigame
