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

// Reference computations for tests. None of them touches the game tree, the
// normal form or the LP; they work on markings and plain arithmetic.

#ifndef PETRIGAME_TESTS_ORACLES_H_
#define PETRIGAME_TESTS_ORACLES_H_

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "petrigame/gdl.h"
#include "petrigame/petri.h"
#include "petrigame/rational.h"

namespace petrigame::testing {

// Nim where the player taking the last token wins: does the player to move
// win? Plain memoized minimax over heap tuples.
bool NimMoverWins(std::vector<int> heaps);
// Bouton: the mover wins iff the xor of the heaps is non-zero.
bool NimXorRule(const std::vector<int>& heaps);

// Affine payoff and terminal evaluation straight from the description.
std::vector<Rational> PayoffsAt(const GameDescription& desc, const Marking& m);

// Distribution over closing markings of one chronon, given each player's
// choice (nullopt = noop). Chance groups are enumerated with their weights
// renormalized over the enabled members.
std::vector<std::pair<Rational, Marking>> ChrononOutcomes(
    const GameDescription& desc, const Marking& opening,
    const std::vector<std::optional<TransitionIndex>>& choices);

// One-chronon games: the payoff of every joint pure choice, players
// choosing among their transitions enabled at the initial marking.
struct PayoffTable {
  std::vector<std::vector<TransitionIndex>> moves;  // per player
  std::map<std::vector<std::size_t>, std::vector<Rational>> payoff;
};
PayoffTable OneShotTable(const GameDescription& desc);

// Joint choices (indices into moves) from which no player gains by a
// unilateral change.
std::vector<std::vector<std::size_t>> BruteForcePureNash(const PayoffTable& table);

// Expected payoffs when every player with an enabled transition picks one
// uniformly in every chronon, by recursion over markings.
std::vector<Rational> UniformPlayExpectation(const GameDescription& desc);

// Mixed equilibrium of the 2x2 zero-sum game [[a, b], [c, d]] (row player's
// payoffs) without a saddle point.
struct TwoByTwo {
  Rational value;
  Rational row_first;     // probability of the first row
  Rational column_first;  // probability of the first column
};
std::optional<TwoByTwo> SolveTwoByTwo(const Rational& a, const Rational& b,
                                      const Rational& c, const Rational& d);

}  // namespace petrigame::testing

#endif  // PETRIGAME_TESTS_ORACLES_H_
