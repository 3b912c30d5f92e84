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

// Equilibrium computation on unfolded trees, all in exact rationals, plus
// Gambit .efg/.nfg export.

#ifndef PETRIGAME_SOLVE_H_
#define PETRIGAME_SOLVE_H_

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "petrigame/rational.h"
#include "petrigame/unfold.h"

namespace petrigame {

struct NormalForm {
  std::string title;
  std::vector<std::string> players;
  // Info sets of each player, ascending ids. A pure strategy picks one action
  // index (child position) per own info set, in this order.
  std::vector<std::vector<InfoSetId>> info_sets;
  std::vector<std::vector<std::vector<std::uint16_t>>> strategies;
  // Action labels joined with '/'; "*" for a player without info sets.
  std::vector<std::vector<std::string>> strategy_labels;
  // Indexed by ProfileIndex (first player's strategy varies fastest).
  std::vector<std::vector<Rational>> payoffs;

  std::size_t num_profiles() const { return payoffs.size(); }
  std::size_t ProfileIndex(const std::vector<std::size_t>& profile) const;
  std::vector<std::size_t> Profile(std::size_t index) const;
};

struct NormalFormOptions {
  std::uint64_t profile_budget = 1'000'000;
};

// Throws BudgetExceeded when the strategy product exceeds the budget.
NormalForm ToNormalForm(const GameTree& tree, const NormalFormOptions& options = {});

// A pure strategy index per player.
struct PureProfile {
  std::vector<std::size_t> strategies;
  friend bool operator==(const PureProfile&, const PureProfile&) = default;
};

// "(Defect,Defect)".
std::string ToString(const NormalForm& nf, const PureProfile& profile);

// Every profile without a strictly improving unilateral deviation, in
// ascending profile index order.
std::vector<PureProfile> PureNash(const NormalForm& nf);

// One action index per info set.
struct PureBehavior {
  std::vector<std::uint16_t> choice;
};

// Action distribution per info set.
struct BehaviorProfile {
  std::vector<std::vector<Rational>> probabilities;
};

enum class EquilibriumKind { kPureNash, kSubgamePerfect, kZeroSumOptimal };

std::string_view ToString(EquilibriumKind kind);

struct Equilibrium {
  EquilibriumKind kind = EquilibriumKind::kPureNash;
  std::variant<PureProfile, PureBehavior, BehaviorProfile> profile;
  std::vector<Rational> values;
};

// Perfect-information trees only (throws ImperfectInformation). Ties go to
// the action whose label (then name) sorts first.
Equilibrium BackwardInduction(const GameTree& tree);

struct ZeroSumOptions {
  // Upper bound on simplex tableau cells (rows times columns) per LP.
  std::uint64_t tableau_budget = 4'000'000;
};

// Sequence-form LP per player, solved exactly. Throws NotTwoPlayer,
// NotConstantSum, or BudgetExceeded when a tableau would exceed the budget.
Equilibrium ZeroSumValue(const GameTree& tree, const ZeroSumOptions& options = {});

// Exact expected payoffs of a behaviour profile.
std::vector<Rational> ExpectedPayoffs(const GameTree& tree,
                                      const BehaviorProfile& profile);
std::vector<Rational> ExpectedPayoffs(const GameTree& tree,
                                      const PureBehavior& profile);
// Every player mixes uniformly at every info set.
BehaviorProfile UniformProfile(const GameTree& tree);
BehaviorProfile ToBehavior(const GameTree& tree, const PureBehavior& pure);

// Best payoff `player` can reach against the others' fixed behaviour.
Rational BestResponseValue(const GameTree& tree, const BehaviorProfile& profile,
                           std::size_t player);

// Gambit text formats. Numbers are decimals when exact, else p/q.
std::string ExportEfg(const GameTree& tree, const std::string& title);
std::string ExportNfg(const NormalForm& nf);

}  // namespace petrigame

#endif  // PETRIGAME_SOLVE_H_
