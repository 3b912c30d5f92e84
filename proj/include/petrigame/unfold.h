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

// Extensive-form unfolding of a game description.
//
// Time advances in chronons. Within one chronon:
//   1. every player whose enabled set (at the chronon's opening marking) is
//      non-empty picks one enabled transition; these choices are tree plies
//      in declared player order, and a player does not observe the other
//      players' choices of the same chronon;
//   2. the choices fire in player order; a choice that is no longer enabled
//      at its turn degrades to noop;
//   3. chance groups resolve in declared order at the marking reached so
//      far: the draw is over the group's enabled members, weights
//      renormalized. Two or more options make a chance node, one option
//      fires without a node, none skips the group.
// A node is terminal when the terminal predicate holds at a chronon boundary
// or the horizon is reached.
//
// Information sets pool decision nodes of one player with equal
// ObservationKeys (perfect recall).

#ifndef PETRIGAME_UNFOLD_H_
#define PETRIGAME_UNFOLD_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "petrigame/gdl.h"
#include "petrigame/petri.h"
#include "petrigame/rational.h"

namespace petrigame {

// Per-player choice for one chronon; nullopt is noop. Indexed by player.
struct JointMove {
  std::vector<std::optional<TransitionIndex>> actions;
  friend bool operator==(const JointMove&, const JointMove&) = default;
};

// Per-group draw for one chronon, indexed like Net::ChanceGroups(). nullopt
// means the group's forced outcome: its single enabled member if exactly one
// is enabled at its turn, otherwise nothing.
struct ChanceChoices {
  std::vector<std::optional<TransitionIndex>> draws;
  friend bool operator==(const ChanceChoices&, const ChanceChoices&) = default;
};

struct ChrononMove {
  JointMove joint;
  ChanceChoices chance;
  friend bool operator==(const ChrononMove&, const ChrononMove&) = default;
};

using History = std::vector<ChrononMove>;

JointMove NoopMove(const GameDescription& desc);
ChanceChoices NoDraws(const GameDescription& desc);

struct ChanceOption {
  TransitionIndex transition;
  Rational probability;
};

// The draw distribution of chance group `group` (index into ChanceGroups())
// at the marking reached when the group's turn comes.
std::vector<ChanceOption> ChanceOptions(const GameDescription& desc,
                                        const Marking& at_turn,
                                        std::size_t group);

// Applies players' choices (declared order) then chance groups (declared
// order); disabled choices degrade to noop. The single transition kernel
// shared by unfolding, live sessions and replay. When `fired` is given it
// receives the transitions that actually fired, in firing order.
Marking ChrononStep(const GameDescription& desc, const Marking& opening,
                    const JointMove& joint, const ChanceChoices& chance,
                    std::vector<TransitionIndex>* fired = nullptr);

// A player sees another owner's transition fire iff every place it touches
// is visible to that player. Own transitions are never "observed".
bool Observes(const Net& net, std::size_t player, TransitionIndex t);

// What a player sees at the start of a chronon.
struct ChrononView {
  // Token counts of the places visible to the player, in place order.
  std::vector<TokenCount> visible;
  // The player's enabled transitions.
  std::vector<TransitionIndex> enabled;
  friend bool operator==(const ChrononView&, const ChrononView&) = default;
};

struct ChrononRecord {
  ChrononView view;
  // The player's own submitted action; nullopt is noop.
  std::optional<TransitionIndex> action;
  // Other owners' transitions that fired and that the player observes.
  std::vector<TransitionIndex> observed;
  friend bool operator==(const ChrononRecord&, const ChrononRecord&) = default;
};

struct ObservationKey {
  std::vector<ChrononRecord> elapsed;
  ChrononView current;
  friend bool operator==(const ObservationKey&, const ObservationKey&) = default;
};

ChrononView ViewOf(const GameDescription& desc, std::size_t player,
                   const Marking& m);

// Recomputes the player's observation after `history` (complete chronons)
// from the initial marking. Throws UnknownPlayer.
ObservationKey Observation(const GameDescription& desc,
                           std::string_view player, const History& history);

std::string ToString(const ObservationKey& key);

enum class NodeKind : std::uint8_t { kDecision, kChance, kTerminal };

using NodeId = std::uint32_t;
using InfoSetId = std::uint32_t;

inline constexpr std::uint16_t kNoAction = 0xFFFF;

struct TreeNode {
  NodeId first_child = 0;
  // Info set (decision), distribution (chance) or outcome (terminal).
  std::uint32_t data = 0;
  // Chronons elapsed before this node's chronon; for terminals, the
  // chronon count at which the game ended.
  std::uint32_t chronon = 0;
  std::uint16_t num_children = 0;
  // Transition on the edge from the parent; kNoAction at the root.
  std::uint16_t action = kNoAction;
  NodeKind kind = NodeKind::kTerminal;
  // Player index for decision nodes, chance group index for chance nodes.
  std::uint8_t owner = 0;
};

// Node storage in fixed-size chunks; growing never moves existing nodes.
class NodeStore {
 public:
  std::size_t size() const { return size_; }
  TreeNode& operator[](std::size_t i) { return chunks_[i >> kShift][i & kMask]; }
  const TreeNode& operator[](std::size_t i) const {
    return chunks_[i >> kShift][i & kMask];
  }
  void Grow(std::size_t count) {
    size_ += count;
    while ((chunks_.size() << kShift) < size_) {
      chunks_.push_back(std::make_unique<TreeNode[]>(kMask + 1));
    }
  }

 private:
  static constexpr unsigned kShift = 16;
  static constexpr std::size_t kMask = (std::size_t{1} << kShift) - 1;
  std::vector<std::unique_ptr<TreeNode[]>> chunks_;
  std::size_t size_ = 0;
};

struct Outcome {
  Marking marking;
  std::vector<Rational> payoffs;
};

// Finite extensive-form game. Children of a node are contiguous and always
// have larger ids than their parent; the root is node 0.
class GameTree {
 public:
  std::size_t size() const { return nodes_.size(); }
  NodeId root() const { return 0; }
  const TreeNode& node(NodeId id) const { return nodes_[id]; }
  NodeId child(NodeId id, std::size_t i) const {
    return nodes_[id].first_child + static_cast<NodeId>(i);
  }

  std::size_t num_players() const { return players_.size(); }
  const std::vector<std::string>& players() const { return players_; }
  std::uint32_t horizon() const { return horizon_; }

  // Tree action name of a transition: its declared name.
  const std::string& action_name(std::uint16_t action) const {
    return action_names_[action];
  }
  const std::string& action_label(std::uint16_t action) const {
    return action_labels_[action];
  }
  const std::string& chance_group_name(std::size_t group) const {
    return chance_groups_[group];
  }

  // Probability of the i-th edge of a chance node.
  const Rational& chance_probability(NodeId id, std::size_t i) const {
    return distributions_[nodes_[id].data][i];
  }
  const Outcome& outcome(NodeId terminal) const {
    return outcomes_[nodes_[terminal].data];
  }
  std::size_t num_outcomes() const { return outcomes_.size(); }
  const Outcome& outcome_by_id(std::size_t id) const { return outcomes_[id]; }

  std::size_t num_info_sets() const { return info_set_player_.size(); }
  std::size_t info_set_player(InfoSetId h) const {
    return info_set_player_[h];
  }
  // First node (in id order) belonging to the info set.
  NodeId info_set_representative(InfoSetId h) const {
    return info_set_representative_[h];
  }
  // Members of every info set, ascending node ids. Linear scan.
  std::vector<std::vector<NodeId>> InfoSetMembers() const;

 private:
  friend class TreeBuilder;

  NodeStore nodes_;
  std::vector<std::string> players_;
  std::vector<std::string> action_names_;
  std::vector<std::string> action_labels_;
  std::vector<std::string> chance_groups_;
  std::vector<std::vector<Rational>> distributions_;
  std::vector<Outcome> outcomes_;
  std::vector<std::uint8_t> info_set_player_;
  std::vector<NodeId> info_set_representative_;
  std::uint32_t horizon_ = 0;
};

struct UnfoldOptions {
  std::uint64_t node_budget = 1'000'000;
};

// Requires a description without validation errors (throws
// InvalidDescription otherwise). Throws BudgetExceeded once the node count
// passes options.node_budget.
GameTree Unfold(const GameDescription& desc, const UnfoldOptions& options = {});

struct TreeStats {
  std::size_t node_count = 0;
  std::size_t terminal_count = 0;
  std::size_t info_set_count = 0;
  // Longest root-to-leaf path in plies (edges).
  std::size_t max_depth = 0;

  friend bool operator==(const TreeStats&, const TreeStats&) = default;
};

TreeStats ComputeTreeStats(const GameTree& tree);

// Calls `visit` with the node path of every root-to-leaf path, in depth-first
// order.
void ForEachLeafPath(const GameTree& tree,
                     const std::function<void(const std::vector<NodeId>&)>& visit);

// Chronon-by-chronon moves along a root path (as produced by
// ForEachLeafPath). Branching chance draws are explicit; forced ones are left
// to ChrononStep.
History PathHistory(const GameTree& tree, const GameDescription& desc,
                    const std::vector<NodeId>& path);

// The complete chronons before the last node's chronon: the history whose
// Observation matches the info set of a decision node ending the path.
History PathHistoryBefore(const GameTree& tree, const GameDescription& desc,
                          const std::vector<NodeId>& path);

// Plain-text graph export (Graphviz dot): one node per line, labeled edges.
std::string ExportDot(const GameTree& tree);

}  // namespace petrigame

#endif  // PETRIGAME_UNFOLD_H_
