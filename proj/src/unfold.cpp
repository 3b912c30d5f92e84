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

#include "petrigame/unfold.h"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>
#include <utility>

#include "absl/container/flat_hash_map.h"
#include "absl/container/flat_hash_set.h"
#include "absl/hash/hash.h"

namespace petrigame {

JointMove NoopMove(const GameDescription& desc) {
  return JointMove{std::vector<std::optional<TransitionIndex>>(
      desc.net.players.size())};
}

ChanceChoices NoDraws(const GameDescription& desc) {
  return ChanceChoices{std::vector<std::optional<TransitionIndex>>(
      desc.net.ChanceGroups().size())};
}

std::vector<ChanceOption> ChanceOptions(const GameDescription& desc,
                                        const Marking& at_turn,
                                        std::size_t group) {
  const auto groups = desc.net.ChanceGroups();
  if (group >= groups.size()) {
    throw std::invalid_argument("chance group index out of range");
  }
  std::vector<ChanceOption> options;
  Rational total = 0;
  for (TransitionIndex t = 0; t < desc.net.transitions.size(); ++t) {
    const Transition& tr = desc.net.transitions[t];
    if (!tr.is_chance() || tr.chance_group() != groups[group]) continue;
    if (!IsEnabled(desc.net, at_turn, t)) continue;
    const Rational& w = std::get<ChanceOwner>(tr.owner).weight;
    options.push_back(ChanceOption{t, w});
    total += w;
  }
  for (ChanceOption& o : options) o.probability /= total;
  return options;
}

Marking ChrononStep(const GameDescription& desc, const Marking& opening,
                    const JointMove& joint, const ChanceChoices& chance,
                    std::vector<TransitionIndex>* fired) {
  const Net& net = desc.net;
  const auto groups = net.ChanceGroups();
  if (joint.actions.size() != net.players.size()) {
    throw std::invalid_argument("joint move does not cover every player");
  }
  if (chance.draws.size() != groups.size()) {
    throw std::invalid_argument("chance choices do not cover every group");
  }
  if (fired) fired->clear();
  auto fire = [&](Marking& m, TransitionIndex t) {
    m = Fire(net, m, t);
    if (fired) fired->push_back(t);
  };
  Marking m = opening;
  for (std::size_t p = 0; p < joint.actions.size(); ++p) {
    if (!joint.actions[p]) continue;
    const TransitionIndex t = *joint.actions[p];
    if (t >= net.transitions.size() || net.transitions[t].is_chance() ||
        net.transitions[t].player() != net.players[p]) {
      throw std::invalid_argument("joint move assigns a transition to a "
                                  "player who does not own it");
    }
    if (IsEnabled(net, m, t)) fire(m, t);
  }
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (const auto& draw = chance.draws[g]) {
      if (*draw >= net.transitions.size() ||
          net.transitions[*draw].chance_group() != groups[g]) {
        throw std::invalid_argument("chance draw outside its group");
      }
      if (IsEnabled(net, m, *draw)) fire(m, *draw);
    } else {
      const auto options = ChanceOptions(desc, m, g);
      if (options.size() == 1) fire(m, options.front().transition);
    }
  }
  return m;
}

bool Observes(const Net& net, std::size_t player, TransitionIndex t) {
  const Transition& tr = net.transitions.at(t);
  const std::string& name = net.players.at(player);
  if (!tr.is_chance() && tr.player() == name) return false;
  for (std::size_t q = 0; q < net.places.size(); ++q) {
    if (tr.pre[q] == 0 && tr.post[q] == 0) continue;
    const auto& viewers = net.places[q].visible_to;
    if (std::find(viewers.begin(), viewers.end(), name) == viewers.end()) {
      return false;
    }
  }
  return true;
}

ChrononView ViewOf(const GameDescription& desc, std::size_t player,
                   const Marking& m) {
  const Net& net = desc.net;
  ChrononView view;
  const std::string& name = net.players.at(player);
  for (PlaceIndex p = 0; p < net.places.size(); ++p) {
    const auto& viewers = net.places[p].visible_to;
    if (std::find(viewers.begin(), viewers.end(), name) != viewers.end()) {
      view.visible.push_back(m[p]);
    }
  }
  view.enabled = EnabledFor(net, m, name);
  return view;
}

ObservationKey Observation(const GameDescription& desc,
                           std::string_view player, const History& history) {
  const auto index = desc.net.FindPlayer(player);
  if (!index) {
    throw UnknownPlayer("unknown player '" + std::string(player) + "'");
  }
  ObservationKey key;
  Marking m = InitialMarking(desc.net);
  for (const ChrononMove& move : history) {
    ChrononRecord record;
    record.view = ViewOf(desc, *index, m);
    record.action = move.joint.actions.at(*index);
    std::vector<TransitionIndex> fired;
    m = ChrononStep(desc, m, move.joint, move.chance, &fired);
    for (TransitionIndex t : fired) {
      if (Observes(desc.net, *index, t)) record.observed.push_back(t);
    }
    key.elapsed.push_back(std::move(record));
  }
  key.current = ViewOf(desc, *index, m);
  return key;
}

std::string ToString(const ObservationKey& key) {
  std::ostringstream out;
  auto view = [&out](const ChrononView& v) {
    out << "see[";
    for (std::size_t i = 0; i < v.visible.size(); ++i) {
      out << (i ? "," : "") << v.visible[i];
    }
    out << "] can[";
    for (std::size_t i = 0; i < v.enabled.size(); ++i) {
      out << (i ? "," : "") << v.enabled[i];
    }
    out << "]";
  };
  for (const ChrononRecord& r : key.elapsed) {
    view(r.view);
    out << " did ";
    if (r.action) out << *r.action;
    else out << "noop";
    if (!r.observed.empty()) {
      out << " saw";
      for (TransitionIndex t : r.observed) out << " " << t;
    }
    out << "; ";
  }
  view(key.current);
  return out.str();
}

std::vector<std::vector<NodeId>> GameTree::InfoSetMembers() const {
  std::vector<std::vector<NodeId>> members(info_set_player_.size());
  for (NodeId id = 0; id < nodes_.size(); ++id) {
    if (nodes_[id].kind == NodeKind::kDecision) {
      members[nodes_[id].data].push_back(id);
    }
  }
  return members;
}

namespace {

constexpr std::uint32_t kNone = std::numeric_limits<std::uint32_t>::max();

// Key of a player's observation history, compressed: the last info set the
// player decided in and the action taken there (which pin down everything
// up to that chronon), plus the interned sequence of records since.
struct PlayerPath {
  std::uint32_t last_info_set = kNone;
  std::uint16_t last_action = kNoAction;
  std::uint32_t seq = 0;
};

struct CompiledPredicate {
  Predicate::Kind kind = Predicate::Kind::kFalse;
  PlaceIndex place = 0;
  Comparison op = Comparison::kEqual;
  TokenCount value = 0;
  std::vector<CompiledPredicate> operands;

  bool Holds(const std::vector<TokenCount>& m) const {
    switch (kind) {
      case Predicate::Kind::kTrue:
        return true;
      case Predicate::Kind::kFalse:
        return false;
      case Predicate::Kind::kCompare:
        return Compare(m[place], op, value);
      case Predicate::Kind::kAnd:
        for (const auto& q : operands) {
          if (!q.Holds(m)) return false;
        }
        return true;
      case Predicate::Kind::kOr:
        for (const auto& q : operands) {
          if (q.Holds(m)) return true;
        }
        return false;
    }
    return false;
  }
};

CompiledPredicate CompilePredicate(const Net& net, const Predicate& p) {
  CompiledPredicate c;
  c.kind = p.kind;
  if (p.kind == Predicate::Kind::kCompare) {
    c.place = *net.FindPlace(p.place);
    c.op = p.op;
    c.value = p.value;
  }
  for (const Predicate& q : p.operands) {
    c.operands.push_back(CompilePredicate(net, q));
  }
  return c;
}

struct MarkingInfo {
  bool terminal = false;
  std::uint32_t outcome = kNone;
  std::vector<std::vector<std::uint16_t>> enabled;  // per player
  std::vector<std::uint32_t> open_record;           // per player
  std::vector<std::uint32_t> skip_record;           // per player
};

struct Frame {
  std::uint32_t marking_id = 0;
  std::uint32_t chronon = 0;
  std::vector<TokenCount> opening;
  std::vector<std::uint8_t> deciders;
  std::vector<std::vector<std::uint16_t>> actions;  // per player
  std::vector<std::uint32_t> open_record;           // per player
  std::vector<std::uint32_t> skip_record;           // per player
  std::vector<PlayerPath> paths;
  std::vector<std::uint16_t> chosen;
  std::vector<std::uint32_t> decided_in;
  // stage_marking[s] is the marking before stage s of the chronon.
  std::vector<std::vector<TokenCount>> stage_marking;
  // Transitions fired so far in this chronon, in firing order.
  std::vector<std::uint16_t> fired;
};

// Info-set keys live in one array; the hash set stores only ids and looks
// keys up through it.
struct InfoKey {
  std::uint32_t last_info_set;
  std::uint32_t seq;
  std::uint16_t last_action;

  friend bool operator==(const InfoKey&, const InfoKey&) = default;
};

struct InfoKeyHash {
  using is_transparent = void;
  const std::vector<InfoKey>* keys;
  std::size_t operator()(const InfoKey& k) const {
    return absl::Hash<std::tuple<std::uint32_t, std::uint32_t, std::uint16_t>>{}(
        std::make_tuple(k.last_info_set, k.seq, k.last_action));
  }
  std::size_t operator()(std::uint32_t id) const { return (*this)((*keys)[id]); }
};

struct InfoKeyEq {
  using is_transparent = void;
  const std::vector<InfoKey>* keys;
  const InfoKey& Get(const InfoKey& k) const { return k; }
  const InfoKey& Get(std::uint32_t id) const { return (*keys)[id]; }
  template <typename A, typename B>
  bool operator()(const A& a, const B& b) const {
    return Get(a) == Get(b);
  }
};

}  // namespace

class TreeBuilder {
 public:
  TreeBuilder(const GameDescription& desc, const UnfoldOptions& options)
      : desc_(desc), net_(desc.net), options_(options) {
    num_places_ = net_.places.size();
    num_players_ = net_.players.size();
    if (num_players_ > 255) throw Error("unfold supports at most 255 players");
    if (net_.transitions.size() >= kNoAction) {
      throw Error("unfold supports at most 65534 transitions");
    }
    pre_.resize(net_.transitions.size() * num_places_);
    post_.resize(pre_.size());
    for (TransitionIndex t = 0; t < net_.transitions.size(); ++t) {
      const Transition& tr = net_.transitions[t];
      std::copy(tr.pre.begin(), tr.pre.end(), pre_.begin() + t * num_places_);
      std::copy(tr.post.begin(), tr.post.end(),
                post_.begin() + t * num_places_);
    }
    for (const Place& p : net_.places) bounds_.push_back(p.bound);

    player_transitions_.resize(num_players_);
    visible_.resize(num_players_);
    for (TransitionIndex t = 0; t < net_.transitions.size(); ++t) {
      const Transition& tr = net_.transitions[t];
      if (tr.is_chance()) continue;
      player_transitions_[*net_.FindPlayer(tr.player())].push_back(
          static_cast<std::uint16_t>(t));
    }
    for (std::size_t p = 0; p < num_players_; ++p) {
      for (PlaceIndex q = 0; q < num_places_; ++q) {
        const auto& viewers = net_.places[q].visible_to;
        if (std::find(viewers.begin(), viewers.end(), net_.players[p]) !=
            viewers.end()) {
          visible_[p].push_back(q);
        }
      }
    }
    const auto groups = net_.ChanceGroups();
    group_members_.resize(groups.size());
    for (TransitionIndex t = 0; t < net_.transitions.size(); ++t) {
      const Transition& tr = net_.transitions[t];
      if (!tr.is_chance()) continue;
      const auto g = static_cast<std::size_t>(
          std::find(groups.begin(), groups.end(), tr.chance_group()) -
          groups.begin());
      group_members_[g].push_back(static_cast<std::uint16_t>(t));
    }
    terminal_ = CompilePredicate(net_, desc.terminal);
    observes_.assign(num_players_,
                     std::vector<bool>(net_.transitions.size(), false));
    for (std::size_t p = 0; p < num_players_; ++p) {
      for (TransitionIndex t = 0; t < net_.transitions.size(); ++t) {
        observes_[p][t] = Observes(net_, p, t);
      }
    }

    tree_.players_ = net_.players;
    tree_.chance_groups_ = groups;
    tree_.horizon_ = desc.horizon;
    for (const Transition& tr : net_.transitions) {
      tree_.action_names_.push_back(tr.name);
      tree_.action_labels_.push_back(tr.label);
    }
  }

  GameTree Build() {
    Allocate(1);
    Frame& f = frame(0);
    f.opening.assign(bounds_.size(), 0);
    for (PlaceIndex p = 0; p < num_places_; ++p) {
      f.opening[p] = net_.places[p].initial;
    }
    f.paths.assign(num_players_, PlayerPath{});
    Chronon(0, 0, 0);
    return std::move(tree_);
  }

 private:
  Frame& frame(std::size_t level) {
    while (frames_.size() <= level) {
      Frame f;
      f.actions.resize(num_players_);
      f.open_record.resize(num_players_);
      f.skip_record.resize(num_players_);
      f.chosen.assign(num_players_, kNoAction);
      f.decided_in.assign(num_players_, kNone);
      f.stage_marking.resize(num_players_ + group_members_.size() + 1);
      frames_.push_back(std::move(f));
    }
    return frames_[level];
  }

  NodeId Allocate(std::size_t count) {
    const std::size_t first = tree_.nodes_.size();
    if (first + count > options_.node_budget ||
        first + count > std::numeric_limits<NodeId>::max()) {
      throw BudgetExceeded("unfolding exceeds the node budget of " +
                           std::to_string(options_.node_budget));
    }
    tree_.nodes_.Grow(count);
    return static_cast<NodeId>(first);
  }

  bool Enabled(const std::vector<TokenCount>& m, std::uint16_t t) const {
    const TokenCount* pre = &pre_[t * num_places_];
    const TokenCount* post = &post_[t * num_places_];
    for (std::size_t p = 0; p < num_places_; ++p) {
      if (m[p] < pre[p]) return false;
      if (std::uint64_t{m[p]} - pre[p] + post[p] > bounds_[p]) return false;
    }
    return true;
  }

  void Apply(std::vector<TokenCount>& m, std::uint16_t t) const {
    const TokenCount* pre = &pre_[t * num_places_];
    const TokenCount* post = &post_[t * num_places_];
    for (std::size_t p = 0; p < num_places_; ++p) m[p] = m[p] - pre[p] + post[p];
  }

  std::uint32_t InternRecord(const std::vector<std::uint32_t>& key) {
    if (auto it = records_.find(key); it != records_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(records_.size());
    records_.emplace(key, id);
    return id;
  }

  std::uint32_t InternSeq(std::uint32_t seq, std::uint32_t record) {
    const std::uint64_t key = (std::uint64_t{seq} << 32) | record;
    // Sequence 0 is the empty sequence.
    auto [it, inserted] = seqs_.try_emplace(
        key, static_cast<std::uint32_t>(seqs_.size() + 1));
    return it->second;
  }

  // Extends a player's record sequence with the transitions of the closing
  // chronon that the player observes.
  std::uint32_t AppendObserved(std::uint32_t seq, std::size_t player,
                               const std::vector<std::uint16_t>& fired) {
    scratch_key_.clear();
    for (std::uint16_t t : fired) {
      if (observes_[player][t]) scratch_key_.push_back(t);
    }
    if (scratch_key_.empty()) return seq;
    scratch_key_.insert(scratch_key_.begin(),
                        {2u, static_cast<std::uint32_t>(player)});
    return InternSeq(seq, InternRecord(scratch_key_));
  }

  std::uint32_t InternMarking(const std::vector<TokenCount>& m) {
    auto it = marking_ids_.find(m);
    if (it != marking_ids_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(infos_.size());
    marking_ids_.emplace(m, id);

    MarkingInfo info;
    info.terminal = terminal_.Holds(m);
    info.enabled.resize(num_players_);
    info.open_record.resize(num_players_);
    info.skip_record.resize(num_players_);
    for (std::size_t p = 0; p < num_players_; ++p) {
      for (std::uint16_t t : player_transitions_[p]) {
        if (Enabled(m, t)) info.enabled[p].push_back(t);
      }
      // [tag, player, visible counts..., enabled transitions...]; the
      // visible count list has a fixed length per player.
      std::vector<std::uint32_t> key;
      key.push_back(0);
      key.push_back(static_cast<std::uint32_t>(p));
      for (PlaceIndex q : visible_[p]) key.push_back(m[q]);
      for (std::uint16_t t : info.enabled[p]) key.push_back(t);
      info.open_record[p] = InternRecord(key);
      key[0] = 1;  // closed with noop
      info.skip_record[p] = InternRecord(key);
    }
    infos_.push_back(std::move(info));
    markings_.emplace_back(m);
    return id;
  }

  std::uint32_t OutcomeOf(std::uint32_t marking_id) {
    MarkingInfo& info = infos_[marking_id];
    if (info.outcome != kNone) return info.outcome;
    Outcome outcome;
    outcome.marking = markings_[marking_id];
    outcome.payoffs = EvaluatePayoffs(desc_, outcome.marking);
    info.outcome = static_cast<std::uint32_t>(tree_.outcomes_.size());
    tree_.outcomes_.push_back(std::move(outcome));
    return info.outcome;
  }

  std::uint32_t InternInfoSet(std::size_t player, const PlayerPath& path,
                              std::uint32_t open_record, NodeId node) {
    const InfoKey key{path.last_info_set, InternSeq(path.seq, open_record),
                      path.last_action};
    if (auto it = info_sets_.find(key); it != info_sets_.end()) return *it;
    const auto id = static_cast<std::uint32_t>(info_keys_.size());
    info_keys_.push_back(key);
    info_sets_.insert(id);
    tree_.info_set_player_.push_back(static_cast<std::uint8_t>(player));
    tree_.info_set_representative_.push_back(node);
    return id;
  }

  std::uint32_t InternDistribution(std::vector<Rational> probabilities) {
    auto [it, inserted] = distributions_.try_emplace(
        probabilities, static_cast<std::uint32_t>(tree_.distributions_.size()));
    if (inserted) tree_.distributions_.push_back(std::move(probabilities));
    return it->second;
  }

  void MakeTerminal(NodeId slot, std::uint32_t marking_id,
                    std::uint32_t chronon) {
    const std::uint32_t outcome = OutcomeOf(marking_id);
    TreeNode& n = tree_.nodes_[slot];
    n.kind = NodeKind::kTerminal;
    n.data = outcome;
    n.chronon = chronon;
    n.num_children = 0;
  }

  // Enabled members of a chance group at m.
  void GroupOptions(const std::vector<TokenCount>& m, std::size_t group,
                    std::vector<std::uint16_t>& out) const {
    out.clear();
    for (std::uint16_t t : group_members_[group]) {
      if (Enabled(m, t)) out.push_back(t);
    }
  }

  // Fills `slot` with the subtree rooted at a chronon boundary whose
  // opening marking and player paths are in frame(level).
  void Chronon(NodeId slot, std::size_t level, std::uint32_t chronon) {
    Frame& f = frame(level);
    std::vector<std::uint16_t> options;
    while (true) {
      const std::uint32_t mid = InternMarking(f.opening);
      const MarkingInfo& info = infos_[mid];
      if (chronon >= desc_.horizon || info.terminal) {
        MakeTerminal(slot, mid, chronon);
        return;
      }
      f.marking_id = mid;
      f.chronon = chronon;
      f.deciders.clear();
      for (std::size_t p = 0; p < num_players_; ++p) {
        f.actions[p] = info.enabled[p];
        f.open_record[p] = info.open_record[p];
        f.skip_record[p] = info.skip_record[p];
        if (!f.actions[p].empty()) {
          f.deciders.push_back(static_cast<std::uint8_t>(p));
        }
      }
      if (!f.deciders.empty()) break;

      // Nobody moves: resolve chance directly unless a group branches.
      std::vector<TokenCount> work = f.opening;
      bool branching = false;
      f.fired.clear();
      for (std::size_t g = 0; g < group_members_.size(); ++g) {
        GroupOptions(work, g, options);
        if (options.size() >= 2) {
          branching = true;
          break;
        }
        if (options.size() == 1) {
          Apply(work, options.front());
          f.fired.push_back(options.front());
        }
      }
      if (branching) break;
      for (std::size_t p = 0; p < num_players_; ++p) {
        f.paths[p].seq = InternSeq(f.paths[p].seq, f.skip_record[p]);
        f.paths[p].seq = AppendObserved(f.paths[p].seq, p, f.fired);
      }
      if (work == f.opening) {
        // Nothing can change any more; the game idles to the horizon.
        chronon = desc_.horizon;
      } else {
        f.opening = std::move(work);
        ++chronon;
      }
    }
    std::fill(f.chosen.begin(), f.chosen.end(), kNoAction);
    f.fired.clear();
    f.stage_marking[0] = f.opening;
    Ply(slot, level, 0);
  }

  void Ply(NodeId slot, std::size_t level, std::size_t stage) {
    Frame& f = frames_[level];
    const std::size_t num_deciders = f.deciders.size();
    if (stage < num_deciders) {
      const std::size_t player = f.deciders[stage];
      const auto& actions = f.actions[player];
      const std::uint32_t h =
          InternInfoSet(player, f.paths[player], f.open_record[player], slot);
      const NodeId first = Allocate(actions.size());
      {
        TreeNode& n = tree_.nodes_[slot];
        n.kind = NodeKind::kDecision;
        n.owner = static_cast<std::uint8_t>(player);
        n.data = h;
        n.chronon = f.chronon;
        n.first_child = first;
        n.num_children = static_cast<std::uint16_t>(actions.size());
      }
      f.decided_in[player] = h;
      for (std::size_t i = 0; i < actions.size(); ++i) {
        tree_.nodes_[first + i].action = actions[i];
      }
      for (std::size_t i = 0; i < actions.size(); ++i) {
        const std::uint16_t t = actions[i];
        f.chosen[player] = t;
        f.stage_marking[stage + 1] = f.stage_marking[stage];
        const bool fires = Enabled(f.stage_marking[stage + 1], t);
        if (fires) {
          Apply(f.stage_marking[stage + 1], t);
          f.fired.push_back(t);
        }
        Ply(first + static_cast<NodeId>(i), level, stage + 1);
        if (fires) f.fired.pop_back();
      }
      f.chosen[player] = kNoAction;
      return;
    }

    const std::size_t group = stage - num_deciders;
    if (group < group_members_.size()) {
      std::vector<std::uint16_t> options;
      GroupOptions(f.stage_marking[stage], group, options);
      if (options.size() <= 1) {
        f.stage_marking[stage + 1] = f.stage_marking[stage];
        if (options.size() == 1) {
          Apply(f.stage_marking[stage + 1], options.front());
          f.fired.push_back(options.front());
        }
        Ply(slot, level, stage + 1);
        if (options.size() == 1) f.fired.pop_back();
        return;
      }
      Rational total = 0;
      for (std::uint16_t t : options) {
        total += std::get<ChanceOwner>(net_.transitions[t].owner).weight;
      }
      std::vector<Rational> probabilities;
      for (std::uint16_t t : options) {
        probabilities.push_back(
            std::get<ChanceOwner>(net_.transitions[t].owner).weight / total);
      }
      const std::uint32_t dist = InternDistribution(std::move(probabilities));
      const NodeId first = Allocate(options.size());
      {
        TreeNode& n = tree_.nodes_[slot];
        n.kind = NodeKind::kChance;
        n.owner = static_cast<std::uint8_t>(group);
        n.data = dist;
        n.chronon = f.chronon;
        n.first_child = first;
        n.num_children = static_cast<std::uint16_t>(options.size());
      }
      for (std::size_t i = 0; i < options.size(); ++i) {
        tree_.nodes_[first + i].action = options[i];
      }
      for (std::size_t i = 0; i < options.size(); ++i) {
        f.stage_marking[stage + 1] = f.stage_marking[stage];
        Apply(f.stage_marking[stage + 1], options[i]);
        f.fired.push_back(options[i]);
        Ply(first + static_cast<NodeId>(i), level, stage + 1);
        f.fired.pop_back();
      }
      return;
    }

    // Chronon complete.
    Frame& next = frame(level + 1);
    next.opening = f.stage_marking[stage];
    next.paths = f.paths;
    for (std::size_t p = 0; p < num_players_; ++p) {
      if (f.chosen[p] != kNoAction) {
        next.paths[p] = PlayerPath{f.decided_in[p], f.chosen[p], 0};
      } else {
        next.paths[p].seq = InternSeq(f.paths[p].seq, f.skip_record[p]);
      }
      next.paths[p].seq = AppendObserved(next.paths[p].seq, p, f.fired);
    }
    Chronon(slot, level + 1, f.chronon + 1);
  }

  const GameDescription& desc_;
  const Net& net_;
  UnfoldOptions options_;
  std::size_t num_places_ = 0;
  std::size_t num_players_ = 0;
  std::vector<TokenCount> pre_;
  std::vector<TokenCount> post_;
  std::vector<TokenCount> bounds_;
  std::vector<std::vector<std::uint16_t>> player_transitions_;
  std::vector<std::vector<PlaceIndex>> visible_;
  std::vector<std::vector<std::uint16_t>> group_members_;
  CompiledPredicate terminal_;
  std::vector<std::vector<bool>> observes_;
  std::vector<std::uint32_t> scratch_key_;

  absl::flat_hash_map<std::vector<TokenCount>, std::uint32_t> marking_ids_;
  std::vector<MarkingInfo> infos_;
  std::vector<Marking> markings_;
  absl::flat_hash_map<std::vector<std::uint32_t>, std::uint32_t> records_;
  absl::flat_hash_map<std::uint64_t, std::uint32_t> seqs_;
  std::vector<InfoKey> info_keys_;
  absl::flat_hash_set<std::uint32_t, InfoKeyHash, InfoKeyEq> info_sets_{
      0, InfoKeyHash{&info_keys_}, InfoKeyEq{&info_keys_}};
  std::map<std::vector<Rational>, std::uint32_t> distributions_;
  std::deque<Frame> frames_;
  GameTree tree_;
};

GameTree Unfold(const GameDescription& desc, const UnfoldOptions& options) {
  ValidateOrThrow(desc);
  return TreeBuilder(desc, options).Build();
}

TreeStats ComputeTreeStats(const GameTree& tree) {
  TreeStats stats;
  stats.node_count = tree.size();
  stats.info_set_count = tree.num_info_sets();
  std::vector<std::pair<NodeId, std::size_t>> stack = {{tree.root(), 0}};
  while (!stack.empty()) {
    auto [id, depth] = stack.back();
    stack.pop_back();
    const TreeNode& n = tree.node(id);
    stats.max_depth = std::max(stats.max_depth, depth);
    if (n.kind == NodeKind::kTerminal) ++stats.terminal_count;
    for (std::size_t i = 0; i < n.num_children; ++i) {
      stack.emplace_back(tree.child(id, i), depth + 1);
    }
  }
  return stats;
}

void ForEachLeafPath(
    const GameTree& tree,
    const std::function<void(const std::vector<NodeId>&)>& visit) {
  std::vector<NodeId> path = {tree.root()};
  std::vector<std::size_t> next_child = {0};
  while (!path.empty()) {
    const TreeNode& n = tree.node(path.back());
    if (n.kind == NodeKind::kTerminal) {
      visit(path);
      path.pop_back();
      next_child.pop_back();
      continue;
    }
    std::size_t& i = next_child.back();
    if (i < n.num_children) {
      const NodeId c = tree.child(path.back(), i++);
      path.push_back(c);
      next_child.push_back(0);
    } else {
      path.pop_back();
      next_child.pop_back();
    }
  }
}

History PathHistory(const GameTree& tree, const GameDescription& desc,
                    const std::vector<NodeId>& path) {
  History history(tree.node(path.back()).chronon,
                  ChrononMove{NoopMove(desc), NoDraws(desc)});
  for (std::size_t i = 0; i + 1 < path.size(); ++i) {
    const TreeNode& parent = tree.node(path[i]);
    const TreeNode& child = tree.node(path[i + 1]);
    if (parent.chronon >= history.size()) break;
    ChrononMove& move = history[parent.chronon];
    if (parent.kind == NodeKind::kDecision) {
      move.joint.actions[parent.owner] = child.action;
    } else if (parent.kind == NodeKind::kChance) {
      move.chance.draws[parent.owner] = child.action;
    }
  }
  return history;
}

History PathHistoryBefore(const GameTree& tree, const GameDescription& desc,
                          const std::vector<NodeId>& path) {
  History history = PathHistory(tree, desc, path);
  history.resize(std::min<std::size_t>(history.size(),
                                       tree.node(path.back()).chronon));
  return history;
}

namespace {

std::string DotEscape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

std::string ExportDot(const GameTree& tree) {
  std::ostringstream out;
  out << "digraph game {\n";
  for (NodeId id = 0; id < tree.size(); ++id) {
    const TreeNode& n = tree.node(id);
    out << "  n" << id << " [";
    switch (n.kind) {
      case NodeKind::kDecision:
        out << "shape=circle,label=\"" << DotEscape(tree.players()[n.owner])
            << " h" << n.data << "\"";
        break;
      case NodeKind::kChance:
        out << "shape=diamond,label=\""
            << DotEscape(tree.chance_group_name(n.owner)) << "\"";
        break;
      case NodeKind::kTerminal:
        out << "shape=box,label=\""
            << DotEscape(ToString(tree.outcome(id).payoffs)) << "\"";
        break;
    }
    out << "];\n";
  }
  for (NodeId id = 0; id < tree.size(); ++id) {
    const TreeNode& n = tree.node(id);
    for (std::size_t i = 0; i < n.num_children; ++i) {
      const NodeId c = tree.child(id, i);
      std::string label = tree.action_label(tree.node(c).action);
      if (n.kind == NodeKind::kChance) {
        label += " " + ToString(tree.chance_probability(id, i));
      }
      out << "  n" << id << " -> n" << c << " [label=\"" << DotEscape(label)
          << "\"];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace petrigame
