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

#include "petrigame/solve.h"

#include <algorithm>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <utility>

#include "petrigame/error.h"
#include "petrigame/lp.h"

namespace petrigame {

namespace {

std::size_t SaturatingMul(std::size_t a, std::size_t b) {
  if (a != 0 && b > std::numeric_limits<std::size_t>::max() / a) {
    return std::numeric_limits<std::size_t>::max();
  }
  return a * b;
}

// Exact expectation of the pure profile given by one choice per info set.
std::vector<Rational> PlayChoices(const GameTree& tree,
                                  const std::vector<std::uint16_t>& choice) {
  std::vector<Rational> total(tree.num_players());
  std::vector<std::pair<NodeId, Rational>> stack;
  stack.emplace_back(tree.root(), Rational(1));
  while (!stack.empty()) {
    auto [id, p] = std::move(stack.back());
    stack.pop_back();
    const TreeNode& n = tree.node(id);
    switch (n.kind) {
      case NodeKind::kTerminal: {
        const auto& u = tree.outcome(id).payoffs;
        for (std::size_t i = 0; i < u.size(); ++i) total[i] += p * u[i];
        break;
      }
      case NodeKind::kDecision:
        stack.emplace_back(tree.child(id, choice[n.data]), std::move(p));
        break;
      case NodeKind::kChance:
        for (std::size_t i = 0; i < n.num_children; ++i) {
          stack.emplace_back(tree.child(id, i),
                             p * tree.chance_probability(id, i));
        }
        break;
    }
  }
  return total;
}

std::size_t CountDecisionNodes(const GameTree& tree) {
  std::size_t count = 0;
  for (NodeId id = 0; id < tree.size(); ++id) {
    if (tree.node(id).kind == NodeKind::kDecision) ++count;
  }
  return count;
}

std::size_t NumActions(const GameTree& tree, InfoSetId h) {
  return tree.node(tree.info_set_representative(h)).num_children;
}

std::uint16_t ActionAt(const GameTree& tree, InfoSetId h, std::size_t i) {
  return tree.node(tree.child(tree.info_set_representative(h), i)).action;
}

}  // namespace

std::size_t NormalForm::ProfileIndex(
    const std::vector<std::size_t>& profile) const {
  std::size_t index = 0;
  for (std::size_t p = strategies.size(); p-- > 0;) {
    index = index * strategies[p].size() + profile[p];
  }
  return index;
}

std::vector<std::size_t> NormalForm::Profile(std::size_t index) const {
  std::vector<std::size_t> profile(strategies.size());
  for (std::size_t p = 0; p < strategies.size(); ++p) {
    profile[p] = index % strategies[p].size();
    index /= strategies[p].size();
  }
  return profile;
}

NormalForm ToNormalForm(const GameTree& tree, const NormalFormOptions& options) {
  NormalForm nf;
  nf.players = tree.players();
  const std::size_t num_players = tree.num_players();
  nf.info_sets.resize(num_players);
  for (InfoSetId h = 0; h < tree.num_info_sets(); ++h) {
    nf.info_sets[tree.info_set_player(h)].push_back(h);
  }
  std::size_t profiles = 1;
  std::vector<std::size_t> counts(num_players, 1);
  for (std::size_t p = 0; p < num_players; ++p) {
    for (InfoSetId h : nf.info_sets[p]) {
      counts[p] = SaturatingMul(counts[p], NumActions(tree, h));
    }
    profiles = SaturatingMul(profiles, counts[p]);
  }
  if (profiles > options.profile_budget) {
    throw BudgetExceeded("normal form needs more than " +
                         std::to_string(options.profile_budget) + " profiles");
  }

  nf.strategies.resize(num_players);
  nf.strategy_labels.resize(num_players);
  for (std::size_t p = 0; p < num_players; ++p) {
    const auto& own = nf.info_sets[p];
    for (std::size_t s = 0; s < counts[p]; ++s) {
      std::vector<std::uint16_t> pick(own.size());
      std::size_t rest = s;
      std::string label;
      for (std::size_t k = 0; k < own.size(); ++k) {
        const std::size_t arity = NumActions(tree, own[k]);
        pick[k] = static_cast<std::uint16_t>(rest % arity);
        rest /= arity;
        if (k) label += "/";
        label += tree.action_label(ActionAt(tree, own[k], pick[k]));
      }
      nf.strategies[p].push_back(std::move(pick));
      nf.strategy_labels[p].push_back(own.empty() ? "*" : label);
    }
  }

  nf.payoffs.resize(profiles);
  std::vector<std::uint16_t> choice(tree.num_info_sets());
  for (std::size_t index = 0; index < profiles; ++index) {
    const auto profile = nf.Profile(index);
    for (std::size_t p = 0; p < num_players; ++p) {
      const auto& pick = nf.strategies[p][profile[p]];
      for (std::size_t k = 0; k < pick.size(); ++k) {
        choice[nf.info_sets[p][k]] = pick[k];
      }
    }
    nf.payoffs[index] = PlayChoices(tree, choice);
  }
  return nf;
}

std::string ToString(const NormalForm& nf, const PureProfile& profile) {
  std::string out = "(";
  for (std::size_t p = 0; p < profile.strategies.size(); ++p) {
    if (p) out += ",";
    out += nf.strategy_labels[p][profile.strategies[p]];
  }
  return out + ")";
}

std::vector<PureProfile> PureNash(const NormalForm& nf) {
  std::vector<PureProfile> result;
  for (std::size_t index = 0; index < nf.num_profiles(); ++index) {
    const auto profile = nf.Profile(index);
    bool stable = true;
    for (std::size_t p = 0; stable && p < profile.size(); ++p) {
      auto deviation = profile;
      for (std::size_t s = 0; s < nf.strategies[p].size(); ++s) {
        if (s == profile[p]) continue;
        deviation[p] = s;
        if (nf.payoffs[nf.ProfileIndex(deviation)][p] >
            nf.payoffs[index][p]) {
          stable = false;
          break;
        }
      }
    }
    if (stable) result.push_back(PureProfile{profile});
  }
  return result;
}

std::string_view ToString(EquilibriumKind kind) {
  switch (kind) {
    case EquilibriumKind::kPureNash:
      return "pure-nash";
    case EquilibriumKind::kSubgamePerfect:
      return "subgame-perfect";
    case EquilibriumKind::kZeroSumOptimal:
      return "zero-sum-optimal";
  }
  return "?";
}

Equilibrium BackwardInduction(const GameTree& tree) {
  if (CountDecisionNodes(tree) != tree.num_info_sets()) {
    throw ImperfectInformation(
        "backward induction needs perfect information; the tree has "
        "pooled information sets");
  }
  // Tie-break order: label, then name.
  std::size_t num_actions = 0;
  for (NodeId id = 0; id < tree.size(); ++id) {
    const auto a = tree.node(id).action;
    if (a != kNoAction) num_actions = std::max<std::size_t>(num_actions, a + 1);
  }
  std::vector<std::uint16_t> order(num_actions);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::uint16_t a, std::uint16_t b) {
    return std::tie(tree.action_label(a), tree.action_name(a)) <
           std::tie(tree.action_label(b), tree.action_name(b));
  });
  std::vector<std::uint32_t> rank(num_actions);
  for (std::size_t i = 0; i < order.size(); ++i) rank[order[i]] = i;

  // Node values are ids into `table`; terminals share their outcome rows.
  std::vector<std::vector<Rational>> table;
  for (std::size_t k = 0; k < tree.num_outcomes(); ++k) {
    table.push_back(tree.outcome_by_id(k).payoffs);
  }
  std::vector<std::uint32_t> value(tree.size());
  PureBehavior behavior;
  behavior.choice.assign(tree.num_info_sets(), 0);
  for (NodeId id = static_cast<NodeId>(tree.size()); id-- > 0;) {
    const TreeNode& n = tree.node(id);
    switch (n.kind) {
      case NodeKind::kTerminal:
        value[id] = n.data;
        break;
      case NodeKind::kChance: {
        std::vector<Rational> v(tree.num_players());
        for (std::size_t i = 0; i < n.num_children; ++i) {
          const auto& c = table[value[tree.child(id, i)]];
          const Rational& p = tree.chance_probability(id, i);
          for (std::size_t k = 0; k < v.size(); ++k) v[k] += p * c[k];
        }
        value[id] = static_cast<std::uint32_t>(table.size());
        table.push_back(std::move(v));
        break;
      }
      case NodeKind::kDecision: {
        std::size_t best = 0;
        for (std::size_t i = 1; i < n.num_children; ++i) {
          const Rational& cand = table[value[tree.child(id, i)]][n.owner];
          const Rational& incumbent =
              table[value[tree.child(id, best)]][n.owner];
          if (cand > incumbent ||
              (cand == incumbent &&
               rank[tree.node(tree.child(id, i)).action] <
                   rank[tree.node(tree.child(id, best)).action])) {
            best = i;
          }
        }
        behavior.choice[n.data] = static_cast<std::uint16_t>(best);
        value[id] = value[tree.child(id, best)];
        break;
      }
    }
  }
  Equilibrium eq;
  eq.kind = EquilibriumKind::kSubgamePerfect;
  eq.values = table[value[tree.root()]];
  eq.profile = std::move(behavior);
  return eq;
}

namespace {

struct SequenceForm {
  // base[h]: sequence id of (h, first action); sequence 0 is empty.
  std::vector<std::size_t> base;
  // Parent sequence of every info set.
  std::vector<std::size_t> parent;
  std::vector<std::size_t> num_sequences;  // per player
  std::vector<std::vector<InfoSetId>> info_sets;  // per player
  // (sequence of P1, sequence of P2) -> chance-weighted payoff per player.
  std::map<std::pair<std::size_t, std::size_t>, std::vector<Rational>> leaves;
};

SequenceForm BuildSequenceForm(const GameTree& tree) {
  SequenceForm sf;
  sf.base.resize(tree.num_info_sets());
  sf.parent.assign(tree.num_info_sets(), 0);
  sf.num_sequences.assign(2, 1);
  sf.info_sets.resize(2);
  for (InfoSetId h = 0; h < tree.num_info_sets(); ++h) {
    const std::size_t p = tree.info_set_player(h);
    sf.info_sets[p].push_back(h);
    sf.base[h] = sf.num_sequences[p];
    sf.num_sequences[p] += NumActions(tree, h);
  }
  struct Item {
    NodeId id;
    std::size_t seq[2];
    Rational chance;
  };
  std::vector<Item> stack;
  stack.push_back(Item{tree.root(), {0, 0}, Rational(1)});
  while (!stack.empty()) {
    Item item = std::move(stack.back());
    stack.pop_back();
    const TreeNode& n = tree.node(item.id);
    switch (n.kind) {
      case NodeKind::kTerminal: {
        auto& cell = sf.leaves[{item.seq[0], item.seq[1]}];
        const auto& u = tree.outcome(item.id).payoffs;
        if (cell.empty()) cell.resize(2);
        for (std::size_t k = 0; k < 2; ++k) cell[k] += item.chance * u[k];
        break;
      }
      case NodeKind::kChance:
        for (std::size_t i = 0; i < n.num_children; ++i) {
          stack.push_back(Item{tree.child(item.id, i),
                               {item.seq[0], item.seq[1]},
                               item.chance * tree.chance_probability(item.id, i)});
        }
        break;
      case NodeKind::kDecision:
        sf.parent[n.data] = item.seq[n.owner];
        for (std::size_t i = 0; i < n.num_children; ++i) {
          Item next{tree.child(item.id, i), {item.seq[0], item.seq[1]},
                    item.chance};
          next.seq[n.owner] = sf.base[n.data] + i;
          stack.push_back(std::move(next));
        }
        break;
    }
  }
  return sf;
}

// max f.q  s.t.  F^T q - A^T x <= 0,  E x = e,  x >= 0, for player `me`.
// Returns the value and `me`'s realization plan.
std::pair<Rational, std::vector<Rational>> SolveSequenceLp(
    const SequenceForm& sf, std::size_t me) {
  const std::size_t op = 1 - me;
  LinearProgram lp;
  std::vector<std::size_t> x(sf.num_sequences[me]);
  for (auto& v : x) v = lp.AddVariable();
  std::vector<std::size_t> q(sf.info_sets[op].size() + 1);
  for (auto& v : q) v = lp.AddVariable(/*is_free=*/true);
  lp.objective[q[0]] = 1;

  // One row per opponent sequence.
  std::vector<LinearProgram::Row> rows(sf.num_sequences[op]);
  rows[0].terms.emplace_back(q[0], 1);
  for (std::size_t k = 0; k < sf.info_sets[op].size(); ++k) {
    const InfoSetId h = sf.info_sets[op][k];
    rows[sf.parent[h]].terms.emplace_back(q[k + 1], -1);
  }
  for (std::size_t k = 0; k < sf.info_sets[op].size(); ++k) {
    const InfoSetId h = sf.info_sets[op][k];
    const std::size_t next =
        k + 1 < sf.info_sets[op].size() ? sf.base[sf.info_sets[op][k + 1]]
                                         : sf.num_sequences[op];
    for (std::size_t s = sf.base[h]; s < next; ++s) {
      rows[s].terms.emplace_back(q[k + 1], 1);
    }
  }
  for (const auto& [key, u] : sf.leaves) {
    const std::size_t mine = me == 0 ? key.first : key.second;
    const std::size_t theirs = me == 0 ? key.second : key.first;
    if (sgn(u[me]) != 0) rows[theirs].terms.emplace_back(x[mine], -u[me]);
  }
  for (auto& row : rows) {
    row.sense = LinearProgram::Sense::kLessEqual;
    row.rhs = 0;
    lp.rows.push_back(std::move(row));
  }

  LinearProgram::Row root;
  root.sense = LinearProgram::Sense::kEqual;
  root.terms.emplace_back(x[0], 1);
  root.rhs = 1;
  lp.rows.push_back(std::move(root));
  for (std::size_t k = 0; k < sf.info_sets[me].size(); ++k) {
    const InfoSetId h = sf.info_sets[me][k];
    const std::size_t next =
        k + 1 < sf.info_sets[me].size() ? sf.base[sf.info_sets[me][k + 1]]
                                         : sf.num_sequences[me];
    LinearProgram::Row row;
    row.sense = LinearProgram::Sense::kEqual;
    row.rhs = 0;
    row.terms.emplace_back(x[sf.parent[h]], -1);
    for (std::size_t s = sf.base[h]; s < next; ++s) {
      row.terms.emplace_back(x[s], 1);
    }
    lp.rows.push_back(std::move(row));
  }

  const LpSolution solution = SolveExact(lp);
  if (solution.status != LpSolution::Status::kOptimal) {
    throw Error("sequence-form LP did not reach an optimum");
  }
  std::vector<Rational> plan(x.size());
  for (std::size_t s = 0; s < x.size(); ++s) plan[s] = solution.values[x[s]];
  return {solution.objective, std::move(plan)};
}

}  // namespace

Equilibrium ZeroSumValue(const GameTree& tree, const ZeroSumOptions& options) {
  if (tree.num_players() != 2) {
    throw NotTwoPlayer("zero-sum solving needs exactly 2 players, got " +
                       std::to_string(tree.num_players()));
  }
  std::optional<Rational> constant;
  for (std::size_t k = 0; k < tree.num_outcomes(); ++k) {
    const auto& u = tree.outcome_by_id(k).payoffs;
    const Rational sum = u[0] + u[1];
    if (constant && *constant != sum) {
      throw NotConstantSum("payoff sums differ across leaves (" +
                           ToString(*constant) + " vs " + ToString(sum) + ")");
    }
    constant = sum;
  }

  std::uint64_t seqs[2] = {1, 1}, sets[2] = {0, 0};
  for (InfoSetId h = 0; h < tree.num_info_sets(); ++h) {
    seqs[tree.info_set_player(h)] += NumActions(tree, h);
    ++sets[tree.info_set_player(h)];
  }
  for (std::size_t me = 0; me < 2; ++me) {
    const std::uint64_t rows = seqs[1 - me] + sets[me] + 1;
    const std::uint64_t cols = seqs[me] + sets[1 - me] + 1 + rows;
    if (rows * cols > options.tableau_budget) {
      throw BudgetExceeded("sequence-form tableau has " +
                           std::to_string(rows * cols) +
                           " cells, budget is " +
                           std::to_string(options.tableau_budget));
    }
  }

  const SequenceForm sf = BuildSequenceForm(tree);
  BehaviorProfile profile;
  profile.probabilities.resize(tree.num_info_sets());
  std::vector<Rational> values(2);
  for (std::size_t me = 0; me < 2; ++me) {
    auto [value, plan] = SolveSequenceLp(sf, me);
    values[me] = value;
    for (InfoSetId h : sf.info_sets[me]) {
      const std::size_t arity = NumActions(tree, h);
      auto& dist = profile.probabilities[h];
      dist.resize(arity);
      const Rational& reach = plan[sf.parent[h]];
      for (std::size_t a = 0; a < arity; ++a) {
        dist[a] = sgn(reach) > 0 ? plan[sf.base[h] + a] / reach
                                 : Rational(1, arity);
      }
    }
  }
  if (values[0] + values[1] != constant.value_or(Rational(0))) {
    throw Error("sequence-form values are inconsistent with the constant sum");
  }
  const auto expected = ExpectedPayoffs(tree, profile);
  if (expected != values ||
      BestResponseValue(tree, profile, 0) != values[0] ||
      BestResponseValue(tree, profile, 1) != values[1]) {
    throw Error("sequence-form strategies failed the best-response check");
  }
  Equilibrium eq;
  eq.kind = EquilibriumKind::kZeroSumOptimal;
  eq.profile = std::move(profile);
  eq.values = std::move(values);
  return eq;
}

std::vector<Rational> ExpectedPayoffs(const GameTree& tree,
                                      const BehaviorProfile& profile) {
  std::vector<Rational> total(tree.num_players());
  std::vector<std::pair<NodeId, Rational>> stack;
  stack.emplace_back(tree.root(), Rational(1));
  while (!stack.empty()) {
    auto [id, p] = std::move(stack.back());
    stack.pop_back();
    const TreeNode& n = tree.node(id);
    if (n.kind == NodeKind::kTerminal) {
      const auto& u = tree.outcome(id).payoffs;
      for (std::size_t i = 0; i < u.size(); ++i) total[i] += p * u[i];
      continue;
    }
    for (std::size_t i = 0; i < n.num_children; ++i) {
      const Rational& w = n.kind == NodeKind::kChance
                              ? tree.chance_probability(id, i)
                              : profile.probabilities[n.data][i];
      if (sgn(w) != 0) stack.emplace_back(tree.child(id, i), p * w);
    }
  }
  return total;
}

std::vector<Rational> ExpectedPayoffs(const GameTree& tree,
                                      const PureBehavior& profile) {
  return PlayChoices(tree, profile.choice);
}

BehaviorProfile UniformProfile(const GameTree& tree) {
  BehaviorProfile profile;
  profile.probabilities.resize(tree.num_info_sets());
  for (InfoSetId h = 0; h < tree.num_info_sets(); ++h) {
    const std::size_t k = NumActions(tree, h);
    profile.probabilities[h].assign(k, Rational(1, k));
  }
  return profile;
}

BehaviorProfile ToBehavior(const GameTree& tree, const PureBehavior& pure) {
  BehaviorProfile profile;
  profile.probabilities.resize(tree.num_info_sets());
  for (InfoSetId h = 0; h < tree.num_info_sets(); ++h) {
    profile.probabilities[h].assign(NumActions(tree, h), Rational(0));
    profile.probabilities[h][pure.choice[h]] = 1;
  }
  return profile;
}

Rational BestResponseValue(const GameTree& tree, const BehaviorProfile& profile,
                           std::size_t player) {
  const std::size_t n = tree.size();
  // Reach of every node through chance and the other players only, and the
  // number of own decisions above it.
  std::vector<Rational> reach(n);
  std::vector<std::uint32_t> own_depth(n, 0);
  reach[tree.root()] = 1;
  for (NodeId id = 0; id < n; ++id) {
    const TreeNode& node = tree.node(id);
    for (std::size_t i = 0; i < node.num_children; ++i) {
      const NodeId c = tree.child(id, i);
      if (node.kind == NodeKind::kChance) {
        reach[c] = reach[id] * tree.chance_probability(id, i);
      } else if (node.owner != player) {
        reach[c] = reach[id] * profile.probabilities[node.data][i];
      } else {
        reach[c] = reach[id];
      }
      own_depth[c] =
          own_depth[id] +
          (node.kind == NodeKind::kDecision && node.owner == player ? 1 : 0);
    }
  }
  const auto members = tree.InfoSetMembers();
  std::vector<InfoSetId> own;
  for (InfoSetId h = 0; h < tree.num_info_sets(); ++h) {
    if (tree.info_set_player(h) == player) own.push_back(h);
  }
  std::stable_sort(own.begin(), own.end(), [&](InfoSetId a, InfoSetId b) {
    return own_depth[members[a].front()] > own_depth[members[b].front()];
  });

  std::vector<std::optional<std::uint16_t>> choice(tree.num_info_sets());
  std::vector<std::optional<Rational>> memo(n);
  // Reach-weighted value of a subtree under the best responses chosen so
  // far; deeper own info sets are always decided first.
  std::function<const Rational&(NodeId)> weighted = [&](NodeId id)
      -> const Rational& {
    if (memo[id]) return *memo[id];
    const TreeNode& node = tree.node(id);
    Rational v = 0;
    if (node.kind == NodeKind::kTerminal) {
      v = reach[id] * tree.outcome(id).payoffs[player];
    } else if (node.kind == NodeKind::kDecision && node.owner == player) {
      v = weighted(tree.child(id, choice[node.data].value()));
    } else {
      for (std::size_t i = 0; i < node.num_children; ++i) {
        v += weighted(tree.child(id, i));
      }
    }
    memo[id] = std::move(v);
    return *memo[id];
  };
  for (InfoSetId h : own) {
    const std::size_t arity = NumActions(tree, h);
    std::optional<Rational> best;
    for (std::size_t a = 0; a < arity; ++a) {
      Rational q = 0;
      for (NodeId m : members[h]) q += weighted(tree.child(m, a));
      if (!best || q > *best) {
        best = std::move(q);
        choice[h] = static_cast<std::uint16_t>(a);
      }
    }
  }
  return weighted(tree.root());
}

namespace {

std::string Quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

std::string PlayerList(const std::vector<std::string>& players) {
  std::string out = "{";
  for (const auto& p : players) out += " " + Quote(p);
  return out + " }";
}

}  // namespace

std::string ExportEfg(const GameTree& tree, const std::string& title) {
  std::ostringstream out;
  out << "EFG 2 R " << Quote(title) << " " << PlayerList(tree.players())
      << "\n\"\"\n\n";
  std::vector<std::uint32_t> number(tree.num_info_sets(), 0);
  std::vector<std::uint32_t> next_number(tree.num_players(), 1);
  std::uint32_t next_chance = 1;
  std::uint32_t next_outcome = 1;
  std::vector<NodeId> stack = {tree.root()};
  while (!stack.empty()) {
    const NodeId id = stack.back();
    stack.pop_back();
    const TreeNode& n = tree.node(id);
    switch (n.kind) {
      case NodeKind::kTerminal: {
        out << "t \"\" " << next_outcome++ << " \"\" {";
        const auto& u = tree.outcome(id).payoffs;
        for (std::size_t i = 0; i < u.size(); ++i) {
          out << (i ? ", " : " ") << ToDecimalOrFraction(u[i]);
        }
        out << " }\n";
        break;
      }
      case NodeKind::kChance:
        out << "c \"\" " << next_chance++ << " \"\" {";
        for (std::size_t i = 0; i < n.num_children; ++i) {
          out << " " << Quote(tree.action_label(tree.node(tree.child(id, i)).action))
              << " " << ToDecimalOrFraction(tree.chance_probability(id, i));
        }
        out << " } 0\n";
        break;
      case NodeKind::kDecision: {
        std::uint32_t& h = number[n.data];
        if (h == 0) h = next_number[n.owner]++;
        out << "p \"\" " << (n.owner + 1) << " " << h << " \"\" {";
        for (std::size_t i = 0; i < n.num_children; ++i) {
          out << " "
              << Quote(tree.action_label(tree.node(tree.child(id, i)).action));
        }
        out << " } 0\n";
        break;
      }
    }
    for (std::size_t i = n.num_children; i-- > 0;) {
      stack.push_back(tree.child(id, i));
    }
  }
  return out.str();
}

std::string ExportNfg(const NormalForm& nf) {
  std::ostringstream out;
  out << "NFG 1 R " << Quote(nf.title) << " " << PlayerList(nf.players)
      << "\n\n{";
  for (std::size_t p = 0; p < nf.players.size(); ++p) {
    out << (p ? "\n" : " ") << "{";
    for (const auto& label : nf.strategy_labels[p]) out << " " << Quote(label);
    out << " }";
  }
  out << "\n}\n\"\"\n\n";
  for (std::size_t index = 0; index < nf.num_profiles(); ++index) {
    for (std::size_t p = 0; p < nf.players.size(); ++p) {
      out << (index || p ? " " : "") << ToDecimalOrFraction(nf.payoffs[index][p]);
    }
  }
  out << "\n";
  return out.str();
}

}  // namespace petrigame
