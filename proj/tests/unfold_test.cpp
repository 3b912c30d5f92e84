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


#include <map>
#include <string>

#include "doctest.h"
#include "petrigame/gdl.h"
#include "petrigame/gen.h"
#include "petrigame/unfold.h"

namespace petrigame {
namespace {

const std::string kDir = std::string(PETRIGAME_SOURCE_DIR) + "/corpus/";

GameDescription Corpus(const std::string& name) { return ParseFile(kDir + name + ".game"); }

JointMove Joint(std::vector<std::optional<TransitionIndex>> a) { return JointMove{std::move(a)}; }

TEST_CASE("matching pennies tree shape") {
  const GameDescription d = Corpus("matching_pennies");
  const GameTree tree = Unfold(d);
  const TreeStats stats = ComputeTreeStats(tree);
  // P1 root, two P2 nodes, four leaves; the referee draw is forced.
  CHECK(stats.node_count == 7);
  CHECK(stats.terminal_count == 4);
  CHECK(stats.info_set_count == 2);
  CHECK(tree.node(tree.root()).kind == NodeKind::kDecision);
  CHECK(tree.node(tree.root()).owner == 0);
  const auto members = tree.InfoSetMembers();
  REQUIRE(members.size() == 2);
  CHECK(members[1].size() == 2);
}

TEST_CASE("open turns separate the second mover's nodes") {
  const GameTree tree = Unfold(Corpus("matching_pennies_open"));
  for (const auto& m : tree.InfoSetMembers()) CHECK(m.size() == 1);
}

TEST_CASE("chronon step: player order, noop degradation, chance") {
  const GameDescription d = Corpus("prisoners_dilemma");
  const Marking start = InitialMarking(d.net);
  const auto c1 = *d.net.FindTransition("cooperate1");
  const auto d2 = *d.net.FindTransition("defect2");
  std::vector<TransitionIndex> fired;
  const Marking m = ChrononStep(d, start, Joint({c1, d2}), NoDraws(d), &fired);
  CHECK(m[*d.net.FindPlace("cd")] == 1);
  CHECK(fired.size() == 3);
  CHECK(fired[0] == c1);
  CHECK(fired[1] == d2);
  CHECK(fired[2] == *d.net.FindTransition("verdict_cd"));
  CHECK_THROWS(ChrononStep(d, start, Joint({c1, c1}), NoDraws(d)));
  // A transition disabled at its turn degrades to noop.
  const GameDescription open = Corpus("matching_pennies_open");
  const auto h2 = *open.net.FindTransition("h2");
  const Marking o = InitialMarking(open.net);
  fired.clear();
  CHECK(ChrononStep(open, o, Joint({std::nullopt, h2}), NoDraws(open), &fired) == o);
  CHECK(fired.empty());
}

TEST_CASE("chance options renormalize over enabled members") {
  const GameDescription d = Corpus("bluff");
  const auto opts = ChanceOptions(d, InitialMarking(d.net), 0);
  REQUIRE(opts.size() == 2);
  CHECK(opts[0].probability == Rational(1, 3));
  CHECK(opts[1].probability == Rational(2, 3));
  Marking m = InitialMarking(d.net);
  m[*d.net.FindPlace("deck")] = 0;
  m[*d.net.FindPlace("high")] = 1;
  m[*d.net.FindPlace("checked")] = 1;
  const auto show = ChanceOptions(d, m, 1);
  REQUIRE(show.size() == 1);
  CHECK(show[0].probability == 1);
}

TEST_CASE("observation of other owners' firings") {
  const GameDescription d = Corpus("bluff");
  const auto& net = d.net;
  // The deal touches deck, which nobody sees.
  CHECK_FALSE(Observes(net, 1, *net.FindTransition("deal_high")));
  CHECK_FALSE(Observes(net, 0, *net.FindTransition("deal_high")));
  CHECK(Observes(net, 1, *net.FindTransition("raise")));
  CHECK_FALSE(Observes(net, 0, *net.FindTransition("raise")));
  CHECK_FALSE(Observes(net, 1, *net.FindTransition("show_hc")));
  CHECK(Observes(net, 0, *net.FindTransition("show_f")));
}

// Two decision nodes of one player share an info set exactly when the
// player's observation of the history is the same.
TEST_CASE("info sets agree with recomputed observations") {
  std::vector<GameDescription> descs;
  for (const char* n : {"bluff", "matching_pennies", "matching_pennies_open",
                        "prisoners_dilemma"}) {
    descs.push_back(Corpus(n));
  }
  for (std::uint64_t s = 1; s <= 40; ++s) {
    GenParams p;
    p.seed = s;
    p.chance_groups = s % 3;
    p.players = 2 + s % 2;
    descs.push_back(Generate(p));
  }
  for (const GameDescription& d : descs) {
    CAPTURE(d.title);
    const GameTree tree = Unfold(d);
    std::map<NodeId, std::string> key_of;
    std::vector<std::pair<NodeId, std::vector<NodeId>>> decisions;
    ForEachLeafPath(tree, [&](const std::vector<NodeId>& path) {
      for (std::size_t i = 0; i < path.size(); ++i) {
        const TreeNode& n = tree.node(path[i]);
        if (n.kind != NodeKind::kDecision || key_of.count(path[i])) continue;
        const std::vector<NodeId> prefix(path.begin(), path.begin() + i + 1);
        const History h = PathHistoryBefore(tree, d, prefix);
        key_of[path[i]] = std::to_string(n.owner) + "|" +
                          ToString(Observation(d, d.players()[n.owner], h));
      }
    });
    std::map<std::string, InfoSetId> set_of_key;
    std::map<InfoSetId, std::string> key_of_set;
    for (const auto& [node, key] : key_of) {
      const InfoSetId h = tree.node(node).data;
      if (auto it = set_of_key.find(key); it != set_of_key.end()) {
        CHECK(it->second == h);
      } else {
        set_of_key[key] = h;
      }
      if (auto it = key_of_set.find(h); it != key_of_set.end()) {
        CHECK(it->second == key);
      } else {
        key_of_set[h] = key;
      }
    }
    CHECK(key_of_set.size() == tree.num_info_sets());
  }
}

TEST_CASE("leaves agree with playout") {
  const GameDescription d = Corpus("bluff");
  const GameTree tree = Unfold(d);
  std::size_t leaves = 0;
  ForEachLeafPath(tree, [&](const std::vector<NodeId>& path) {
    Marking m = InitialMarking(d.net);
    for (const ChrononMove& mv : PathHistory(tree, d, path)) {
      m = ChrononStep(d, m, mv.joint, mv.chance);
    }
    CHECK(m == tree.outcome(path.back()).marking);
    ++leaves;
  });
  CHECK(leaves == ComputeTreeStats(tree).terminal_count);
}

TEST_CASE("children have larger ids and chance edges sum to one") {
  const GameTree tree = Unfold(Corpus("bluff"));
  for (NodeId id = 0; id < tree.size(); ++id) {
    const TreeNode& n = tree.node(id);
    Rational total = 0;
    for (std::size_t i = 0; i < n.num_children; ++i) {
      CHECK(tree.child(id, i) > id);
      if (n.kind == NodeKind::kChance) total += tree.chance_probability(id, i);
    }
    if (n.kind == NodeKind::kChance) CHECK(total == 1);
  }
}

TEST_CASE("budget and invalid descriptions") {
  CHECK_THROWS_AS(Unfold(NimDescription({3, 4, 5}), UnfoldOptions{1000}), BudgetExceeded);
  GameDescription d = Corpus("prisoners_dilemma");
  d.horizon = 0;
  CHECK_THROWS_AS(Unfold(d), InvalidDescription);
}

TEST_CASE("graph export mentions every node") {
  const GameTree tree = Unfold(Corpus("matching_pennies"));
  const std::string dot = ExportDot(tree);
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(dot.find("n6") != std::string::npos);
}

}  // namespace
}  // namespace petrigame
