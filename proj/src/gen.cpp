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

#include "petrigame/gen.h"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "petrigame/error.h"
#include "petrigame/unfold.h"

namespace petrigame {

void CheckGenParams(const GenParams& p) {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw std::invalid_argument(what);
  };
  require(p.players >= 1 && p.players <= 8, "players must be in 1..8");
  require(p.places >= 1 && p.places <= 64, "places must be in 1..64");
  require(p.transitions >= 1 && p.transitions <= 256,
          "transitions must be in 1..256");
  require(p.horizon >= 1 && p.horizon <= 1000, "horizon must be in 1..1000");
  require(p.max_bound >= 1 && p.max_bound <= 1000,
          "max bound must be in 1..1000");
  require(p.chance_groups <= 16, "chance groups must be in 0..16");
  require(p.node_budget >= 1, "node budget must be positive");
}

namespace {

constexpr int kAttempts = 500;

class Builder {
 public:
  Builder(const GenParams& params, std::mt19937_64& rng)
      : params_(params), rng_(rng) {}

  GameDescription Build() {
    GameDescription d;
    d.title = "Random game " + std::to_string(params_.seed);
    d.chronon_ms = 1000;
    d.horizon = params_.horizon;
    Net& net = d.net;
    for (std::size_t i = 1; i <= params_.players; ++i) {
      net.players.push_back("P" + std::to_string(i));
    }
    std::vector<std::string> everyone = net.players;
    std::sort(everyone.begin(), everyone.end());

    for (std::size_t i = 0; i < params_.places; ++i) {
      Place place;
      place.name = "q" + std::to_string(i);
      place.bound = Uniform<TokenCount>(1, params_.max_bound);
      place.initial = Uniform<TokenCount>(0, place.bound);
      if (params_.perfect_information) {
        place.visible_to = everyone;
      } else {
        for (const auto& p : everyone) {
          if (Coin()) place.visible_to.push_back(p);
        }
      }
      net.places.push_back(std::move(place));
    }
    const std::size_t game_places = net.places.size();
    if (params_.perfect_information) {
      for (std::size_t i = 1; i <= params_.players; ++i) {
        Place turn;
        turn.name = "turn" + std::to_string(i);
        turn.bound = 1;
        turn.initial = i == 1 ? 1 : 0;
        turn.visible_to = everyone;
        net.places.push_back(std::move(turn));
      }
    }
    const std::size_t n = net.places.size();
    auto turn_of = [&](std::size_t player) { return game_places + player; };

    for (std::size_t i = 0; i < params_.transitions; ++i) {
      Transition t;
      t.name = "a" + std::to_string(i);
      t.label = t.name;
      const std::size_t owner = Uniform<std::size_t>(0, params_.players - 1);
      t.owner = PlayerOwner{net.players[owner]};
      t.pre.assign(n, 0);
      t.post.assign(n, 0);
      RandomArcs(net, game_places, t.pre, 1, 2);
      RandomArcs(net, game_places, t.post, 0, 2);
      if (params_.perfect_information) PassTurn(t, owner, turn_of);
      net.transitions.push_back(std::move(t));
    }
    if (params_.perfect_information) {
      // A player whose moves are all blocked still hands the turn on.
      for (std::size_t owner = 0; owner < params_.players; ++owner) {
        Transition t;
        t.name = "pass" + std::to_string(owner + 1);
        t.label = "pass";
        t.owner = PlayerOwner{net.players[owner]};
        t.pre.assign(n, 0);
        t.post.assign(n, 0);
        PassTurn(t, owner, turn_of);
        net.transitions.push_back(std::move(t));
      }
    }
    for (std::size_t g = 0; g < params_.chance_groups; ++g) {
      const std::size_t members = Uniform<std::size_t>(2, 3);
      std::vector<long> raw(members);
      for (auto& w : raw) w = Uniform<long>(1, 4);
      const long total = std::accumulate(raw.begin(), raw.end(), 0L);
      for (std::size_t k = 0; k < members; ++k) {
        Transition t;
        t.name = "c" + std::to_string(g) + "_" + std::to_string(k);
        t.label = t.name;
        const Rational w = Rational(raw[k]) / total;
        t.owner = ChanceOwner{"g" + std::to_string(g), w};
        t.pre.assign(n, 0);
        t.post.assign(n, 0);
        RandomArcs(net, game_places, t.pre, 0, 1);
        RandomArcs(net, game_places, t.post, 1, 1);
        net.transitions.push_back(std::move(t));
      }
    }

    const std::size_t free_players =
        params_.constant_sum ? params_.players - 1 : params_.players;
    AffineForm sum;
    for (std::size_t i = 0; i < free_players; ++i) {
      AffineForm form;
      form.constant = Uniform<long>(-2, 2);
      const std::size_t terms =
          Uniform<std::size_t>(1, std::min<std::size_t>(3, game_places));
      for (std::size_t p : Sample(game_places, terms)) {
        long c = 0;
        while (c == 0) c = Uniform<long>(-3, 3);
        form.weights[net.places[p].name] = c;
      }
      sum.constant += form.constant;
      for (const auto& [place, w] : form.weights) sum.weights[place] += w;
      d.payoffs[net.players[i]] = std::move(form);
    }
    if (params_.constant_sum) {
      AffineForm last;
      last.constant = -sum.constant;
      for (const auto& [place, w] : sum.weights) {
        if (sgn(w) != 0) last.weights[place] = -w;
      }
      d.payoffs[net.players.back()] = std::move(last);
    }

    std::vector<Predicate> atoms;
    const std::size_t count = Uniform<std::size_t>(1, 2);
    for (std::size_t p : Sample(game_places, std::min(count, game_places))) {
      atoms.push_back(RandomAtom(net.places[p]));
    }
    d.terminal = atoms.size() == 1 ? atoms.front() : Predicate::Or(atoms);
    return d;
  }

  Predicate RandomAtom(const Place& place) {
    static constexpr Comparison kOps[] = {
        Comparison::kLess, Comparison::kLessEqual, Comparison::kEqual,
        Comparison::kGreaterEqual, Comparison::kGreater};
    return Predicate::Atom(place.name, kOps[Uniform<std::size_t>(0, 4)],
                           Uniform<TokenCount>(0, place.bound));
  }

  template <typename T>
  T Uniform(T lo, T hi) {
    return std::uniform_int_distribution<T>(lo, hi)(rng_);
  }

  bool Coin() { return Uniform<int>(0, 1) == 1; }

  std::vector<std::size_t> Sample(std::size_t n, std::size_t k) {
    std::vector<std::size_t> all(n);
    std::iota(all.begin(), all.end(), 0);
    std::shuffle(all.begin(), all.end(), rng_);
    all.resize(k);
    std::sort(all.begin(), all.end());
    return all;
  }

 private:
  void RandomArcs(const Net& net, std::size_t game_places,
                  std::vector<TokenCount>& arcs, std::size_t lo,
                  std::size_t hi) {
    const std::size_t k =
        Uniform<std::size_t>(lo, std::min(hi, game_places));
    for (std::size_t p : Sample(game_places, k)) {
      arcs[p] = Uniform<TokenCount>(1, net.places[p].bound);
    }
  }

  template <typename TurnOf>
  void PassTurn(Transition& t, std::size_t owner, TurnOf turn_of) {
    const std::size_t next = (owner + 1) % params_.players;
    t.pre[turn_of(owner)] = 1;
    t.post[turn_of(next)] = 1;
  }

  const GenParams& params_;
  std::mt19937_64& rng_;
};

bool Acceptable(const GameDescription& d, const GameTree& tree) {
  if (tree.num_info_sets() == 0) return false;
  for (std::size_t k = 0; k < tree.num_outcomes(); ++k) {
    if (EvaluateTerminal(d, tree.outcome_by_id(k).marking)) return true;
  }
  return false;
}

}  // namespace

GameDescription Generate(const GenParams& params) {
  CheckGenParams(params);
  std::mt19937_64 rng(params.seed);
  Builder builder(params, rng);
  UnfoldOptions options;
  options.node_budget = params.node_budget;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    GameDescription d = builder.Build();
    if (!Validate(d).empty()) continue;
    try {
      GameTree tree = Unfold(d, options);
      if (tree.num_info_sets() == 0) continue;
      if (Acceptable(d, tree)) return d;
      // Repair: make the marking of some horizon leaf terminal too. Extra
      // terminal conditions only prune the tree.
      const auto& m =
          tree.outcome_by_id(builder.Uniform<std::size_t>(0, tree.num_outcomes() - 1))
              .marking;
      const std::size_t place = builder.Uniform<std::size_t>(0, m.size() - 1);
      Predicate atom = Predicate::Atom(d.net.places[place].name,
                                       Comparison::kEqual, m[place]);
      if (d.terminal.kind == Predicate::Kind::kOr) {
        d.terminal.operands.push_back(std::move(atom));
      } else {
        d.terminal = Predicate::Or({d.terminal, std::move(atom)});
      }
      tree = Unfold(d, options);
      if (Acceptable(d, tree)) return d;
    } catch (const BudgetExceeded&) {
    }
  }
  throw Error("no generated description met the constraints after " +
              std::to_string(kAttempts) + " attempts; try a larger node "
              "budget or fewer transitions");
}

GameDescription NimDescription(const std::vector<TokenCount>& heaps) {
  if (heaps.empty()) throw std::invalid_argument("Nim needs at least one heap");
  GameDescription d;
  d.title = "Nim";
  std::uint32_t total = 0;
  for (std::size_t i = 0; i < heaps.size(); ++i) {
    d.title += (i ? "-" : " ") + std::to_string(heaps[i]);
    total += heaps[i];
  }
  d.chronon_ms = 1000;
  d.horizon = std::max<std::uint32_t>(total, 1);
  Net& net = d.net;
  net.players = {"P1", "P2"};
  for (std::size_t i = 0; i < heaps.size(); ++i) {
    Place heap;
    heap.name = "heap" + std::to_string(i + 1);
    heap.bound = std::max<TokenCount>(heaps[i], 1);
    heap.initial = heaps[i];
    heap.visible_to = {"P1", "P2"};
    net.places.push_back(std::move(heap));
  }
  for (int i = 1; i <= 2; ++i) {
    Place turn;
    turn.name = "turn" + std::to_string(i);
    turn.bound = 1;
    turn.initial = i == 1 ? 1 : 0;
    turn.visible_to = {"P1", "P2"};
    net.places.push_back(std::move(turn));
  }
  const std::size_t n = net.places.size();
  const std::size_t turn1 = heaps.size(), turn2 = heaps.size() + 1;
  for (int me = 0; me < 2; ++me) {
    for (std::size_t i = 0; i < heaps.size(); ++i) {
      for (TokenCount k = 1; k <= heaps[i]; ++k) {
        Transition t;
        t.name = "p" + std::to_string(me + 1) + "_take" + std::to_string(k) +
                 "_heap" + std::to_string(i + 1);
        t.owner = PlayerOwner{net.players[me]};
        t.pre.assign(n, 0);
        t.post.assign(n, 0);
        t.pre[i] = k;
        t.pre[me == 0 ? turn1 : turn2] = 1;
        t.post[me == 0 ? turn2 : turn1] = 1;
        t.label = "take " + std::to_string(k) + " from heap " +
                  std::to_string(i + 1);
        net.transitions.push_back(std::move(t));
      }
    }
  }
  // P1 wins when the game ends with the turn token at P2.
  AffineForm p1, p2;
  p1.constant = -1;
  p1.weights["turn2"] = 2;
  p2.constant = -1;
  p2.weights["turn1"] = 2;
  d.payoffs["P1"] = p1;
  d.payoffs["P2"] = p2;
  std::vector<Predicate> empty;
  for (std::size_t i = 0; i < heaps.size(); ++i) {
    empty.push_back(Predicate::Atom(net.places[i].name, Comparison::kEqual, 0));
  }
  d.terminal = empty.size() == 1 ? empty.front() : Predicate::And(empty);
  return d;
}

}  // namespace petrigame
