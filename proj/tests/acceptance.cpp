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

// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// fails. Time limits are part of each criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <boost/asio/io_context.hpp>

#include "json.hpp"
#include "oracles.h"
#include "petrigame/gdl.h"
#include "petrigame/gen.h"
#include "petrigame/petri.h"
#include "petrigame/server.h"
#include "petrigame/session.h"
#include "petrigame/solve.h"
#include "petrigame/unfold.h"
#include "ws_client.h"

namespace petrigame {
namespace {

using nlohmann::json;
using Clock = std::chrono::steady_clock;

const std::string kSource = PETRIGAME_SOURCE_DIR;

struct Verdict {
  bool pass = true;
  std::string detail;
};

// Records the first failure; later ones are counted.
class Check {
 public:
  void Expect(bool ok, const std::string& what) {
    if (ok) return;
    if (failures_++ == 0) first_ = what;
  }
  Verdict Result(const std::string& detail) const {
    if (failures_ == 0) return {true, detail};
    return {false, first_ + (failures_ > 1 ? " (+" + std::to_string(failures_ - 1) +
                                                 " more failures)"
                                           : "")};
  }

 private:
  int failures_ = 0;
  std::string first_;
};

GameDescription Corpus(const std::string& name) {
  return ParseFile(kSource + "/corpus/" + name + ".game");
}

std::vector<std::string> CorpusFiles() {
  std::vector<std::string> files;
  for (const auto& e : std::filesystem::directory_iterator(kSource + "/corpus")) {
    if (e.path().extension() == ".game") files.push_back(e.path().string());
  }
  std::sort(files.begin(), files.end());
  return files;
}

Net RandomNet(std::mt19937_64& rng) {
  auto uniform = [&rng](int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(rng);
  };
  Net net;
  net.players = {"P1"};
  const int places = uniform(1, 6);
  for (int q = 0; q < places; ++q) {
    Place p;
    p.name = "q" + std::to_string(q);
    p.bound = static_cast<TokenCount>(uniform(1, 4));
    p.initial = static_cast<TokenCount>(uniform(0, static_cast<int>(p.bound)));
    net.places.push_back(p);
  }
  const int transitions = uniform(1, 6);
  for (int t = 0; t < transitions; ++t) {
    Transition tr;
    tr.name = "t" + std::to_string(t);
    tr.owner = PlayerOwner{"P1"};
    tr.label = tr.name;
    for (const Place& p : net.places) {
      tr.pre.push_back(uniform(0, 2) == 0 ? static_cast<TokenCount>(uniform(0, p.bound)) : 0);
      tr.post.push_back(uniform(0, 2) == 0 ? static_cast<TokenCount>(uniform(0, p.bound)) : 0);
    }
    net.transitions.push_back(tr);
  }
  return net;
}

Verdict FiringSemantics() {
  Check check;
  std::mt19937_64 rng(20260101);
  std::size_t firings = 0, monotone = 0;
  for (int n = 0; n < 1000; ++n) {
    const Net net = RandomNet(rng);
    // The same net with every arc reversed.
    Net reversed = net;
    for (Transition& t : reversed.transitions) std::swap(t.pre, t.post);
    for (int trial = 0; trial < 20; ++trial) {
      Marking m;
      for (const Place& p : net.places) {
        m.tokens.push_back(std::uniform_int_distribution<TokenCount>(0, p.bound)(rng));
      }
      for (TransitionIndex t = 0; t < net.transitions.size(); ++t) {
        const Transition& tr = net.transitions[t];
        bool expect = true;
        Marking after = m;
        for (std::size_t q = 0; q < m.size(); ++q) {
          if (m[q] < tr.pre[q] || m[q] - tr.pre[q] + tr.post[q] > net.places[q].bound) {
            expect = false;
          } else {
            after[q] = m[q] - tr.pre[q] + tr.post[q];
          }
        }
        check.Expect(IsEnabled(net, m, t) == expect, "enabling disagrees with m >= pre and bound");
        if (!expect) {
          bool threw = false;
          try {
            Fire(net, m, t);
          } catch (const NotEnabled&) {
            threw = true;
          }
          check.Expect(threw, "firing a disabled transition did not throw NotEnabled");
          continue;
        }
        ++firings;
        const Marking fired = Fire(net, m, t);
        check.Expect(fired == after, "fire != m - pre + post");
        check.Expect(IsValidMarking(net, fired), "firing broke a bound");
        check.Expect(IsEnabled(reversed, fired, t) && Fire(reversed, fired, t) == m,
                     "reverse firing is not the identity");
        // Any larger marking that still respects bounds after firing.
        Marking bigger = m;
        bool fits = true;
        for (std::size_t q = 0; q < m.size(); ++q) {
          bigger[q] = std::uniform_int_distribution<TokenCount>(m[q], net.places[q].bound)(rng);
          fits &= bigger[q] - tr.pre[q] + tr.post[q] <= net.places[q].bound;
        }
        if (fits) {
          ++monotone;
          check.Expect(IsEnabled(net, bigger, t), "enabling is not monotone");
        }
      }
    }
  }
  return check.Result("1000 nets, " + std::to_string(firings) + " firings, " +
                      std::to_string(monotone) + " monotonicity probes");
}

Verdict ParserRoundTrip() {
  Check check;
  std::vector<std::string> texts;
  for (const std::string& file : CorpusFiles()) {
    const std::string text = ReadTextFile(file);
    texts.push_back(text);
    const GameDescription d = Parse(text);
    check.Expect(Parse(Serialize(d)) == d, "corpus round trip: " + file);
  }
  for (std::uint64_t s = 1; s <= 1000; ++s) {
    GenParams p;
    p.seed = s;
    p.players = 2 + s % 2;
    p.chance_groups = s % 3;
    p.perfect_information = s % 5 == 0;
    p.constant_sum = s % 7 == 0;
    const GameDescription d = Generate(p);
    const std::string text = Serialize(d);
    check.Expect(Validate(d).empty(), "generated description has diagnostics");
    check.Expect(Parse(text) == d, "gen round trip, seed " + std::to_string(s));
    check.Expect(Serialize(Parse(text)) == text, "serialize not canonical, seed " + std::to_string(s));
  }
  std::mt19937_64 rng(7);
  std::size_t accepted = 0;
  for (int i = 0; i < 100000; ++i) {
    std::string input;
    if (i % 2 == 0) {
      input.resize(std::uniform_int_distribution<std::size_t>(0, 200)(rng));
      for (char& c : input) c = static_cast<char>(rng() & 0xFF);
    } else {
      input = texts[rng() % texts.size()];
      const int edits = 1 + static_cast<int>(rng() % 4);
      for (int e = 0; e < edits && !input.empty(); ++e) {
        const std::size_t at = rng() % input.size();
        switch (rng() % 3) {
          case 0: input[at] = static_cast<char>(rng() & 0xFF); break;
          case 1: input.erase(at, 1 + rng() % 8); break;
          default: input.insert(at, 1, "{}:,=/\"-#0"[rng() % 10]); break;
        }
      }
    }
    try {
      const GameDescription d = Parse(input);
      Validate(d);
      ++accepted;
    } catch (const ParseError&) {
    } catch (const std::exception& e) {
      check.Expect(false, std::string("parser threw a non-ParseError: ") + e.what());
    }
  }
  return check.Result(std::to_string(texts.size()) + " corpus + 1000 generated round trips; " +
                      "100000 fuzz inputs (" + std::to_string(accepted) + " parsed)");
}

Verdict UnfoldPlayout() {
  Check check;
  std::size_t leaves = 0;
  for (const std::string& file : CorpusFiles()) {
    const GameDescription desc = ParseFile(file);
    UnfoldOptions options;
    options.node_budget = 2'000'000;
    const GameTree tree = Unfold(desc, options);
    const Marking start = InitialMarking(desc.net);
    ForEachLeafPath(tree, [&](const std::vector<NodeId>& path) {
      ++leaves;
      Marking m = start;
      for (const ChrononMove& move : PathHistory(tree, desc, path)) {
        m = ChrononStep(desc, m, move.joint, move.chance);
      }
      const Outcome& o = tree.outcome(path.back());
      check.Expect(m == o.marking, "leaf marking differs from playout in " + file);
      check.Expect(EvaluatePayoffs(desc, m) == o.payoffs,
                   "leaf payoffs differ from playout in " + file);
    });
  }
  return check.Result(std::to_string(leaves) + " leaves replayed");
}

Verdict MatchingPennies() {
  Check check;
  const GameDescription desc = Corpus("matching_pennies");
  const GameTree tree = Unfold(desc);
  std::size_t p2_sets = 0;
  for (const auto& members : tree.InfoSetMembers()) {
    if (tree.info_set_player(tree.node(members.front()).data) == 1) {
      ++p2_sets;
      check.Expect(members.size() == 2, "P2 info set does not pool both nodes");
    }
  }
  check.Expect(p2_sets == 1, "P2 has " + std::to_string(p2_sets) + " info sets");
  NormalForm nf = ToNormalForm(tree);
  check.Expect(PureNash(nf).empty(), "matching pennies has a pure equilibrium");

  const Equilibrium eq = ZeroSumValue(tree);
  const auto& probs = std::get<BehaviorProfile>(eq.profile).probabilities;
  const auto table = testing::OneShotTable(desc);
  const auto oracle = testing::SolveTwoByTwo(table.payoff.at({0, 0})[0], table.payoff.at({0, 1})[0],
                                             table.payoff.at({1, 0})[0], table.payoff.at({1, 1})[0]);
  check.Expect(oracle.has_value(), "oracle found a saddle point");
  check.Expect(eq.values[0] == 0 && eq.values[1] == 0, "value is not 0");
  if (oracle) check.Expect(eq.values[0] == oracle->value, "value disagrees with 2x2 oracle");
  const Rational half(1, 2);
  for (const auto& dist : probs) {
    check.Expect(dist.size() == 2 && dist[0] == half && dist[1] == half,
                 "behaviour strategy is not (1/2, 1/2)");
  }
  check.Expect(probs.size() == 2, "expected one info set per player");
  if (oracle) {
    check.Expect(oracle->row_first == half && oracle->column_first == half,
                 "oracle strategies are not (1/2, 1/2)");
  }
  return check.Result("value " + ToString(eq.values[0]) + ", strategies (1/2,1/2) x2, "
                      "P2 info set of size 2, no pure equilibrium");
}

Verdict PrisonersDilemma() {
  Check check;
  const GameDescription desc = Corpus("prisoners_dilemma");
  const GameTree tree = Unfold(desc);
  NormalForm nf = ToNormalForm(tree);
  nf.title = desc.title;
  const auto eqs = PureNash(nf);
  check.Expect(eqs.size() == 1, std::to_string(eqs.size()) + " pure equilibria");
  if (eqs.size() == 1) {
    check.Expect(ToString(nf, eqs.front()) == "(Defect,Defect)",
                 "equilibrium is " + ToString(nf, eqs.front()));
  }
  const auto table = testing::OneShotTable(desc);
  const auto oracle = testing::BruteForcePureNash(table);
  check.Expect(oracle.size() == 1, "oracle finds " + std::to_string(oracle.size()) + " equilibria");
  if (oracle.size() == 1 && eqs.size() == 1) {
    const auto& o = oracle.front();
    for (std::size_t p = 0; p < 2; ++p) {
      const std::string oracle_label = desc.net.transitions[table.moves[p][o[p]]].label;
      check.Expect(oracle_label == nf.strategy_labels[p][eqs.front().strategies[p]],
                   "oracle and solver disagree for player " + std::to_string(p + 1));
    }
    check.Expect(table.payoff.at(o) == nf.payoffs[nf.ProfileIndex(eqs.front().strategies)],
                 "equilibrium payoffs differ from the oracle");
  }
  return check.Result("{(Defect,Defect)} confirmed by brute-force deviations");
}

Verdict NimOracle() {
  Check check;
  std::size_t configs = 0;
  std::uint64_t nodes = 0;
  // Heap order does not change the game, so each multiset is solved once.
  std::vector<std::vector<TokenCount>> all;
  for (TokenCount a = 1; a <= 5; ++a) {
    all.push_back({a});
    for (TokenCount b = a; b <= 5; ++b) {
      all.push_back({a, b});
      for (TokenCount c = b; c <= 5; ++c) all.push_back({a, b, c});
    }
  }
  for (const auto& heaps : all) {
    UnfoldOptions options;
    options.node_budget = 100'000'000;
    const GameTree tree = Unfold(NimDescription(heaps), options);
    nodes += tree.size();
    const Equilibrium eq = BackwardInduction(tree);
    const bool solver = eq.values[0] == 1;
    const std::vector<int> h(heaps.begin(), heaps.end());
    const bool minimax = testing::NimMoverWins(h);
    const bool xor_rule = testing::NimXorRule(h);
    std::string name;
    for (TokenCount x : heaps) name += std::to_string(x);
    check.Expect(solver == minimax, "solver disagrees with minimax on " + name);
    check.Expect(solver == xor_rule, "solver disagrees with xor rule on " + name);
    check.Expect(eq.values[0] + eq.values[1] == 0, "Nim values do not sum to 0");
    ++configs;
  }
  return check.Result(std::to_string(configs) + " heap multisets, " + std::to_string(nodes) +
                      " nodes solved");
}

Verdict CrossSolver() {
  Check check;
  std::size_t largest = 0, total = 0;
  for (std::uint64_t s = 1; s <= 200; ++s) {
    GenParams p;
    p.seed = s;
    p.perfect_information = true;
    p.constant_sum = true;
    p.node_budget = 500;
    p.horizon = 4;
    p.chance_groups = s % 2;
    const GameDescription d = Generate(p);
    const GameTree tree = Unfold(d);
    check.Expect(tree.size() <= 500, "generated tree over 500 nodes");
    largest = std::max(largest, tree.size());
    total += tree.size();
    const Equilibrium bi = BackwardInduction(tree);
    const Equilibrium zs = ZeroSumValue(tree);
    check.Expect(bi.values == zs.values, "values differ on seed " + std::to_string(s) + ": " +
                                             ToString(bi.values) + " vs " + ToString(zs.values));
  }
  return check.Result("200 games, mean " + std::to_string(total / 200) + " nodes, largest " +
                      std::to_string(largest));
}

Verdict Compactness() {
  Check check;
  std::vector<std::size_t> bytes, nodes;
  std::vector<TokenCount> heaps;
  for (int h = 1; h <= 3; ++h) {
    heaps.push_back(4);
    const GameDescription d = NimDescription(heaps);
    bytes.push_back(Serialize(d).size());
    nodes.push_back(Unfold(d, UnfoldOptions{10'000'000}).size());
  }
  // At most linear: bytes(h) <= h * bytes(1).
  for (int h = 1; h <= 3; ++h) {
    check.Expect(bytes[h - 1] <= static_cast<std::size_t>(h) * bytes[0],
                 "description grows faster than linearly at h=" + std::to_string(h));
  }
  for (int h = 1; h < 3; ++h) {
    check.Expect(nodes[h] >= 5 * nodes[h - 1],
                 "node count grows by less than 5x at h=" + std::to_string(h + 1));
  }
  std::ostringstream out;
  out << "bytes " << bytes[0] << "/" << bytes[1] << "/" << bytes[2] << ", nodes " << nodes[0]
      << "/" << nodes[1] << "/" << nodes[2];
  return check.Result(out.str());
}

Verdict GoldenFiles() {
  Check check;
  for (const auto& [game, stem] : {std::pair{"prisoners_dilemma", "pd"},
                                   std::pair{"matching_pennies", "mp"}}) {
    const GameDescription desc = Corpus(game);
    const GameTree tree = Unfold(desc);
    NormalForm nf = ToNormalForm(tree);
    nf.title = desc.title;
    const std::string dir = kSource + "/tests/golden/";
    check.Expect(ExportEfg(tree, desc.title) == ReadTextFile(dir + stem + ".efg"),
                 std::string(stem) + ".efg differs from golden");
    check.Expect(ExportNfg(nf) == ReadTextFile(dir + stem + ".nfg"),
                 std::string(stem) + ".nfg differs from golden");
  }
  return check.Result("pd.efg pd.nfg mp.efg mp.nfg byte-identical");
}

// Plays a seat with a uniform-random policy. At `late_chronon` the action is
// sent 30 ms after the deadline.
struct SeatResult {
  std::vector<json> rejected;
  std::optional<json> end;
};

SeatResult PlaySeat(std::uint16_t port, const std::string& session, const std::string& seat,
                    std::uint64_t seed, std::optional<std::uint32_t> late_chronon) {
  SeatResult result;
  testing::WsClient client("127.0.0.1", port);
  client.Send({{"type", "join"}, {"protocol", kProtocolVersion}, {"session", session},
               {"role", "player"}, {"seat", seat}});
  std::mt19937_64 rng(seed);
  while (auto m = client.Receive()) {
    const std::string type = m->value("type", "");
    if (type == "tick") {
      const auto& actions = (*m)["actions"];
      if (actions.empty()) continue;
      const auto chronon = (*m)["chronon"].get<std::uint32_t>();
      const std::string name =
          actions[rng() % actions.size()]["name"].get<std::string>();
      if (late_chronon && chronon == *late_chronon) {
        const auto now = std::chrono::duration_cast<std::chrono::milliseconds>(
                             std::chrono::system_clock::now().time_since_epoch())
                             .count();
        const auto wait = (*m)["deadline"].get<std::int64_t>() - now + 30;
        std::this_thread::sleep_for(std::chrono::milliseconds(std::max<std::int64_t>(0, wait)));
      }
      client.Send({{"type", "action"}, {"transition", name}, {"chronon", chronon}});
    } else if (type == "rejected") {
      result.rejected.push_back(*m);
    } else if (type == "end") {
      result.end = *m;
      break;
    } else if (type == "error") {
      result.rejected.push_back(*m);
    }
  }
  return result;
}

Verdict ServerEquidistance() {
  Check check;
  const GameDescription desc = ParseFile(kSource + "/tests/data/tug_of_war.game");
  boost::asio::io_context io;
  ServerConfig config;
  config.port = 0;
  config.chronon_ms = 100;
  Server server(io, config);
  const std::uint16_t port = server.Listen();
  server.on_finished = [&](const Session&) { server.Stop(); };
  const std::string id =
      server.CreateSession(desc, {{"P1", SeatKind::kHuman}, {"P2", SeatKind::kHuman}}, 11);
  std::thread io_thread([&io] { io.run(); });
  SeatResult p1, p2;
  std::thread t1([&] { p1 = PlaySeat(port, id, "P1", 1, 5u); });
  std::thread t2([&] { p2 = PlaySeat(port, id, "P2", 2, std::nullopt); });
  t1.join();
  t2.join();
  io_thread.join();

  const auto& ticks = server.TickTimes(id);
  check.Expect(ticks.size() >= 20, "only " + std::to_string(ticks.size()) + " ticks");
  double worst = 0;
  for (std::size_t i = 1; i < ticks.size(); ++i) {
    const double ms = std::chrono::duration<double, std::milli>(ticks[i] - ticks[i - 1]).count();
    worst = std::max(worst, std::abs(ms - 100));
    check.Expect(std::abs(ms - 100) <= 20,
                 "tick interval " + std::to_string(ms) + " ms outside 100 +- 20");
  }
  check.Expect(p1.end.has_value() && p2.end.has_value(), "a seat never received End");
  bool late = false;
  for (const json& r : p1.rejected) {
    late |= r.value("reason", "") == "late" && r.value("chronon", 0u) == 5u;
  }
  check.Expect(late, "late action at chronon 5 was not Rejected(late)");
  check.Expect(p2.rejected.empty(), "on-time seat saw rejections");
  bool late_logged = false, noop_logged = false;
  for (const std::string& line : server.FindSession(id)->log_lines()) {
    const json r = json::parse(line);
    if (r.value("event", "") == "action-rejected" &&
        r["payload"].value("reason", "") == "late") {
      late_logged = true;
    }
    if (r.value("event", "") == "state" && r.value("chronon", 0u) == 5u) {
      noop_logged = r["payload"]["joint"]["P1"] == "noop";
    }
  }
  check.Expect(late_logged, "late rejection missing from the log");
  check.Expect(noop_logged, "chronon 5 log does not show noop for P1");
  std::ostringstream out;
  out << ticks.size() << " ticks over websocket, worst deviation " << worst
      << " ms, late action rejected, noop logged";
  return check.Result(out.str());
}

Verdict ReplayDeterminism() {
  Check check;
  const std::vector<std::string> games = {"prisoners_dilemma", "matching_pennies",
                                          "matching_pennies_open", "bluff"};
  std::vector<GameDescription> descs;
  std::vector<GameTree> trees;
  for (const std::string& g : games) {
    descs.push_back(Corpus(g));
    trees.push_back(Unfold(descs.back()));
  }
  for (std::uint64_t s = 0; s < 50; ++s) {
    const std::size_t g = s % games.size();
    const GameDescription& desc = descs[g];
    std::map<std::string, SeatKind> seats;
    for (const std::string& p : desc.players()) {
      seats[p] = (s / games.size()) % 3 == 2 && p == desc.players().front()
                     ? SeatKind::kFirstBot
                     : SeatKind::kRandomBot;
    }
    const SimulationResult run = SimulateSession(desc, seats, 1000 + s);
    std::istringstream log;
    std::string text;
    for (const std::string& line : run.log_lines) text += line + "\n";
    log.str(text);
    const ReplayResult replay = Replay(log, desc);
    const std::string tag = games[g] + " seed " + std::to_string(1000 + s);
    check.Expect(replay.payoffs == run.payoffs, "replay payoffs differ: " + tag);
    check.Expect(replay.logged_payoffs == run.payoffs, "logged End differs: " + tag);
    check.Expect(replay.history == run.history, "replayed moves differ: " + tag);
    for (std::size_t k = 0; k < run.history.size(); ++k) {
      check.Expect(ChrononStep(desc, run.markings[k], run.history[k].joint,
                               run.history[k].chance) == run.markings[k + 1],
                   "marking sequence is not a chronon_step chain: " + tag);
    }
    const auto leaf = FollowHistory(trees[g], run.history);
    check.Expect(leaf.has_value(), "session is not a root path of the tree: " + tag);
    if (leaf) {
      check.Expect(trees[g].outcome(*leaf).marking == run.markings.back() &&
                       trees[g].outcome(*leaf).payoffs == run.payoffs,
                   "tree leaf disagrees with the session: " + tag);
    }
  }
  return check.Result("50 sessions over 4 games: replay exact, every run a root path");
}

Verdict SimulationExpectation() {
  Check check;
  const GameDescription desc = Corpus("prisoners_dilemma");
  const GameTree tree = Unfold(desc);
  const std::vector<Rational> exact = ExpectedPayoffs(tree, UniformProfile(tree));
  check.Expect(exact == testing::UniformPlayExpectation(desc),
               "tree expectation disagrees with the marking-recursion oracle");
  constexpr int kN = 10000;
  std::vector<double> sum(2, 0), sum_sq(2, 0);
  const std::map<std::string, SeatKind> seats = {{"P1", SeatKind::kRandomBot},
                                                 {"P2", SeatKind::kRandomBot}};
  for (int i = 0; i < kN; ++i) {
    const SimulationResult r = SimulateSession(desc, seats, static_cast<std::uint64_t>(i));
    for (int p = 0; p < 2; ++p) {
      const double x = ToDouble(r.payoffs[p]);
      sum[p] += x;
      sum_sq[p] += x * x;
    }
  }
  std::ostringstream out;
  for (int p = 0; p < 2; ++p) {
    const double mean = sum[p] / kN;
    const double var = (sum_sq[p] - kN * mean * mean) / (kN - 1);
    const double se = std::sqrt(var / kN);
    const double z = (mean - ToDouble(exact[p])) / se;
    check.Expect(std::abs(z) <= 3, "player " + std::to_string(p + 1) + " is " +
                                       std::to_string(z) + " standard errors off");
    out << "P" << p + 1 << " mean " << mean << " vs " << ToString(exact[p]) << " (z=" << z
        << ") ";
  }
  return check.Result(out.str() + "over 10000 sessions");
}

struct Criterion {
  const char* name;
  double limit_s;
  std::function<Verdict()> run;
};

}  // namespace
}  // namespace petrigame

int main(int argc, char** argv) {
  using namespace petrigame;
  const std::vector<Criterion> criteria = {
      {"firing-semantics", 5, FiringSemantics},
      {"parser-round-trip", 30, ParserRoundTrip},
      {"unfold-playout", 5, UnfoldPlayout},
      {"matching-pennies", 1, MatchingPennies},
      {"prisoners-dilemma", 1, PrisonersDilemma},
      {"nim-oracle", 60, NimOracle},
      {"cross-solver", 120, CrossSolver},
      {"compactness", 0, Compactness},
      {"golden-files", 1, GoldenFiles},
      {"server-equidistance", 10, ServerEquidistance},
      {"replay-determinism", 60, ReplayDeterminism},
      {"simulation-expectation", 60, SimulationExpectation},
  };
  const std::string only = argc > 1 ? argv[1] : "";
  int failed = 0;
  for (const Criterion& c : criteria) {
    if (!only.empty() && only != c.name) continue;
    const auto start = Clock::now();
    Verdict v;
    try {
      v = c.run();
    } catch (const std::exception& e) {
      v = {false, std::string("threw: ") + e.what()};
    }
    const double seconds = std::chrono::duration<double>(Clock::now() - start).count();
    char timing[64];
    if (c.limit_s > 0) {
      std::snprintf(timing, sizeof timing, "%.2f s of %.0f s", seconds, c.limit_s);
      if (seconds >= c.limit_s && v.pass) {
        v = {false, v.detail + "; over the time limit"};
      }
    } else {
      std::snprintf(timing, sizeof timing, "%.2f s", seconds);
    }
    if (!v.pass) ++failed;
    std::cout << (v.pass ? "PASS " : "FAIL ") << c.name << ": " << v.detail << " [" << timing
              << "]" << std::endl;
  }
  std::cout << (failed ? "FAILED " : "ALL PASSED ") << "(" << failed << " failing)" << std::endl;
  return failed ? 1 : 0;
}
