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


#include <cstdint>
#include <limits>

#include "doctest.h"
#include "petrigame/petri.h"

namespace petrigame {
namespace {

Net TwoPlaceNet() {
  Net net;
  net.players = {"A", "B"};
  net.places = {{"p", 2, 1, {"A"}}, {"q", 1, 0, {"A", "B"}}};
  net.transitions = {
      {"move", PlayerOwner{"A"}, {1, 0}, {0, 1}, "Move"},
      {"fill", PlayerOwner{"B"}, {0, 0}, {1, 0}, "Fill"},
      {"coin", ChanceOwner{"g", 1}, {0, 1}, {0, 0}, "coin"},
  };
  return net;
}

TEST_CASE("enabling needs tokens and room") {
  const Net net = TwoPlaceNet();
  const Marking m = InitialMarking(net);
  CHECK(m == Marking({1, 0}));
  CHECK(IsEnabled(net, m, 0));
  CHECK(IsEnabled(net, m, 1));
  CHECK_FALSE(IsEnabled(net, m, 2));
  // q already holds its bound, so move would overflow it.
  CHECK_FALSE(IsEnabled(net, Marking({1, 1}), 0));
  // p at bound: fill has no room.
  CHECK_FALSE(IsEnabled(net, Marking({2, 0}), 1));
}

TEST_CASE("fire moves tokens and rejects disabled transitions") {
  const Net net = TwoPlaceNet();
  CHECK(Fire(net, Marking({1, 0}), 0) == Marking({0, 1}));
  CHECK(Fire(net, Marking({0, 1}), 2) == Marking({0, 0}));
  CHECK_THROWS_AS(Fire(net, Marking({0, 0}), 0), NotEnabled);
}

TEST_CASE("self loop is enabled only when the pre tokens are present") {
  Net net;
  net.players = {"A"};
  net.places = {{"p", 1, 1, {}}};
  net.transitions = {{"loop", PlayerOwner{"A"}, {1}, {1}, "loop"}};
  CHECK(IsEnabled(net, Marking({1}), 0));
  CHECK(Fire(net, Marking({1}), 0) == Marking({1}));
  CHECK_FALSE(IsEnabled(net, Marking({0}), 0));
}

TEST_CASE("valid markings") {
  const Net net = TwoPlaceNet();
  CHECK(IsValidMarking(net, Marking({2, 1})));
  CHECK_FALSE(IsValidMarking(net, Marking({3, 0})));
  CHECK_FALSE(IsValidMarking(net, Marking({0})));
}

TEST_CASE("enabled transitions per player") {
  const Net net = TwoPlaceNet();
  CHECK(EnabledFor(net, Marking({1, 0}), "A") == std::vector<TransitionIndex>{0});
  CHECK(EnabledFor(net, Marking({0, 1}), "A").empty());
  CHECK(EnabledFor(net, Marking({0, 1}), "B") == std::vector<TransitionIndex>{1});
  CHECK_THROWS_AS(EnabledFor(net, Marking({0, 1}), "C"), UnknownPlayer);
}

TEST_CASE("lookups") {
  const Net net = TwoPlaceNet();
  CHECK(net.FindPlace("q") == PlaceIndex{1});
  CHECK_FALSE(net.FindPlace("r").has_value());
  CHECK(net.FindTransition("coin") == TransitionIndex{2});
  CHECK(net.FindPlayer("B") == std::size_t{1});
  CHECK(net.ChanceGroups() == std::vector<std::string>{"g"});
  CHECK(net.transitions[2].is_chance());
  CHECK(net.transitions[2].chance_group() == "g");
  CHECK(net.transitions[0].player() == "A");
}

TEST_CASE("state space bound") {
  Net net = TwoPlaceNet();
  CHECK(StateSpaceBound(net) == 6);
  net.places.assign(80, Place{"x", 7, 0, {}});
  CHECK(StateSpaceBound(net) == std::numeric_limits<std::uint64_t>::max());
}

}  // namespace
}  // namespace petrigame
