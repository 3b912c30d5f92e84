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

#include "petrigame/petri.h"

#include <algorithm>
#include <limits>

namespace petrigame {

std::string_view Transition::player() const {
  if (const auto* p = std::get_if<PlayerOwner>(&owner)) return p->player;
  return {};
}

std::string_view Transition::chance_group() const {
  if (const auto* c = std::get_if<ChanceOwner>(&owner)) return c->group;
  return {};
}

std::optional<PlaceIndex> Net::FindPlace(std::string_view name) const {
  for (PlaceIndex i = 0; i < places.size(); ++i) {
    if (places[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<TransitionIndex> Net::FindTransition(
    std::string_view name) const {
  for (TransitionIndex i = 0; i < transitions.size(); ++i) {
    if (transitions[i].name == name) return i;
  }
  return std::nullopt;
}

std::optional<std::size_t> Net::FindPlayer(std::string_view name) const {
  for (std::size_t i = 0; i < players.size(); ++i) {
    if (players[i] == name) return i;
  }
  return std::nullopt;
}

std::vector<std::string> Net::ChanceGroups() const {
  std::vector<std::string> groups;
  for (const Transition& t : transitions) {
    if (!t.is_chance()) continue;
    std::string group(t.chance_group());
    if (std::find(groups.begin(), groups.end(), group) == groups.end()) {
      groups.push_back(std::move(group));
    }
  }
  return groups;
}

std::string ToString(const Marking& m) {
  std::string out = "[";
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(m[i]);
  }
  return out + "]";
}

Marking InitialMarking(const Net& net) {
  Marking m;
  m.tokens.reserve(net.places.size());
  for (const Place& p : net.places) m.tokens.push_back(p.initial);
  return m;
}

bool IsValidMarking(const Net& net, const Marking& m) {
  if (m.size() != net.places.size()) return false;
  for (PlaceIndex p = 0; p < m.size(); ++p) {
    if (m[p] > net.places[p].bound) return false;
  }
  return true;
}

bool IsEnabled(const Net& net, const Marking& m, TransitionIndex t) {
  const Transition& tr = net.transitions[t];
  for (PlaceIndex p = 0; p < m.size(); ++p) {
    if (m[p] < tr.pre[p]) return false;
    // 64-bit so that large arc weights cannot wrap.
    const std::uint64_t after =
        std::uint64_t{m[p]} - tr.pre[p] + std::uint64_t{tr.post[p]};
    if (after > net.places[p].bound) return false;
  }
  return true;
}

Marking Fire(const Net& net, const Marking& m, TransitionIndex t) {
  if (!IsEnabled(net, m, t)) {
    throw NotEnabled("transition '" + net.transitions[t].name +
                     "' is not enabled at " + ToString(m));
  }
  const Transition& tr = net.transitions[t];
  Marking next = m;
  for (PlaceIndex p = 0; p < next.size(); ++p) {
    next[p] = next[p] - tr.pre[p] + tr.post[p];
  }
  return next;
}

std::vector<TransitionIndex> EnabledFor(const Net& net, const Marking& m,
                                        std::string_view player) {
  if (!net.FindPlayer(player)) {
    throw UnknownPlayer("unknown player '" + std::string(player) + "'");
  }
  std::vector<TransitionIndex> enabled;
  for (TransitionIndex t = 0; t < net.transitions.size(); ++t) {
    const Transition& tr = net.transitions[t];
    if (!tr.is_chance() && tr.player() == player && IsEnabled(net, m, t)) {
      enabled.push_back(t);
    }
  }
  return enabled;
}

std::uint64_t StateSpaceBound(const Net& net) {
  constexpr std::uint64_t kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t total = 1;
  for (const Place& p : net.places) {
    const std::uint64_t factor = std::uint64_t{p.bound} + 1;
    if (total > kMax / factor) return kMax;
    total *= factor;
  }
  return total;
}

}  // namespace petrigame
