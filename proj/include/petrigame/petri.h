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

#ifndef PETRIGAME_PETRI_H_
#define PETRIGAME_PETRI_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "petrigame/error.h"
#include "petrigame/rational.h"

namespace petrigame {

using PlaceIndex = std::size_t;
using TransitionIndex = std::size_t;
using TokenCount = std::uint32_t;

// Reserved owner name for chance transitions; never a player.
inline constexpr std::string_view kChancePlayer = "chance";

struct Place {
  std::string name;
  TokenCount bound = 1;
  TokenCount initial = 0;
  // Players that observe this place's token count.
  std::vector<std::string> visible_to;

  friend bool operator==(const Place&, const Place&) = default;
};

struct PlayerOwner {
  std::string player;
  friend bool operator==(const PlayerOwner&, const PlayerOwner&) = default;
};

// Within a chance group exactly one enabled member fires per chronon, drawn
// by weight.
struct ChanceOwner {
  std::string group;
  Rational weight;
  friend bool operator==(const ChanceOwner& a, const ChanceOwner& b) {
    return a.group == b.group && a.weight == b.weight;
  }
};

using Owner = std::variant<PlayerOwner, ChanceOwner>;

struct Transition {
  std::string name;
  Owner owner;
  // Arc weights, one entry per place.
  std::vector<TokenCount> pre;
  std::vector<TokenCount> post;
  std::string label;

  bool is_chance() const { return std::holds_alternative<ChanceOwner>(owner); }
  // Empty for chance transitions.
  std::string_view player() const;
  // Empty for player transitions.
  std::string_view chance_group() const;

  friend bool operator==(const Transition&, const Transition&) = default;
};

struct Net {
  std::vector<Place> places;
  std::vector<Transition> transitions;
  std::vector<std::string> players;

  std::optional<PlaceIndex> FindPlace(std::string_view name) const;
  std::optional<TransitionIndex> FindTransition(std::string_view name) const;
  std::optional<std::size_t> FindPlayer(std::string_view name) const;
  // Chance groups in order of first declaration.
  std::vector<std::string> ChanceGroups() const;

  friend bool operator==(const Net&, const Net&) = default;
};

// Game state: one natural-number token count per place.
struct Marking {
  std::vector<TokenCount> tokens;

  Marking() = default;
  explicit Marking(std::vector<TokenCount> t) : tokens(std::move(t)) {}

  std::size_t size() const { return tokens.size(); }
  TokenCount operator[](PlaceIndex p) const { return tokens[p]; }
  TokenCount& operator[](PlaceIndex p) { return tokens[p]; }

  friend bool operator==(const Marking&, const Marking&) = default;
  friend auto operator<=>(const Marking&, const Marking&) = default;
};

std::string ToString(const Marking& m);

Marking InitialMarking(const Net& net);

// Length matches the place count and every entry lies within its bound.
bool IsValidMarking(const Net& net, const Marking& m);

// m >= pre(t) componentwise and m - pre(t) + post(t) <= bounds componentwise.
bool IsEnabled(const Net& net, const Marking& m, TransitionIndex t);

// m - pre(t) + post(t). Throws NotEnabled when IsEnabled is false.
Marking Fire(const Net& net, const Marking& m, TransitionIndex t);

// Player-owned transitions of `player` enabled at m, in declaration order.
// Throws UnknownPlayer.
std::vector<TransitionIndex> EnabledFor(const Net& net, const Marking& m,
                                        std::string_view player);

// Upper bound on the number of distinct valid markings: prod(bound_i + 1).
// Saturates at UINT64_MAX.
std::uint64_t StateSpaceBound(const Net& net);

}  // namespace petrigame

#endif  // PETRIGAME_PETRI_H_
