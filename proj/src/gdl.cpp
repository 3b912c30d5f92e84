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

#include <algorithm>
#include <set>
#include <sstream>

#include "petrigame/gdl.h"

namespace petrigame {

std::string ToString(const Diagnostic& d) {
  std::ostringstream out;
  out << d.span.line << ":" << d.span.column << ": "
      << (d.severity == Severity::kError ? "error" : "warning") << ": "
      << d.message;
  return out.str();
}

bool HasErrors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(),
                     [](const Diagnostic& d) {
                       return d.severity == Severity::kError;
                     });
}

std::string_view ToString(Comparison op) {
  switch (op) {
    case Comparison::kLess:
      return "<";
    case Comparison::kLessEqual:
      return "<=";
    case Comparison::kEqual:
      return "=";
    case Comparison::kGreaterEqual:
      return ">=";
    case Comparison::kGreater:
      return ">";
  }
  return "?";
}

bool Compare(TokenCount lhs, Comparison op, TokenCount rhs) {
  switch (op) {
    case Comparison::kLess:
      return lhs < rhs;
    case Comparison::kLessEqual:
      return lhs <= rhs;
    case Comparison::kEqual:
      return lhs == rhs;
    case Comparison::kGreaterEqual:
      return lhs >= rhs;
    case Comparison::kGreater:
      return lhs > rhs;
  }
  return false;
}

Predicate Predicate::Atom(std::string place, Comparison op, TokenCount value) {
  Predicate p;
  p.kind = Kind::kCompare;
  p.place = std::move(place);
  p.op = op;
  p.value = value;
  return p;
}

Predicate Predicate::And(std::vector<Predicate> operands) {
  Predicate p;
  p.kind = Kind::kAnd;
  p.operands = std::move(operands);
  return p;
}

Predicate Predicate::Or(std::vector<Predicate> operands) {
  Predicate p;
  p.kind = Kind::kOr;
  p.operands = std::move(operands);
  return p;
}

namespace {

class Validator {
 public:
  explicit Validator(const GameDescription& desc) : desc_(desc) {}

  std::vector<Diagnostic> Run() {
    CheckHeader();
    CheckPlayers();
    CheckPlaces();
    CheckTransitions();
    CheckChanceGroups();
    CheckPayoffs();
    CheckPredicate(desc_.terminal);
    return std::move(diagnostics_);
  }

 private:
  SourceSpan Span(const std::string& key) const {
    auto it = desc_.spans.find(key);
    return it == desc_.spans.end() ? SourceSpan{} : it->second;
  }
  void Error(const std::string& key, std::string message) {
    diagnostics_.push_back(
        Diagnostic{Severity::kError, std::move(message), Span(key)});
  }
  void Warn(const std::string& key, std::string message) {
    diagnostics_.push_back(
        Diagnostic{Severity::kWarning, std::move(message), Span(key)});
  }
  bool IsPlayer(const std::string& name) const {
    return desc_.net.FindPlayer(name).has_value();
  }

  void CheckHeader() {
    if (desc_.chronon_ms < 1) Error("time", "chronon must be at least 1 ms");
    if (desc_.horizon < 1) Error("time", "horizon must be at least 1");
  }

  void CheckPlayers() {
    const auto& players = desc_.net.players;
    if (players.empty()) Error("players", "at least one player is required");
    std::set<std::string> seen;
    for (const std::string& p : players) {
      if (p == kChancePlayer) {
        Error("player:" + p, "'chance' is reserved and cannot be a player");
      }
      if (!seen.insert(p).second) {
        Error("player:" + p, "duplicate player '" + p + "'");
      }
    }
  }

  void CheckPlaces() {
    std::set<std::string> seen;
    for (const Place& place : desc_.net.places) {
      const std::string key = "place:" + place.name;
      if (!seen.insert(place.name).second) {
        Error(key, "duplicate place '" + place.name + "'");
      }
      if (place.bound < 1) {
        Error(key, "place '" + place.name + "' must have bound >= 1");
      }
      if (place.initial > place.bound) {
        Error(key, "place '" + place.name + "' starts with " +
                       std::to_string(place.initial) +
                       " tokens, above its bound " +
                       std::to_string(place.bound));
      }
      std::set<std::string> viewers;
      for (const std::string& viewer : place.visible_to) {
        if (!IsPlayer(viewer)) {
          Error("visible:" + place.name + ":" + viewer,
                "unknown player '" + viewer + "' in visibility of '" +
                    place.name + "'");
        }
        if (!viewers.insert(viewer).second) {
          Error(key, "player '" + viewer + "' listed twice in visibility of '" +
                         place.name + "'");
        }
      }
    }
  }

  void CheckTransitions() {
    const std::size_t n = desc_.net.places.size();
    std::set<std::string> seen;
    for (const Transition& t : desc_.net.transitions) {
      const std::string key = "transition:" + t.name;
      if (!seen.insert(t.name).second) {
        Error(key, "duplicate transition '" + t.name + "'");
      }
      if (t.name == "noop") {
        Error(key, "'noop' is reserved and cannot name a transition");
      }
      if (t.pre.size() != n || t.post.size() != n) {
        Error(key, "arc vectors of '" + t.name + "' do not match the place count");
        continue;
      }
      if (const auto* owner = std::get_if<PlayerOwner>(&t.owner)) {
        if (owner->player == kChancePlayer) {
          Error("owner:" + t.name,
                "chance transitions are declared with 'chance', not "
                "'owner chance'");
        } else if (!IsPlayer(owner->player)) {
          Error("owner:" + t.name, "unknown owner '" + owner->player +
                                       "' of transition '" + t.name + "'");
        }
      } else {
        const auto& chance = std::get<ChanceOwner>(t.owner);
        if (chance.weight <= 0) {
          Error("weight:" + t.name,
                "chance weight of '" + t.name + "' must be positive");
        }
      }
      for (PlaceIndex p = 0; p < n; ++p) {
        const TokenCount bound = desc_.net.places[p].bound;
        if (t.pre[p] > bound || t.post[p] > bound) {
          Warn(key, "transition '" + t.name + "' can never fire: arc weight on '" +
                        desc_.net.places[p].name + "' exceeds its bound");
          break;
        }
      }
    }
  }

  void CheckChanceGroups() {
    for (const std::string& group : desc_.net.ChanceGroups()) {
      Rational sum = 0;
      for (const Transition& t : desc_.net.transitions) {
        if (t.is_chance() && t.chance_group() == group) {
          sum += std::get<ChanceOwner>(t.owner).weight;
        }
      }
      if (sum != 1) {
        Error("group:" + group, "chance group '" + group +
                                    "': chance weights sum to " +
                                    ToString(sum) + " ≠ 1");
      }
    }
  }

  void CheckPayoffs() {
    for (const auto& [player, form] : desc_.payoffs) {
      if (!IsPlayer(player)) {
        Error("payoff:" + player, "payoff for unknown player '" + player + "'");
      }
      for (const auto& [place, weight] : form.weights) {
        if (!desc_.net.FindPlace(place)) {
          Error("payoff:" + player + ":" + place,
                "payoff of '" + player + "' references unknown place '" +
                    place + "'");
        }
      }
    }
    for (const std::string& player : desc_.net.players) {
      if (!desc_.payoffs.count(player)) {
        Warn("player:" + player,
             "no payoff for player '" + player + "'; it defaults to 0");
      }
    }
  }

  void CheckPredicate(const Predicate& p) {
    switch (p.kind) {
      case Predicate::Kind::kCompare:
        if (!desc_.net.FindPlace(p.place)) {
          Error("terminal:" + p.place,
                "terminal predicate references unknown place '" + p.place +
                    "'");
        }
        break;
      case Predicate::Kind::kAnd:
      case Predicate::Kind::kOr:
        if (p.operands.empty()) {
          Error("terminal", "empty conjunction or disjunction");
        }
        for (const Predicate& q : p.operands) CheckPredicate(q);
        break;
      default:
        break;
    }
  }

  const GameDescription& desc_;
  std::vector<Diagnostic> diagnostics_;
};

std::string Quote(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

std::string JoinSorted(std::vector<std::string> names) {
  std::sort(names.begin(), names.end());
  std::string out;
  for (std::size_t i = 0; i < names.size(); ++i) {
    if (i > 0) out += ", ";
    out += names[i];
  }
  return out;
}

std::string Arcs(const Net& net, const std::vector<TokenCount>& weights) {
  std::vector<std::pair<std::string, TokenCount>> arcs;
  for (PlaceIndex p = 0; p < weights.size(); ++p) {
    if (weights[p] > 0) arcs.emplace_back(net.places[p].name, weights[p]);
  }
  std::sort(arcs.begin(), arcs.end());
  std::string out = "{";
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (i > 0) out += ", ";
    out += arcs[i].first + ":" + std::to_string(arcs[i].second);
  }
  return out + "}";
}

std::string Affine(const AffineForm& form) {
  std::string out = ToString(form.constant);
  for (const auto& [place, weight] : form.weights) {
    if (weight < 0) {
      out += " - " + ToString(Rational(-weight)) + "*" + place;
    } else {
      out += " + " + ToString(weight) + "*" + place;
    }
  }
  return out;
}

std::string PredicateText(const Predicate& p, Predicate::Kind parent) {
  using Kind = Predicate::Kind;
  switch (p.kind) {
    case Kind::kTrue:
      return "true";
    case Kind::kFalse:
      return "false";
    case Kind::kCompare:
      return "tokens(" + p.place + ") " + std::string(ToString(p.op)) + " " +
             std::to_string(p.value);
    case Kind::kAnd:
    case Kind::kOr: {
      const char* sep = p.kind == Kind::kAnd ? " and " : " or ";
      std::string body;
      for (std::size_t i = 0; i < p.operands.size(); ++i) {
        if (i > 0) body += sep;
        body += PredicateText(p.operands[i], p.kind);
      }
      // An operand of an 'and' that is an 'or' needs parentheses, and a
      // nested group of the same kind keeps its grouping.
      const bool wrap = parent == Kind::kAnd || parent == p.kind;
      return wrap ? "(" + body + ")" : body;
    }
  }
  return "false";
}

bool Holds(const Predicate& p, const Net& net, const Marking& m) {
  using Kind = Predicate::Kind;
  switch (p.kind) {
    case Kind::kTrue:
      return true;
    case Kind::kFalse:
      return false;
    case Kind::kCompare: {
      auto place = net.FindPlace(p.place);
      return place && Compare(m[*place], p.op, p.value);
    }
    case Kind::kAnd:
      return std::all_of(p.operands.begin(), p.operands.end(),
                         [&](const Predicate& q) { return Holds(q, net, m); });
    case Kind::kOr:
      return std::any_of(p.operands.begin(), p.operands.end(),
                         [&](const Predicate& q) { return Holds(q, net, m); });
  }
  return false;
}

}  // namespace

std::vector<Diagnostic> Validate(const GameDescription& desc) {
  return Validator(desc).Run();
}

void ValidateOrThrow(const GameDescription& desc) {
  const auto diagnostics = Validate(desc);
  if (!HasErrors(diagnostics)) return;
  std::string message = "invalid description";
  for (const Diagnostic& d : diagnostics) {
    if (d.severity == Severity::kError) message += "\n  " + ToString(d);
  }
  throw InvalidDescription(message);
}

std::string Serialize(const GameDescription& desc) {
  const Net& net = desc.net;
  std::ostringstream out;
  out << "game " << Quote(desc.title) << "\n";
  out << "players ";
  for (std::size_t i = 0; i < net.players.size(); ++i) {
    out << (i > 0 ? ", " : "") << net.players[i];
  }
  out << "\n";
  out << "time chronon " << desc.chronon_ms << " horizon " << desc.horizon
      << "\n\n";

  for (const Place& place : net.places) {
    out << "place " << place.name << " init " << place.initial << " bound "
        << place.bound;
    if (!place.visible_to.empty()) {
      out << " visible " << JoinSorted(place.visible_to);
    }
    out << "\n";
  }
  out << "\n";

  for (const Transition& t : net.transitions) {
    if (const auto* chance = std::get_if<ChanceOwner>(&t.owner)) {
      out << "chance " << t.name << " group " << chance->group << " weight "
          << ToString(chance->weight);
    } else {
      out << "transition " << t.name << " owner " << t.player();
    }
    out << " pre " << Arcs(net, t.pre) << " post " << Arcs(net, t.post)
        << " label " << Quote(t.label) << "\n";
  }
  out << "\n";

  for (const std::string& player : net.players) {
    auto it = desc.payoffs.find(player);
    if (it == desc.payoffs.end()) continue;
    out << "payoff " << player << " = " << Affine(it->second) << "\n";
  }
  out << "terminal = " << PredicateText(desc.terminal, Predicate::Kind::kTrue)
      << "\n";
  return out.str();
}

Rational EvaluatePayoff(const GameDescription& desc, std::string_view player,
                        const Marking& m) {
  auto it = desc.payoffs.find(std::string(player));
  if (it == desc.payoffs.end()) return 0;
  Rational total = it->second.constant;
  for (const auto& [place, weight] : it->second.weights) {
    if (auto index = desc.net.FindPlace(place)) total += weight * m[*index];
  }
  return total;
}

std::vector<Rational> EvaluatePayoffs(const GameDescription& desc,
                                      const Marking& m) {
  std::vector<Rational> payoffs;
  payoffs.reserve(desc.net.players.size());
  for (const std::string& player : desc.net.players) {
    payoffs.push_back(EvaluatePayoff(desc, player, m));
  }
  return payoffs;
}

bool EvaluateTerminal(const GameDescription& desc, const Marking& m) {
  return Holds(desc.terminal, desc.net, m);
}

}  // namespace petrigame
