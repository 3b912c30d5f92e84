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

// The textual game description language (".game" files).
//
// A description is a sequence of line-oriented statements:
//
//   game "Matching Pennies"
//   players P1, P2
//   time chronon 1000 horizon 1
//   place heads1 init 0 bound 1 visible P1
//   transition h1 owner P1 pre {ready1:1} post {heads1:1} label "Heads"
//   chance deal_a group deal weight 1/2 pre {deck:1} post {hand:1} label "A"
//   payoff P1 = 0 + 1*match - 1*mismatch
//   terminal = tokens(done) >= 1 or tokens(clock) = 0
//
// docs/grammar.md carries the full grammar.

#ifndef PETRIGAME_GDL_H_
#define PETRIGAME_GDL_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "petrigame/error.h"
#include "petrigame/petri.h"
#include "petrigame/rational.h"

namespace petrigame {

// 1-based line and column; line 0 means "no source location".
struct SourceSpan {
  std::size_t line = 0;
  std::size_t column = 0;
  std::size_t length = 0;

  friend bool operator==(const SourceSpan&, const SourceSpan&) = default;
};

enum class Severity { kError, kWarning };

struct Diagnostic {
  Severity severity = Severity::kError;
  std::string message;
  SourceSpan span;
};

// "LINE:COL: error: MESSAGE".
std::string ToString(const Diagnostic& d);
bool HasErrors(const std::vector<Diagnostic>& diagnostics);

class ParseError : public Error {
 public:
  explicit ParseError(std::vector<Diagnostic> diagnostics);
  const std::vector<Diagnostic>& diagnostics() const { return diagnostics_; }

 private:
  std::vector<Diagnostic> diagnostics_;
};

// constant + sum(weight * tokens(place)). Weights are keyed by place name so
// that references can be validated after parsing.
struct AffineForm {
  Rational constant;
  std::map<std::string, Rational> weights;

  friend bool operator==(const AffineForm&, const AffineForm&) = default;
};

enum class Comparison { kLess, kLessEqual, kEqual, kGreaterEqual, kGreater };

std::string_view ToString(Comparison op);
bool Compare(TokenCount lhs, Comparison op, TokenCount rhs);

// Conjunction/disjunction tree over atoms tokens(place) OP constant.
struct Predicate {
  enum class Kind { kTrue, kFalse, kCompare, kAnd, kOr };

  Kind kind = Kind::kFalse;
  std::string place;
  Comparison op = Comparison::kEqual;
  TokenCount value = 0;
  std::vector<Predicate> operands;

  static Predicate True() {
    Predicate p;
    p.kind = Kind::kTrue;
    return p;
  }
  static Predicate False() { return Predicate(); }
  static Predicate Atom(std::string place, Comparison op, TokenCount value);
  static Predicate And(std::vector<Predicate> operands);
  static Predicate Or(std::vector<Predicate> operands);

  friend bool operator==(const Predicate&, const Predicate&) = default;
};

// Spans of named items, recorded by the parser so that the validator can
// point at offending references. Keys look like "place:NAME",
// "payoff:PLAYER:PLACE" or "terminal:PLACE"; the first occurrence wins.
using SourceMap = std::map<std::string, SourceSpan>;

struct GameDescription {
  std::string title;
  std::uint32_t chronon_ms = 1000;
  std::uint32_t horizon = 1;
  // net.players is the ordered player list.
  Net net;
  // Keyed by player name; a missing entry pays 0.
  std::map<std::string, AffineForm> payoffs;
  Predicate terminal = Predicate::False();

  // Not part of structural equality.
  SourceMap spans;

  const std::vector<std::string>& players() const { return net.players; }

  friend bool operator==(const GameDescription& a, const GameDescription& b) {
    return a.title == b.title && a.chronon_ms == b.chronon_ms &&
           a.horizon == b.horizon && a.net == b.net &&
           a.payoffs == b.payoffs && a.terminal == b.terminal;
  }
};

// Parses a description. Never crashes on any byte sequence; syntax and
// structural failures are reported as a ParseError carrying every diagnostic
// found.
GameDescription Parse(std::string_view source);

// Semantic checks: identifiers, bounds, chance weights, horizon. Empty result
// iff the description is valid and clean.
std::vector<Diagnostic> Validate(const GameDescription& desc);

// Throws InvalidDescription listing the errors, if any.
void ValidateOrThrow(const GameDescription& desc);

// Canonical, byte-deterministic text form. parse(serialize(d)) == d.
std::string Serialize(const GameDescription& desc);

// Evaluation helpers used outside the hot unfolding loop.
Rational EvaluatePayoff(const GameDescription& desc, std::string_view player,
                        const Marking& m);
std::vector<Rational> EvaluatePayoffs(const GameDescription& desc,
                                      const Marking& m);
bool EvaluateTerminal(const GameDescription& desc, const Marking& m);

// Parses the file at `path`. Throws Error if it cannot be read.
GameDescription ParseFile(const std::string& path);
std::string ReadTextFile(const std::string& path);

}  // namespace petrigame

#endif  // PETRIGAME_GDL_H_
