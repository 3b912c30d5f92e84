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
#include <cctype>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <utility>

#include "petrigame/gdl.h"

namespace petrigame {
namespace {

constexpr int kMaxPredicateDepth = 128;

enum class TokenKind { kIdent, kNumber, kString, kSymbol, kEnd };

struct Token {
  TokenKind kind = TokenKind::kEnd;
  std::string text;
  std::size_t column = 0;  // 1-based
  std::size_t length = 0;
};

struct SyntaxError {
  Diagnostic diagnostic;
};

bool IsIdentStart(unsigned char c) { return std::isalpha(c) || c == '_'; }
bool IsIdentChar(unsigned char c) { return std::isalnum(c) || c == '_'; }

// Length of the UTF-8 sequence starting at s[i], or 0 if malformed.
std::size_t Utf8SequenceLength(std::string_view s, std::size_t i) {
  const auto lead = static_cast<unsigned char>(s[i]);
  std::size_t len = 0;
  if (lead < 0x80) return 1;
  if ((lead & 0xE0) == 0xC0 && lead >= 0xC2) len = 2;
  else if ((lead & 0xF0) == 0xE0) len = 3;
  else if ((lead & 0xF8) == 0xF0 && lead <= 0xF4) len = 4;
  else return 0;
  if (i + len > s.size()) return 0;
  for (std::size_t k = 1; k < len; ++k) {
    if ((static_cast<unsigned char>(s[i + k]) & 0xC0) != 0x80) return 0;
  }
  return len;
}

class LineLexer {
 public:
  LineLexer(std::string_view line, std::size_t line_number)
      : line_(line), line_number_(line_number) {}

  std::vector<Token> Tokenize() {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < line_.size()) {
      const auto c = static_cast<unsigned char>(line_[i]);
      if (c == ' ' || c == '\t' || c == '\r') {
        ++i;
      } else if (c == '#') {
        break;
      } else if (IsIdentStart(c)) {
        const std::size_t start = i;
        while (i < line_.size() &&
               IsIdentChar(static_cast<unsigned char>(line_[i]))) {
          ++i;
        }
        tokens.push_back(Make(TokenKind::kIdent, start, i));
      } else if (std::isdigit(c)) {
        const std::size_t start = i;
        while (i < line_.size() &&
               std::isdigit(static_cast<unsigned char>(line_[i]))) {
          ++i;
        }
        tokens.push_back(Make(TokenKind::kNumber, start, i));
      } else if (c == '"') {
        tokens.push_back(LexString(i));
      } else {
        tokens.push_back(LexSymbol(i));
      }
    }
    Token end;
    end.column = line_.size() + 1;
    tokens.push_back(end);
    return tokens;
  }

 private:
  Token Make(TokenKind kind, std::size_t start, std::size_t end) const {
    Token t;
    t.kind = kind;
    t.text = std::string(line_.substr(start, end - start));
    t.column = start + 1;
    t.length = end - start;
    return t;
  }

  [[noreturn]] void Fail(std::size_t column, std::size_t length,
                         std::string message) const {
    throw SyntaxError{Diagnostic{Severity::kError, std::move(message),
                                 SourceSpan{line_number_, column, length}}};
  }

  Token LexString(std::size_t& i) {
    const std::size_t start = i;
    ++i;
    std::string value;
    while (true) {
      if (i >= line_.size()) Fail(start + 1, i - start, "unterminated string");
      const char c = line_[i];
      if (c == '"') {
        ++i;
        break;
      }
      if (c == '\\') {
        if (i + 1 < line_.size() && (line_[i + 1] == '"' || line_[i + 1] == '\\')) {
          value.push_back(line_[i + 1]);
          i += 2;
          continue;
        }
        Fail(i + 1, 1, "invalid escape sequence in string");
      }
      const std::size_t len = Utf8SequenceLength(line_, i);
      if (len == 0) Fail(i + 1, 1, "invalid UTF-8 in string");
      value.append(line_.substr(i, len));
      i += len;
    }
    Token t;
    t.kind = TokenKind::kString;
    t.text = std::move(value);
    t.column = start + 1;
    t.length = i - start;
    return t;
  }

  Token LexSymbol(std::size_t& i) {
    static constexpr std::string_view kTwoChar[] = {"<=", ">=", "=="};
    for (std::string_view s : kTwoChar) {
      if (line_.substr(i, 2) == s) {
        Token t = Make(TokenKind::kSymbol, i, i + 2);
        i += 2;
        return t;
      }
    }
    static constexpr std::string_view kOneChar = "{}:,/*+-=()<>";
    if (kOneChar.find(line_[i]) != std::string_view::npos) {
      Token t = Make(TokenKind::kSymbol, i, i + 1);
      ++i;
      return t;
    }
    std::size_t len = Utf8SequenceLength(line_, i);
    if (len == 0) len = 1;
    Fail(i + 1, len, "unexpected character");
  }

  std::string_view line_;
  std::size_t line_number_;
};

struct RawArc {
  std::string place;
  TokenCount weight = 0;
  SourceSpan span;
};

struct RawTransition {
  Transition transition;
  std::vector<RawArc> pre;
  std::vector<RawArc> post;
};

class Parser {
 public:
  explicit Parser(std::string_view source) : source_(source) {}

  GameDescription Run() {
    std::size_t line_number = 0;
    std::size_t pos = 0;
    while (pos <= source_.size()) {
      std::size_t end = source_.find('\n', pos);
      if (end == std::string_view::npos) end = source_.size();
      ++line_number;
      ParseLine(source_.substr(pos, end - pos), line_number);
      pos = end + 1;
    }
    if (!saw_game_ && diagnostics_.empty()) {
      Error(SourceSpan{1, 1, 0}, "expected game header");
    }
    if (saw_game_ && !saw_players_) {
      Error(SourceSpan{1, 1, 0}, "missing 'players' declaration");
    }
    if (saw_game_ && !saw_time_) {
      Error(SourceSpan{1, 1, 0}, "missing 'time' declaration");
    }
    ResolveArcs();
    if (HasErrors(diagnostics_)) throw ParseError(std::move(diagnostics_));
    return std::move(desc_);
  }

 private:
  void Error(SourceSpan span, std::string message) {
    diagnostics_.push_back(
        Diagnostic{Severity::kError, std::move(message), span});
  }

  void ParseLine(std::string_view line, std::size_t line_number) {
    try {
      tokens_ = LineLexer(line, line_number).Tokenize();
      pos_ = 0;
      line_ = line_number;
      if (Peek().kind == TokenKind::kEnd) return;
      ParseStatement();
    } catch (const SyntaxError& e) {
      diagnostics_.push_back(e.diagnostic);
    }
  }

  // Token cursor.
  const Token& Peek() const { return tokens_[pos_]; }
  const Token& Next() {
    const Token& t = tokens_[pos_];
    if (t.kind != TokenKind::kEnd) ++pos_;
    return t;
  }
  bool PeekSymbol(std::string_view s) const {
    return Peek().kind == TokenKind::kSymbol && Peek().text == s;
  }
  bool PeekKeyword(std::string_view s) const {
    return Peek().kind == TokenKind::kIdent && Peek().text == s;
  }
  SourceSpan SpanOf(const Token& t) const {
    return SourceSpan{line_, t.column, t.length};
  }

  [[noreturn]] void Fail(const Token& at, std::string message) const {
    throw SyntaxError{
        Diagnostic{Severity::kError, std::move(message), SpanOf(at)}};
  }

  static std::string Describe(const Token& t) {
    switch (t.kind) {
      case TokenKind::kEnd:
        return "end of line";
      case TokenKind::kString:
        return "string";
      default:
        return "'" + t.text + "'";
    }
  }

  void ExpectSymbol(std::string_view s) {
    if (!PeekSymbol(s)) {
      Fail(Peek(), "expected '" + std::string(s) + "' but found " +
                       Describe(Peek()));
    }
    Next();
  }
  void ExpectKeyword(std::string_view s) {
    if (!PeekKeyword(s)) {
      Fail(Peek(), "expected '" + std::string(s) + "' but found " +
                       Describe(Peek()));
    }
    Next();
  }
  const Token& ExpectIdent(std::string_view what) {
    if (Peek().kind != TokenKind::kIdent) {
      Fail(Peek(), "expected " + std::string(what) + " but found " +
                       Describe(Peek()));
    }
    return Next();
  }
  void ExpectEnd() {
    if (Peek().kind != TokenKind::kEnd) {
      Fail(Peek(), "unexpected " + Describe(Peek()));
    }
  }

  TokenCount ExpectNatural(std::string_view what) {
    const Token& t = Peek();
    if (t.kind != TokenKind::kNumber) {
      Fail(t, "expected " + std::string(what) + " but found " + Describe(t));
    }
    std::uint64_t value = 0;
    for (char c : t.text) {
      value = value * 10 + static_cast<std::uint64_t>(c - '0');
      if (value > std::numeric_limits<TokenCount>::max()) {
        Fail(t, std::string(what) + " is too large");
      }
    }
    Next();
    return static_cast<TokenCount>(value);
  }

  // NUMBER ['/' NUMBER], without sign.
  Rational ExpectUnsignedRational(std::string_view what) {
    const Token& num = Peek();
    if (num.kind != TokenKind::kNumber) {
      Fail(num, "expected " + std::string(what) + " but found " +
                    Describe(num));
    }
    Next();
    std::string text = num.text;
    if (PeekSymbol("/")) {
      Next();
      const Token& den = Peek();
      if (den.kind != TokenKind::kNumber) {
        Fail(den, "expected denominator but found " + Describe(den));
      }
      Next();
      text += "/" + den.text;
      auto value = ParseRational(text);
      if (!value) Fail(den, "zero denominator");
      return *value;
    }
    return *ParseRational(text);
  }

  Rational ExpectRational(std::string_view what) {
    bool negative = false;
    if (PeekSymbol("-")) {
      Next();
      negative = true;
    }
    Rational r = ExpectUnsignedRational(what);
    return negative ? Rational(-r) : r;
  }

  std::string ExpectString(std::string_view what) {
    if (Peek().kind != TokenKind::kString) {
      Fail(Peek(), "expected " + std::string(what) + " but found " +
                       Describe(Peek()));
    }
    return Next().text;
  }

  void Record(const std::string& key, SourceSpan span) {
    desc_.spans.emplace(key, span);
  }

  void ParseStatement() {
    const Token& head = Peek();
    if (head.kind != TokenKind::kIdent) {
      Fail(head, saw_game_ ? "expected a statement keyword"
                           : "expected game header");
    }
    if (!saw_game_ && head.text != "game") Fail(head, "expected game header");

    const std::string keyword = head.text;
    if (keyword == "game") {
      ParseGame();
    } else if (keyword == "players") {
      ParsePlayers();
    } else if (keyword == "time") {
      ParseTime();
    } else if (keyword == "place") {
      ParsePlace();
    } else if (keyword == "transition") {
      ParseTransition(/*chance=*/false);
    } else if (keyword == "chance") {
      ParseTransition(/*chance=*/true);
    } else if (keyword == "payoff") {
      ParsePayoff();
    } else if (keyword == "terminal") {
      ParseTerminal();
    } else {
      Fail(head, "unknown statement '" + keyword + "'");
    }
  }

  void ParseGame() {
    const Token& kw = Next();
    if (saw_game_) Fail(kw, "duplicate 'game' header");
    desc_.title = ExpectString("game title");
    ExpectEnd();
    saw_game_ = true;
    Record("game", SpanOf(kw));
  }

  void ParsePlayers() {
    const Token& kw = Next();
    if (saw_players_) Fail(kw, "duplicate 'players' declaration");
    Record("players", SpanOf(kw));
    std::vector<std::string> players;
    while (Peek().kind != TokenKind::kEnd) {
      const Token& id = ExpectIdent("player name");
      Record("player:" + id.text, SpanOf(id));
      players.push_back(id.text);
      if (PeekSymbol(",")) Next();
    }
    desc_.net.players = std::move(players);
    saw_players_ = true;
  }

  void ParseTime() {
    const Token& kw = Next();
    if (saw_time_) Fail(kw, "duplicate 'time' declaration");
    Record("time", SpanOf(kw));
    bool chronon = false;
    bool horizon = false;
    while (Peek().kind != TokenKind::kEnd) {
      const Token& key = ExpectIdent("'chronon' or 'horizon'");
      if (key.text == "chronon" && !chronon) {
        desc_.chronon_ms = ExpectNatural("chronon length in milliseconds");
        chronon = true;
      } else if (key.text == "horizon" && !horizon) {
        desc_.horizon = ExpectNatural("horizon");
        horizon = true;
      } else {
        Fail(key, "unexpected '" + key.text + "' in time declaration");
      }
    }
    if (!chronon) Fail(kw, "time declaration needs 'chronon N'");
    if (!horizon) Fail(kw, "time declaration needs 'horizon N'");
    saw_time_ = true;
  }

  void ParsePlace() {
    Next();
    const Token& name = ExpectIdent("place name");
    Place place;
    place.name = name.text;
    bool has_init = false;
    bool has_bound = false;
    bool has_visible = false;
    while (Peek().kind != TokenKind::kEnd) {
      const Token& key = ExpectIdent("place attribute");
      if (key.text == "init" && !has_init) {
        place.initial = ExpectNatural("initial token count");
        has_init = true;
      } else if (key.text == "bound" && !has_bound) {
        place.bound = ExpectNatural("bound");
        has_bound = true;
      } else if (key.text == "visible" && !has_visible) {
        has_visible = true;
        do {
          if (PeekSymbol(",")) Next();
          const Token& player = ExpectIdent("player name");
          if (std::find(place.visible_to.begin(), place.visible_to.end(),
                        player.text) != place.visible_to.end()) {
            Fail(player, "player '" + player.text +
                             "' listed twice in visibility");
          }
          Record("visible:" + place.name + ":" + player.text, SpanOf(player));
          place.visible_to.push_back(player.text);
        } while (PeekSymbol(",") || (Peek().kind == TokenKind::kIdent &&
                                         Peek().text != "init" &&
                                         Peek().text != "bound" &&
                                         Peek().text != "visible"));
      } else {
        Fail(key, "unexpected '" + key.text + "' in place declaration");
      }
    }
    if (!has_bound) Fail(name, "place '" + place.name + "' needs a bound");
    std::sort(place.visible_to.begin(), place.visible_to.end());
    Record("place:" + place.name, SpanOf(name));
    desc_.net.places.push_back(std::move(place));
  }

  std::vector<RawArc> ParseArcs() {
    ExpectSymbol("{");
    std::vector<RawArc> arcs;
    if (PeekSymbol("}")) {
      Next();
      return arcs;
    }
    while (true) {
      const Token& place = ExpectIdent("place name");
      ExpectSymbol(":");
      const TokenCount weight = ExpectNatural("arc weight");
      for (const RawArc& arc : arcs) {
        if (arc.place == place.text) {
          Fail(place, "duplicate arc for place '" + place.text + "'");
        }
      }
      arcs.push_back(RawArc{place.text, weight, SpanOf(place)});
      if (PeekSymbol(",")) {
        Next();
        continue;
      }
      ExpectSymbol("}");
      return arcs;
    }
  }

  void ParseTransition(bool chance) {
    Next();
    const Token& name = ExpectIdent("transition name");
    RawTransition raw;
    raw.transition.name = name.text;
    raw.transition.label = name.text;
    bool has_owner = false;
    bool has_pre = false;
    bool has_post = false;
    bool has_label = false;
    bool has_group = false;
    bool has_weight = false;
    ChanceOwner chance_owner;
    while (Peek().kind != TokenKind::kEnd) {
      const Token& key = ExpectIdent("transition attribute");
      if (!chance && key.text == "owner" && !has_owner) {
        const Token& owner = ExpectIdent("owner player");
        Record("owner:" + name.text, SpanOf(owner));
        raw.transition.owner = PlayerOwner{owner.text};
        has_owner = true;
      } else if (chance && key.text == "group" && !has_group) {
        const Token& group = ExpectIdent("chance group name");
        Record("group:" + group.text, SpanOf(group));
        chance_owner.group = group.text;
        has_group = true;
      } else if (chance && key.text == "weight" && !has_weight) {
        const Token& at = Peek();
        chance_owner.weight = ExpectRational("chance weight");
        Record("weight:" + name.text, SpanOf(at));
        has_weight = true;
      } else if (key.text == "pre" && !has_pre) {
        raw.pre = ParseArcs();
        has_pre = true;
      } else if (key.text == "post" && !has_post) {
        raw.post = ParseArcs();
        has_post = true;
      } else if (key.text == "label" && !has_label) {
        raw.transition.label = ExpectString("label");
        has_label = true;
      } else {
        Fail(key, "unexpected '" + key.text + "' in " +
                      (chance ? "chance" : "transition") + " declaration");
      }
    }
    if (chance) {
      if (!has_group) Fail(name, "chance transition needs 'group G'");
      if (!has_weight) Fail(name, "chance transition needs 'weight p/q'");
      raw.transition.owner = std::move(chance_owner);
    } else if (!has_owner) {
      Fail(name, "transition '" + name.text + "' needs an owner");
    }
    Record("transition:" + name.text, SpanOf(name));
    transitions_.push_back(std::move(raw));
  }

  void ParsePayoff() {
    Next();
    const Token& player = ExpectIdent("player name");
    if (desc_.payoffs.count(player.text)) {
      Fail(player, "duplicate payoff for player '" + player.text + "'");
    }
    Record("payoff:" + player.text, SpanOf(player));
    ExpectSymbol("=");
    AffineForm form;
    Rational sign = 1;
    if (PeekSymbol("-")) {
      Next();
      sign = -1;
    } else if (PeekSymbol("+")) {
      Next();
    }
    while (true) {
      const Token& t = Peek();
      if (t.kind == TokenKind::kNumber) {
        const Rational coefficient = ExpectUnsignedRational("coefficient");
        if (PeekSymbol("*")) {
          Next();
          const Token& place = ExpectIdent("place name");
          Record("payoff:" + player.text + ":" + place.text, SpanOf(place));
          form.weights[place.text] += sign * coefficient;
        } else {
          form.constant += sign * coefficient;
        }
      } else if (t.kind == TokenKind::kIdent) {
        Next();
        Record("payoff:" + player.text + ":" + t.text, SpanOf(t));
        form.weights[t.text] += sign;
      } else {
        Fail(t, "expected a payoff term but found " + Describe(t));
      }
      if (PeekSymbol("+")) {
        sign = 1;
      } else if (PeekSymbol("-")) {
        sign = -1;
      } else {
        break;
      }
      Next();
    }
    ExpectEnd();
    desc_.payoffs.emplace(player.text, std::move(form));
  }

  void ParseTerminal() {
    const Token& kw = Next();
    if (saw_terminal_) Fail(kw, "duplicate 'terminal' declaration");
    Record("terminal", SpanOf(kw));
    ExpectSymbol("=");
    Predicate p = ParseOr(0);
    ExpectEnd();
    desc_.terminal = std::move(p);
    saw_terminal_ = true;
  }

  Predicate ParseOr(int depth) {
    std::vector<Predicate> operands;
    operands.push_back(ParseAnd(depth));
    while (PeekKeyword("or")) {
      Next();
      operands.push_back(ParseAnd(depth));
    }
    if (operands.size() == 1) return std::move(operands.front());
    return Predicate::Or(std::move(operands));
  }

  Predicate ParseAnd(int depth) {
    std::vector<Predicate> operands;
    operands.push_back(ParseAtom(depth));
    while (PeekKeyword("and")) {
      Next();
      operands.push_back(ParseAtom(depth));
    }
    if (operands.size() == 1) return std::move(operands.front());
    return Predicate::And(std::move(operands));
  }

  Predicate ParseAtom(int depth) {
    if (depth > kMaxPredicateDepth) Fail(Peek(), "predicate nested too deeply");
    if (PeekSymbol("(")) {
      Next();
      Predicate inner = ParseOr(depth + 1);
      ExpectSymbol(")");
      return inner;
    }
    if (PeekKeyword("true")) {
      Next();
      return Predicate::True();
    }
    if (PeekKeyword("false")) {
      Next();
      return Predicate::False();
    }
    ExpectKeyword("tokens");
    ExpectSymbol("(");
    const Token& place = ExpectIdent("place name");
    Record("terminal:" + place.text, SpanOf(place));
    ExpectSymbol(")");
    const Token& op = Peek();
    Comparison cmp;
    if (PeekSymbol("<")) cmp = Comparison::kLess;
    else if (PeekSymbol("<=")) cmp = Comparison::kLessEqual;
    else if (PeekSymbol("=") || PeekSymbol("==")) cmp = Comparison::kEqual;
    else if (PeekSymbol(">=")) cmp = Comparison::kGreaterEqual;
    else if (PeekSymbol(">")) cmp = Comparison::kGreater;
    else Fail(op, "expected a comparison but found " + Describe(op));
    Next();
    const TokenCount value = ExpectNatural("token count");
    return Predicate::Atom(place.text, cmp, value);
  }

  void ResolveArcs() {
    const std::size_t n = desc_.net.places.size();
    for (RawTransition& raw : transitions_) {
      raw.transition.pre.assign(n, 0);
      raw.transition.post.assign(n, 0);
      auto resolve = [&](const std::vector<RawArc>& arcs,
                         std::vector<TokenCount>& weights) {
        for (const RawArc& arc : arcs) {
          auto index = desc_.net.FindPlace(arc.place);
          if (!index) {
            Error(arc.span, "unknown place '" + arc.place + "' in arc of '" +
                                raw.transition.name + "'");
            continue;
          }
          weights[*index] = arc.weight;
        }
      };
      resolve(raw.pre, raw.transition.pre);
      resolve(raw.post, raw.transition.post);
      desc_.net.transitions.push_back(std::move(raw.transition));
    }
  }

  std::string_view source_;
  GameDescription desc_;
  std::vector<Diagnostic> diagnostics_;
  std::vector<RawTransition> transitions_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t line_ = 0;
  bool saw_game_ = false;
  bool saw_players_ = false;
  bool saw_time_ = false;
  bool saw_terminal_ = false;
};

}  // namespace

ParseError::ParseError(std::vector<Diagnostic> diagnostics)
    : Error(diagnostics.empty() ? std::string("parse error")
                                : ToString(diagnostics.front())),
      diagnostics_(std::move(diagnostics)) {}

GameDescription Parse(std::string_view source) {
  try {
    return Parser(source).Run();
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception& e) {
    // Resource exhaustion and similar; still reported as a parse failure.
    throw ParseError({Diagnostic{Severity::kError,
                                 std::string("internal parser failure: ") +
                                     e.what(),
                                 SourceSpan{1, 1, 0}}});
  }
}

std::string ReadTextFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

GameDescription ParseFile(const std::string& path) {
  return Parse(ReadTextFile(path));
}

}  // namespace petrigame
