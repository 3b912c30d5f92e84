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

#include "petrigame/session.h"

#include <openssl/sha.h>

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <limits>
#include <stdexcept>
#include <utility>

#include "petrigame/error.h"

namespace petrigame {

using nlohmann::json;

std::string_view ToString(SeatKind kind) {
  switch (kind) {
    case SeatKind::kHuman: return "human";
    case SeatKind::kRandomBot: return "random";
    case SeatKind::kFirstBot: return "first";
    case SeatKind::kIdleBot: return "idle";
  }
  return "?";
}

std::optional<SeatKind> ParseSeatKind(std::string_view text) {
  for (SeatKind k : {SeatKind::kHuman, SeatKind::kRandomBot,
                     SeatKind::kFirstBot, SeatKind::kIdleBot}) {
    if (ToString(k) == text) return k;
  }
  return std::nullopt;
}

std::map<std::string, SeatKind> ParseSeatPlan(const GameDescription& desc,
                                              std::string_view spec,
                                              SeatKind fallback) {
  std::vector<std::string_view> items;
  while (!spec.empty()) {
    const auto comma = spec.find(',');
    items.push_back(spec.substr(0, comma));
    if (comma == std::string_view::npos) break;
    spec.remove_prefix(comma + 1);
  }
  std::map<std::string, SeatKind> plan;
  const auto& players = desc.players();
  const bool named = !items.empty() &&
                     items.front().find('=') != std::string_view::npos;
  if (!named && !items.empty() && items.size() != players.size()) {
    throw std::invalid_argument("seat plan lists " + std::to_string(items.size()) +
                                " seats for " + std::to_string(players.size()) +
                                " players");
  }
  for (std::size_t i = 0; i < items.size(); ++i) {
    std::string_view item = items[i];
    std::string player;
    if (const auto eq = item.find('='); eq != std::string_view::npos) {
      if (!named) throw std::invalid_argument("mixed seat plan forms");
      player = std::string(item.substr(0, eq));
      item.remove_prefix(eq + 1);
      if (!desc.net.FindPlayer(player)) {
        throw std::invalid_argument("seat plan names unknown player '" + player + "'");
      }
    } else {
      if (named) throw std::invalid_argument("mixed seat plan forms");
      player = players[i];
    }
    const auto kind = ParseSeatKind(item);
    if (!kind) {
      throw std::invalid_argument("unknown seat kind '" + std::string(item) + "'");
    }
    plan[player] = *kind;
  }
  for (const std::string& p : players) plan.try_emplace(p, fallback);
  return plan;
}

std::string_view ToString(Phase phase) {
  switch (phase) {
    case Phase::kLobby: return "lobby";
    case Phase::kRunning: return "running";
    case Phase::kFinished: return "finished";
  }
  return "?";
}

std::string_view ToString(RejectReason reason) {
  switch (reason) {
    case RejectReason::kLate: return "late";
    case RejectReason::kIllegal: return "illegal";
    case RejectReason::kDuplicate: return "duplicate";
    case RejectReason::kWrongChronon: return "wrong_chronon";
  }
  return "?";
}

std::string DescriptionHash(const GameDescription& desc) {
  const std::string text = Serialize(desc);
  unsigned char digest[SHA256_DIGEST_LENGTH];
  SHA256(reinterpret_cast<const unsigned char*>(text.data()), text.size(), digest);
  std::string hex;
  char buf[3];
  for (unsigned char b : digest) {
    std::snprintf(buf, sizeof buf, "%02x", b);
    hex += buf;
  }
  return hex;
}

std::optional<TransitionIndex> DrawChance(const GameDescription& desc,
                                          const Marking& at_turn,
                                          std::size_t group,
                                          std::mt19937_64& rng) {
  const auto options = ChanceOptions(desc, at_turn, group);
  if (options.size() < 2) return std::nullopt;
  mpz_class denominator = 1;
  for (const auto& o : options) {
    mpz_lcm(denominator.get_mpz_t(), denominator.get_mpz_t(),
            o.probability.get_den_mpz_t());
  }
  if (denominator > mpz_class(std::numeric_limits<std::int64_t>::max())) {
    throw Error("chance weights too fine to draw exactly");
  }
  const auto total = static_cast<std::uint64_t>(denominator.get_si());
  std::uint64_t u = std::uniform_int_distribution<std::uint64_t>(0, total - 1)(rng);
  for (const auto& o : options) {
    const mpz_class w = o.probability.get_num() * (denominator / o.probability.get_den());
    const auto weight = static_cast<std::uint64_t>(w.get_si());
    if (u < weight) return o.transition;
    u -= weight;
  }
  return options.back().transition;
}

namespace {

// Draws the branching chance groups in order and resolves the chronon.
Marking ResolveChronon(const GameDescription& desc, const Marking& opening,
                       const JointMove& joint, std::mt19937_64& rng,
                       ChanceChoices& draws,
                       std::vector<TransitionIndex>& fired) {
  const Net& net = desc.net;
  Marking m = opening;
  for (const auto& a : joint.actions) {
    if (a && IsEnabled(net, m, *a)) m = Fire(net, m, *a);
  }
  draws = NoDraws(desc);
  for (std::size_t g = 0; g < draws.draws.size(); ++g) {
    if (auto d = DrawChance(desc, m, g, rng)) {
      draws.draws[g] = d;
      m = Fire(net, m, *d);
    } else if (const auto options = ChanceOptions(desc, m, g);
               options.size() == 1) {
      m = Fire(net, m, options.front().transition);
    }
  }
  return ChrononStep(desc, opening, joint, draws, &fired);
}

json PayoffJson(const GameDescription& desc, const std::vector<Rational>& u) {
  json out = json::object();
  for (std::size_t p = 0; p < u.size(); ++p) out[desc.players()[p]] = ToString(u[p]);
  return out;
}

json JointJson(const GameDescription& desc, const JointMove& joint) {
  json out = json::object();
  for (std::size_t p = 0; p < joint.actions.size(); ++p) {
    const auto& a = joint.actions[p];
    out[desc.players()[p]] = a ? desc.net.transitions[*a].name : "noop";
  }
  return out;
}

std::int64_t SystemMillis() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace

Session::Session(GameDescription desc, SessionConfig config,
                 std::ostream* log_sink)
    : desc_(std::move(desc)), config_(std::move(config)), log_sink_(log_sink),
      chance_rng_(config_.seed) {
  ValidateOrThrow(desc_);
  chronon_ms_ = config_.chronon_ms ? config_.chronon_ms : desc_.chronon_ms;
  if (!config_.wall_clock) config_.wall_clock = SystemMillis;
  const auto& players = desc_.players();
  for (const auto& [player, kind] : config_.seats) {
    if (!desc_.net.FindPlayer(player)) {
      throw std::invalid_argument("seat for unknown player '" + player + "'");
    }
  }
  seat_kind_.resize(players.size(), SeatKind::kHuman);
  seat_client_.resize(players.size());
  seat_left_.assign(players.size(), false);
  for (std::size_t p = 0; p < players.size(); ++p) {
    if (auto it = config_.seats.find(players[p]); it != config_.seats.end()) {
      seat_kind_[p] = it->second;
    }
    if (seat_kind_[p] != SeatKind::kHuman) {
      seat_client_[p] = "bot:" + std::string(ToString(seat_kind_[p]));
    }
    std::seed_seq seq{static_cast<std::uint32_t>(config_.seed),
                      static_cast<std::uint32_t>(config_.seed >> 32),
                      static_cast<std::uint32_t>(p + 1)};
    bot_rng_.emplace_back(seq);
  }
  marking_ = InitialMarking(desc_.net);
  markings_.push_back(marking_);
  pending_.resize(players.size());
  enabled_.resize(players.size());

  json seats = json::object();
  for (std::size_t p = 0; p < players.size(); ++p) {
    seats[players[p]] = ToString(seat_kind_[p]);
  }
  json header = {{"type", "header"},
                 {"format", "petrigame-session-log"},
                 {"protocol", kProtocolVersion},
                 {"session", config_.session_id},
                 {"description_sha256", DescriptionHash(desc_)},
                 {"seed", config_.seed},
                 {"chronon_ms", chronon_ms_},
                 {"horizon", desc_.horizon},
                 {"players", players},
                 {"seats", seats},
                 {"t", WallNow()}};
  log_lines_.push_back(header.dump());
  if (log_sink_) *log_sink_ << log_lines_.back() << '\n' << std::flush;
}

std::int64_t Session::WallNow() {
  last_log_time_ = std::max(last_log_time_, config_.wall_clock());
  return last_log_time_;
}

void Session::Log(std::string_view event, json payload) {
  json record = {{"t", WallNow()},
                 {"session", config_.session_id},
                 {"chronon", chronon_},
                 {"event", event},
                 {"payload", std::move(payload)}};
  log_lines_.push_back(record.dump());
  if (log_sink_) *log_sink_ << log_lines_.back() << '\n' << std::flush;
}

void Session::Send(std::string_view recipient, json message) {
  outbox_.push_back(Outbound{std::string(recipient), std::move(message)});
}

std::vector<Outbound> Session::TakeOutbox() { return std::exchange(outbox_, {}); }

json Session::RulesMessage(std::string_view seat) const {
  return {{"type", "rules"},
          {"protocol", kProtocolVersion},
          {"session", config_.session_id},
          {"description", Serialize(desc_)},
          {"chronon_ms", chronon_ms_},
          {"horizon", desc_.horizon},
          {"seat", seat}};
}

bool Session::Connect(std::string_view player, const std::string& client) {
  const auto p = desc_.net.FindPlayer(player);
  if (!p || seat_kind_[*p] != SeatKind::kHuman || seat_left_[*p] ||
      !seat_client_[*p].empty() || phase_ == Phase::kFinished) {
    return false;
  }
  seat_client_[*p] = client;
  Log("join", {{"player", player}, {"client", client}});
  Send(player, RulesMessage(player));
  if (phase_ == Phase::kRunning) {
    Send(player, TickMessage(*p, deadline_));
  }
  return true;
}

void Session::Disconnect(std::string_view player) {
  if (const auto p = desc_.net.FindPlayer(player)) {
    if (seat_kind_[*p] == SeatKind::kHuman && !seat_client_[*p].empty()) {
      seat_client_[*p].clear();
      Log("disconnect", {{"player", player}});
    }
  }
}

void Session::Leave(std::string_view player) {
  if (const auto p = desc_.net.FindPlayer(player)) {
    if (seat_left_[*p]) return;
    seat_left_[*p] = true;
    Log("leave", {{"player", player}});
  }
}

std::vector<std::string> Session::OpenSeats() const {
  std::vector<std::string> open;
  for (std::size_t p = 0; p < seat_kind_.size(); ++p) {
    if (seat_kind_[p] == SeatKind::kHuman && seat_client_[p].empty() &&
        !seat_left_[p]) {
      open.push_back(desc_.players()[p]);
    }
  }
  return open;
}

void Session::AddMonitor(const std::string& client) {
  monitors_.push_back(client);
  Log("join", {{"monitor", client}});
  Send(kMonitor, RulesMessage(kMonitor));
  if (phase_ != Phase::kLobby) {
    Send(kMonitor, {{"type", "state"},
                    {"chronon", chronon_},
                    {"marking", marking_.tokens}});
  }
}

void Session::Start(std::int64_t now_ms) {
  if (phase_ != Phase::kLobby) throw std::logic_error("session already started");
  phase_ = Phase::kRunning;
  start_ = now_ms;
  Log("start", json::object());
  OpenChronon(now_ms);
}

void Session::OpenChronon(std::int64_t now_ms) {
  if (chronon_ == desc_.horizon || EvaluateTerminal(desc_, marking_)) {
    Finish();
    return;
  }
  const std::size_t n = desc_.players().size();
  for (std::size_t p = 0; p < n; ++p) {
    pending_[p].reset();
    enabled_[p] = ViewOf(desc_, p, marking_).enabled;
  }
  deadline_ = start_ + static_cast<std::int64_t>(chronon_ + 1) * chronon_ms_;
  Log("tick", {{"deadline_in_ms", deadline_ - now_ms}});
  for (std::size_t p = 0; p < n; ++p) {
    if (!seat_client_[p].empty() && !seat_left_[p]) {
      Send(desc_.players()[p], TickMessage(p, now_ms));
    }
  }
  if (!monitors_.empty()) {
    Send(kMonitor, {{"type", "state"},
                    {"chronon", chronon_},
                    {"marking", marking_.tokens}});
  }
  BotMoves(now_ms);
}

json Session::TickMessage(std::size_t player, std::int64_t now_ms) const {
  const Net& net = desc_.net;
  const std::string& name = desc_.players()[player];
  json observation = json::object();
  if (!history_.empty()) {
    const auto& own = history_.back().joint.actions[player];
    json observed = json::array();
    for (TransitionIndex t : last_fired_) {
      if (Observes(net, player, t)) observed.push_back(net.transitions[t].name);
    }
    observation["previous"] = {
        {"action", own ? json(net.transitions[*own].name) : json(nullptr)},
        {"observed", observed}};
  } else {
    observation["previous"] = nullptr;
  }
  json visible = json::object();
  for (PlaceIndex q = 0; q < net.places.size(); ++q) {
    const auto& viewers = net.places[q].visible_to;
    if (std::find(viewers.begin(), viewers.end(), name) != viewers.end()) {
      visible[net.places[q].name] = marking_[q];
    }
  }
  observation["visible"] = visible;
  json actions = json::array();
  for (TransitionIndex t : enabled_[player]) {
    actions.push_back({{"name", net.transitions[t].name},
                       {"label", net.transitions[t].label}});
  }
  // Deadline as a wall-clock timestamp so clients need no shared clock.
  const std::int64_t wall_deadline =
      config_.wall_clock() + std::max<std::int64_t>(0, deadline_ - now_ms);
  return {{"type", "tick"},
          {"chronon", chronon_},
          {"observation", observation},
          {"actions", actions},
          {"deadline", wall_deadline}};
}

void Session::BotMoves(std::int64_t now_ms) {
  for (std::size_t p = 0; p < seat_kind_.size(); ++p) {
    if (seat_left_[p] || enabled_[p].empty()) continue;
    std::optional<TransitionIndex> choice;
    switch (seat_kind_[p]) {
      case SeatKind::kRandomBot:
        choice = enabled_[p][std::uniform_int_distribution<std::size_t>(
            0, enabled_[p].size() - 1)(bot_rng_[p])];
        break;
      case SeatKind::kFirstBot:
        choice = enabled_[p].front();
        break;
      case SeatKind::kHuman:
      case SeatKind::kIdleBot:
        break;
    }
    if (choice) {
      OnAction(desc_.players()[p], desc_.net.transitions[*choice].name,
               chronon_, now_ms);
    }
  }
}

std::optional<RejectReason> Session::OnAction(std::string_view player,
                                              std::string_view transition,
                                              std::uint32_t chronon,
                                              std::int64_t now_ms) {
  const auto p = desc_.net.FindPlayer(player);
  std::optional<RejectReason> reason;
  if (!p) {
    reason = RejectReason::kIllegal;
  } else if (phase_ != Phase::kRunning) {
    reason = phase_ == Phase::kFinished ? RejectReason::kLate
                                        : RejectReason::kWrongChronon;
  } else if (chronon < chronon_ || (chronon == chronon_ && now_ms > deadline_)) {
    reason = RejectReason::kLate;
  } else if (chronon > chronon_) {
    reason = RejectReason::kWrongChronon;
  } else if (pending_[*p]) {
    reason = RejectReason::kDuplicate;
  } else {
    const auto t = desc_.net.FindTransition(transition);
    if (!t || std::find(enabled_[*p].begin(), enabled_[*p].end(), *t) ==
                  enabled_[*p].end()) {
      reason = RejectReason::kIllegal;
    } else {
      pending_[*p] = *t;
    }
  }
  json payload = {{"player", player},
                  {"transition", transition},
                  {"target_chronon", chronon}};
  json reply = {{"chronon", chronon}, {"transition", transition}};
  if (reason) {
    payload["reason"] = ToString(*reason);
    reply["type"] = "rejected";
    reply["reason"] = ToString(*reason);
    Log("action-rejected", std::move(payload));
  } else {
    reply["type"] = "accepted";
    Log("action-accepted", std::move(payload));
  }
  if (p) Send(player, reply);
  if (!monitors_.empty()) {
    reply["player"] = player;
    Send(kMonitor, std::move(reply));
  }
  return reason;
}

void Session::Tick(std::int64_t now_ms) {
  if (phase_ != Phase::kRunning) return;
  ChrononMove move;
  move.joint.actions = pending_;
  const Marking next = ResolveChronon(desc_, marking_, move.joint, chance_rng_,
                                      move.chance, last_fired_);
  const auto groups = desc_.net.ChanceGroups();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (const auto& d = move.chance.draws[g]) {
      Log("chance-draw",
          {{"group", groups[g]}, {"transition", desc_.net.transitions[*d].name}});
    }
  }
  Log("state", {{"joint", JointJson(desc_, move.joint)}, {"marking", next.tokens}});
  if (!monitors_.empty()) {
    Send(kMonitor, {{"type", "resolved"},
                    {"chronon", chronon_},
                    {"joint", JointJson(desc_, move.joint)}});
  }
  history_.push_back(std::move(move));
  marking_ = next;
  markings_.push_back(marking_);
  ++chronon_;
  OpenChronon(now_ms);
}

void Session::Finish() {
  phase_ = Phase::kFinished;
  payoffs_ = EvaluatePayoffs(desc_, marking_);
  Log("end", {{"payoffs", PayoffJson(desc_, payoffs_)},
              {"marking", marking_.tokens}});
  json end = {{"type", "end"},
              {"chronon", chronon_},
              {"payoffs", PayoffJson(desc_, payoffs_)}};
  for (std::size_t p = 0; p < seat_client_.size(); ++p) {
    if (!seat_client_[p].empty() && !seat_left_[p]) {
      Send(desc_.players()[p], end);
    }
  }
  if (!monitors_.empty()) {
    end["marking"] = marking_.tokens;
    Send(kMonitor, end);
  }
}

SimulationResult SimulateSession(const GameDescription& desc,
                                 const std::map<std::string, SeatKind>& seats,
                                 std::uint64_t seed) {
  std::int64_t now = 0;
  SessionConfig config;
  config.seed = seed;
  config.seats = seats;
  config.wall_clock = [&now] { return now; };
  for (const std::string& p : desc.players()) {
    auto it = seats.find(p);
    if (it == seats.end() || it->second == SeatKind::kHuman) {
      throw std::invalid_argument("simulation needs a bot in every seat");
    }
  }
  Session session(desc, std::move(config));
  session.Start(now);
  while (session.phase() == Phase::kRunning) {
    now = session.deadline();
    session.Tick(now);
    session.TakeOutbox();
  }
  SimulationResult result;
  result.history = session.history();
  result.markings = session.markings();
  result.payoffs = session.payoffs();
  result.log_lines = session.log_lines();
  return result;
}

ReplayResult Replay(std::istream& log, const GameDescription& desc) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(log, line);) {
    if (!line.empty()) lines.push_back(std::move(line));
  }
  return ReplayLines(lines, desc);
}

namespace {

Marking MarkingFromJson(const json& j, const Net& net) {
  Marking m(j.get<std::vector<TokenCount>>());
  if (!IsValidMarking(net, m)) throw CorruptLog("logged marking out of range");
  return m;
}

}  // namespace

ReplayResult ReplayLines(const std::vector<std::string>& lines,
                         const GameDescription& desc) {
  if (lines.empty()) throw CorruptLog("empty log");
  std::vector<json> records;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    try {
      records.push_back(json::parse(lines[i]));
    } catch (const json::exception& e) {
      throw CorruptLog("line " + std::to_string(i + 1) + ": " + e.what());
    }
    if (!records.back().is_object()) {
      throw CorruptLog("line " + std::to_string(i + 1) + ": not an object");
    }
  }
  const json& header = records.front();
  if (header.value("type", "") != "header") throw CorruptLog("missing log header");
  if (header.value("protocol", -1) != kProtocolVersion) {
    throw VersionMismatch("log protocol " + header.value("protocol", json()).dump() +
                          ", expected " + std::to_string(kProtocolVersion));
  }
  if (header.value("description_sha256", "") != DescriptionHash(desc)) {
    throw VersionMismatch("log was recorded for a different description");
  }

  const Net& net = desc.net;
  const auto groups = net.ChanceGroups();
  std::map<std::uint32_t, JointMove> accepted;
  std::map<std::uint32_t, std::vector<std::pair<std::string, std::string>>> draws;
  std::map<std::uint32_t, Marking> states;
  std::optional<json> end;
  std::uint32_t end_chronon = 0;
  std::int64_t last_t = std::numeric_limits<std::int64_t>::min();
  try {
    for (std::size_t i = 1; i < records.size(); ++i) {
      const json& r = records[i];
      if (end) throw CorruptLog("records after the end record");
      const auto t = r.at("t").get<std::int64_t>();
      if (t < last_t) throw CorruptLog("timestamps decrease at line " + std::to_string(i + 1));
      last_t = t;
      const auto chronon = r.at("chronon").get<std::uint32_t>();
      const std::string event = r.at("event").get<std::string>();
      const json& payload = r.at("payload");
      if (event == "action-accepted") {
        const auto p = net.FindPlayer(payload.at("player").get<std::string>());
        const auto tr = net.FindTransition(payload.at("transition").get<std::string>());
        if (!p || !tr) throw CorruptLog("accepted action names unknown player or transition");
        auto [it, fresh] = accepted.try_emplace(chronon);
        if (fresh) it->second.actions.resize(net.players.size());
        if (it->second.actions[*p]) throw CorruptLog("two accepted actions in one chronon");
        it->second.actions[*p] = *tr;
      } else if (event == "chance-draw") {
        draws[chronon].emplace_back(payload.at("group").get<std::string>(),
                                    payload.at("transition").get<std::string>());
      } else if (event == "state") {
        states[chronon] = MarkingFromJson(payload.at("marking"), net);
      } else if (event == "end") {
        end = payload;
        end_chronon = chronon;
      }
    }
  } catch (const json::exception& e) {
    throw CorruptLog(std::string("malformed record: ") + e.what());
  }
  if (!end) throw CorruptLog("truncated log: no end record");

  ReplayResult result;
  std::mt19937_64 rng(header.at("seed").get<std::uint64_t>());
  Marking m = InitialMarking(net);
  std::uint32_t k = 0;
  for (; k < desc.horizon && !EvaluateTerminal(desc, m); ++k) {
    ChrononMove move;
    if (auto it = accepted.find(k); it != accepted.end()) {
      move.joint = it->second;
    } else {
      move.joint = NoopMove(desc);
    }
    std::vector<TransitionIndex> fired;
    m = ResolveChronon(desc, m, move.joint, rng, move.chance, fired);
    std::vector<std::pair<std::string, std::string>> drawn;
    for (std::size_t g = 0; g < groups.size(); ++g) {
      if (const auto& d = move.chance.draws[g]) {
        drawn.emplace_back(groups[g], net.transitions[*d].name);
      }
    }
    const auto logged = draws.find(k);
    if (drawn != (logged == draws.end() ? decltype(drawn){} : logged->second)) {
      throw CorruptLog("chance draws disagree with the seed at chronon " +
                       std::to_string(k));
    }
    const auto state = states.find(k);
    if (state == states.end()) {
      throw CorruptLog("no state record for chronon " + std::to_string(k));
    }
    if (state->second != m) {
      throw CorruptLog("state record disagrees at chronon " + std::to_string(k));
    }
    result.history.push_back(std::move(move));
  }
  if (end_chronon != k) throw CorruptLog("end record at the wrong chronon");
  result.marking = m;
  result.payoffs = EvaluatePayoffs(desc, m);
  try {
    result.logged_marking = MarkingFromJson(end->at("marking"), net);
    for (const std::string& p : desc.players()) {
      const auto value = ParseRational(end->at("payoffs").at(p).get<std::string>());
      if (!value) throw CorruptLog("unreadable payoff for " + p);
      result.logged_payoffs.push_back(*value);
    }
  } catch (const json::exception& e) {
    throw CorruptLog(std::string("malformed end record: ") + e.what());
  }
  return result;
}

std::optional<NodeId> FollowHistory(const GameTree& tree,
                                    const History& history) {
  NodeId node = tree.root();
  for (std::uint32_t k = 0; k < history.size(); ++k) {
    const ChrononMove& move = history[k];
    while (tree.node(node).kind != NodeKind::kTerminal &&
           tree.node(node).chronon == k) {
      const TreeNode& n = tree.node(node);
      std::optional<TransitionIndex> want;
      if (n.kind == NodeKind::kDecision) {
        want = move.joint.actions.at(n.owner);
      } else {
        want = move.chance.draws.at(n.owner);
      }
      if (!want) return std::nullopt;
      std::optional<NodeId> next;
      for (std::size_t i = 0; i < n.num_children; ++i) {
        if (tree.node(tree.child(node, i)).action == *want) next = tree.child(node, i);
      }
      if (!next) return std::nullopt;
      node = *next;
    }
    // Past the node's chronon: idle chronons the tree skips over.
    if (tree.node(node).chronon <= k) return std::nullopt;
  }
  const TreeNode& last = tree.node(node);
  if (last.kind != NodeKind::kTerminal || last.chronon != history.size()) {
    return std::nullopt;
  }
  return node;
}

}  // namespace petrigame
