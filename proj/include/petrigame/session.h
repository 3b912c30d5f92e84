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

// Live game sessions under equidistant time. A Session is a single-writer
// state machine driven by explicit timestamps, so the same code runs behind
// the real-time server, in fast simulation and in tests.

#ifndef PETRIGAME_SESSION_H_
#define PETRIGAME_SESSION_H_

#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "petrigame/gdl.h"
#include "petrigame/unfold.h"

namespace petrigame {

inline constexpr int kProtocolVersion = 1;

enum class SeatKind { kHuman, kRandomBot, kFirstBot, kIdleBot };

// "human", "random", "first", "idle".
std::string_view ToString(SeatKind kind);
std::optional<SeatKind> ParseSeatKind(std::string_view text);

// "random,human" (one entry per player, in order) or "P2=human" (named
// entries, the rest take `fallback`). Throws std::invalid_argument.
std::map<std::string, SeatKind> ParseSeatPlan(const GameDescription& desc,
                                              std::string_view spec,
                                              SeatKind fallback = SeatKind::kRandomBot);

enum class Phase { kLobby, kRunning, kFinished };
std::string_view ToString(Phase phase);

enum class RejectReason { kLate, kIllegal, kDuplicate, kWrongChronon };
std::string_view ToString(RejectReason reason);

// Recipient of monitor messages.
inline constexpr std::string_view kMonitor = "*monitor";

struct Outbound {
  // Player name, or kMonitor.
  std::string recipient;
  nlohmann::json message;
};

// Hex SHA-256 of the canonical serialization.
std::string DescriptionHash(const GameDescription& desc);

// Exact weighted draw of one enabled member of chance group `group`;
// nullopt when fewer than two are enabled (no draw needed).
std::optional<TransitionIndex> DrawChance(const GameDescription& desc,
                                          const Marking& at_turn,
                                          std::size_t group,
                                          std::mt19937_64& rng);

struct SessionConfig {
  std::string session_id = "s1";
  // 0 takes the description's chronon.
  std::uint32_t chronon_ms = 0;
  std::uint64_t seed = 0;
  // Missing players are humans.
  std::map<std::string, SeatKind> seats;
  // Wall clock for log records and deadline timestamps, ms since epoch.
  std::function<std::int64_t()> wall_clock;
};

class Session {
 public:
  // Throws InvalidDescription, or std::invalid_argument for a seat naming an
  // unknown player.
  Session(GameDescription desc, SessionConfig config,
          std::ostream* log_sink = nullptr);

  const GameDescription& description() const { return desc_; }
  const SessionConfig& config() const { return config_; }
  std::uint32_t chronon_ms() const { return chronon_ms_; }
  Phase phase() const { return phase_; }
  std::uint32_t chronon() const { return chronon_; }
  const Marking& marking() const { return marking_; }
  // Monotonic deadline of the current chronon.
  std::int64_t deadline() const { return deadline_; }

  // Human seats. Connect sends Rules to the seat; false when the seat is not
  // a free human seat.
  bool Connect(std::string_view player, const std::string& client);
  void Disconnect(std::string_view player);
  std::vector<std::string> OpenSeats() const;
  bool ReadyToStart() const { return OpenSeats().empty(); }
  // Sends Rules (and, when running, the full marking) to a monitor.
  void AddMonitor(const std::string& client);

  // Lobby -> Running at monotonic time `now_ms`.
  void Start(std::int64_t now_ms);
  // nullopt means accepted.
  std::optional<RejectReason> OnAction(std::string_view player,
                                       std::string_view transition,
                                       std::uint32_t chronon,
                                       std::int64_t now_ms);
  // Resolves the current chronon; the scheduler calls it at every deadline.
  void Tick(std::int64_t now_ms);
  // Player leaves; its seat plays noop from now on.
  void Leave(std::string_view player);

  std::vector<Outbound> TakeOutbox();

  // One entry per resolved chronon.
  const History& history() const { return history_; }
  // markings()[k] opens chronon k; the last one is the current marking.
  const std::vector<Marking>& markings() const { return markings_; }
  // Set once Finished.
  const std::vector<Rational>& payoffs() const { return payoffs_; }
  const std::vector<std::string>& log_lines() const { return log_lines_; }

 private:
  void Log(std::string_view event, nlohmann::json payload);
  void Send(std::string_view recipient, nlohmann::json message);
  void OpenChronon(std::int64_t now_ms);
  void Finish();
  void BotMoves(std::int64_t now_ms);
  nlohmann::json RulesMessage(std::string_view seat) const;
  nlohmann::json TickMessage(std::size_t player, std::int64_t now_ms) const;
  std::int64_t WallNow();

  GameDescription desc_;
  SessionConfig config_;
  std::ostream* log_sink_;
  std::uint32_t chronon_ms_;
  std::vector<SeatKind> seat_kind_;
  std::vector<std::string> seat_client_;
  std::vector<bool> seat_left_;
  std::vector<std::string> monitors_;
  Phase phase_ = Phase::kLobby;
  std::uint32_t chronon_ = 0;
  Marking marking_;
  std::int64_t start_ = 0;
  std::int64_t deadline_ = 0;
  std::vector<std::optional<TransitionIndex>> pending_;
  std::vector<std::vector<TransitionIndex>> enabled_;
  std::mt19937_64 chance_rng_;
  std::vector<std::mt19937_64> bot_rng_;
  History history_;
  std::vector<Marking> markings_;
  std::vector<TransitionIndex> last_fired_;
  std::vector<Rational> payoffs_;
  std::vector<Outbound> outbox_;
  std::vector<std::string> log_lines_;
  std::int64_t last_log_time_ = 0;
};

// Runs a session with no humans to completion in virtual time (each chronon
// takes exactly chronon_ms). All seats must be bots.
struct SimulationResult {
  History history;
  std::vector<Marking> markings;
  std::vector<Rational> payoffs;
  std::vector<std::string> log_lines;
};
SimulationResult SimulateSession(const GameDescription& desc,
                                 const std::map<std::string, SeatKind>& seats,
                                 std::uint64_t seed);

struct ReplayResult {
  // Recomputed from the header seed and the logged accepted actions.
  Marking marking;
  std::vector<Rational> payoffs;
  // As recorded in the End record.
  Marking logged_marking;
  std::vector<Rational> logged_payoffs;
  History history;
};

// Throws VersionMismatch (protocol version or description hash differ) or
// CorruptLog (malformed, truncated, or inconsistent with its own records).
ReplayResult Replay(std::istream& log, const GameDescription& desc);
ReplayResult ReplayLines(const std::vector<std::string>& lines,
                         const GameDescription& desc);

// Walks the tree along a session history. Returns the node reached, or
// nullopt when some chronon leaves the tree (for example a decider that
// played noop, which is not a tree action).
std::optional<NodeId> FollowHistory(const GameTree& tree,
                                    const History& history);

}  // namespace petrigame

#endif  // PETRIGAME_SESSION_H_
