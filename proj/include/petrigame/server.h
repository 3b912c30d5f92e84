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

// Real-time game server: sessions scheduled on a steady clock and a
// websocket endpoint speaking the JSON protocol in docs/protocol.md.
// Everything runs on the caller's io_context; run it from one thread.

#ifndef PETRIGAME_SERVER_H_
#define PETRIGAME_SERVER_H_

#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <boost/asio/io_context.hpp>

#include "json.hpp"
#include "petrigame/session.h"

namespace petrigame {

struct ServerConfig {
  std::string address = "127.0.0.1";
  // 0 binds an ephemeral port.
  std::uint16_t port = 8080;
  std::size_t max_sessions = 16;
  std::size_t max_clients = 64;
  // Seats not named in a seat plan.
  SeatKind default_bot = SeatKind::kRandomBot;
  // One JSONL file per session; empty keeps logs in memory only.
  std::string log_dir;
  bool allow_monitor = true;
  // 0 keeps each description's chronon.
  std::uint32_t chronon_ms = 0;
};

using EnvLookup = std::function<std::optional<std::string>(const std::string&)>;

// Defaults, then the JSON file at `path` (skipped when empty), then
// PETRIGAME_ADDRESS, _PORT, _MAX_SESSIONS, _MAX_CLIENTS, _DEFAULT_BOT,
// _LOG_DIR, _ALLOW_MONITOR, _CHRONON_MS. `env` defaults to getenv. Throws
// Error on unreadable files, unknown keys or bad values.
ServerConfig LoadServerConfig(const std::string& path, const EnvLookup& env = {});
nlohmann::json ToJson(const ServerConfig& config);

class Server {
 public:
  using Clock = std::chrono::steady_clock;

  Server(boost::asio::io_context& io, ServerConfig config);
  ~Server();
  Server(const Server&) = delete;
  Server& operator=(const Server&) = delete;

  // Binds and starts accepting; returns the bound port.
  std::uint16_t Listen();
  // Closes the listener, every connection and every session timer.
  void Stop();

  // Starts at once when no seat is human, otherwise when the last human
  // seat is taken. Throws Error past max_sessions. Returns the session id.
  std::string CreateSession(GameDescription desc,
                            std::map<std::string, SeatKind> seats,
                            std::uint64_t seed, std::string id = "");

  const Session* FindSession(const std::string& id) const;
  // Steady-clock instants at which the session's chronons were resolved.
  const std::vector<Clock::time_point>& TickTimes(const std::string& id) const;
  const ServerConfig& config() const;

  // Called on the io thread when a session reaches Finished.
  std::function<void(const Session&)> on_finished;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace petrigame

#endif  // PETRIGAME_SERVER_H_
