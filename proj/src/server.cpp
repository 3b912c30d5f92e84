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

#include "petrigame/server.h"

#include <cctype>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <limits>
#include <utility>

#include <boost/asio/dispatch.hpp>
#include <boost/asio/ip/tcp.hpp>
#include <boost/asio/steady_timer.hpp>
#include <boost/beast/core.hpp>
#include <boost/beast/http.hpp>
#include <boost/beast/websocket.hpp>

#include "petrigame/error.h"

namespace petrigame {

namespace asio = boost::asio;
namespace beast = boost::beast;
namespace http = beast::http;
namespace websocket = beast::websocket;
using tcp = asio::ip::tcp;
using nlohmann::json;

namespace {

template <typename T>
T ParseNumber(const std::string& key, const std::string& text) {
  try {
    std::size_t used = 0;
    const unsigned long long v = std::stoull(text, &used);
    if (used != text.size() || v > std::numeric_limits<T>::max()) throw 0;
    return static_cast<T>(v);
  } catch (...) {
    throw Error("config: " + key + " must be a non-negative integer, got '" + text + "'");
  }
}

bool ParseBool(const std::string& key, const std::string& text) {
  if (text == "1" || text == "true") return true;
  if (text == "0" || text == "false") return false;
  throw Error("config: " + key + " must be true or false, got '" + text + "'");
}

SeatKind ParseBot(const std::string& key, const std::string& text) {
  const auto kind = ParseSeatKind(text);
  if (!kind || *kind == SeatKind::kHuman) {
    throw Error("config: " + key + " must be random, first or idle, got '" + text + "'");
  }
  return *kind;
}

// Applies one setting given as text; shared by the file and the environment.
void Apply(ServerConfig& c, const std::string& key, const std::string& value) {
  if (key == "address") c.address = value;
  else if (key == "port") c.port = ParseNumber<std::uint16_t>(key, value);
  else if (key == "max_sessions") c.max_sessions = ParseNumber<std::size_t>(key, value);
  else if (key == "max_clients") c.max_clients = ParseNumber<std::size_t>(key, value);
  else if (key == "default_bot") c.default_bot = ParseBot(key, value);
  else if (key == "log_dir") c.log_dir = value;
  else if (key == "allow_monitor") c.allow_monitor = ParseBool(key, value);
  else if (key == "chronon_ms") c.chronon_ms = ParseNumber<std::uint32_t>(key, value);
  else throw Error("config: unknown key '" + key + "'");
}

constexpr const char* kKeys[] = {"address",     "port",    "max_sessions",
                                 "max_clients", "default_bot", "log_dir",
                                 "allow_monitor", "chronon_ms"};

}  // namespace

ServerConfig LoadServerConfig(const std::string& path, const EnvLookup& env) {
  ServerConfig config;
  if (!path.empty()) {
    json file;
    try {
      file = json::parse(ReadTextFile(path));
    } catch (const json::exception& e) {
      throw Error("config: " + path + ": " + e.what());
    }
    if (!file.is_object()) throw Error("config: " + path + ": expected an object");
    for (const auto& [key, value] : file.items()) {
      Apply(config, key, value.is_string() ? value.get<std::string>() : value.dump());
    }
  }
  EnvLookup lookup = env;
  if (!lookup) {
    lookup = [](const std::string& name) -> std::optional<std::string> {
      if (const char* v = std::getenv(name.c_str())) return std::string(v);
      return std::nullopt;
    };
  }
  for (const char* key : kKeys) {
    std::string name = "PETRIGAME_";
    for (const char* c = key; *c; ++c) name += static_cast<char>(std::toupper(*c));
    if (auto value = lookup(name)) Apply(config, key, *value);
  }
  return config;
}

json ToJson(const ServerConfig& c) {
  return {{"address", c.address},
          {"port", c.port},
          {"max_sessions", c.max_sessions},
          {"max_clients", c.max_clients},
          {"default_bot", ToString(c.default_bot)},
          {"log_dir", c.log_dir},
          {"allow_monitor", c.allow_monitor},
          {"chronon_ms", c.chronon_ms}};
}

struct Server::Impl {
  class Connection;

  struct Entry {
    explicit Entry(asio::io_context& io) : timer(io) {}
    std::unique_ptr<std::ofstream> log;
    std::unique_ptr<Session> session;
    asio::steady_timer timer;
    std::vector<Clock::time_point> ticks;
    std::map<std::string, std::weak_ptr<Connection>> seats;
    std::vector<std::weak_ptr<Connection>> monitors;
  };

  class Connection : public std::enable_shared_from_this<Connection> {
   public:
    Connection(tcp::socket socket, Impl* server, std::uint64_t id)
        : ws_(std::move(socket)), server_(server), id_(id) {}

    void Run() {
      asio::dispatch(ws_.get_executor(), [self = shared_from_this()] {
        self->ReadRequest();
      });
    }

    void Send(std::string text) {
      if (closing_) return;
      queue_.push_back(std::move(text));
      if (open_ && !writing_) Write();
    }

    // Closes once queued messages are written.
    void Close() {
      closing_ = true;
      if (open_ && !writing_) DoClose();
    }

    std::uint64_t id() const { return id_; }
    std::string session;
    std::string player;
    bool monitor = false;

   private:
    void ReadRequest() {
      beast::get_lowest_layer(ws_).expires_after(std::chrono::seconds(30));
      http::async_read(ws_.next_layer(), buffer_, request_,
                       [self = shared_from_this()](beast::error_code ec, std::size_t) {
                         self->OnRequest(ec);
                       });
    }

    void OnRequest(beast::error_code ec) {
      if (ec) return;
      if (!websocket::is_upgrade(request_)) {
        auto res = std::make_shared<http::response<http::string_body>>(
            http::status::upgrade_required, request_.version());
        res->set(http::field::content_type, "text/plain");
        res->body() = "petrigame speaks websocket only\n";
        res->prepare_payload();
        http::async_write(ws_.next_layer(), *res,
                          [self = shared_from_this(), res](beast::error_code, std::size_t) {
                            beast::error_code ignored;
                            self->ws_.next_layer().socket().shutdown(
                                tcp::socket::shutdown_send, ignored);
                          });
        return;
      }
      beast::get_lowest_layer(ws_).expires_never();
      ws_.set_option(websocket::stream_base::timeout::suggested(beast::role_type::server));
      ws_.async_accept(request_, [self = shared_from_this()](beast::error_code ec) {
        if (ec) return;
        self->open_ = true;
        self->server_->connections[self->id_] = self;
        if (!self->queue_.empty()) self->Write();
        else if (self->closing_) self->DoClose();
        self->Read();
      });
    }

    void Read() {
      ws_.async_read(buffer_, [self = shared_from_this()](beast::error_code ec, std::size_t) {
        if (ec) {
          self->open_ = false;
          self->server_->OnClosed(*self);
          return;
        }
        std::string text = beast::buffers_to_string(self->buffer_.data());
        self->buffer_.consume(self->buffer_.size());
        self->server_->OnMessage(self, text);
        if (self->open_) self->Read();
      });
    }

    void Write() {
      writing_ = true;
      ws_.text(true);
      ws_.async_write(asio::buffer(queue_.front()),
                      [self = shared_from_this()](beast::error_code ec, std::size_t) {
                        self->writing_ = false;
                        self->queue_.pop_front();
                        if (ec || !self->open_) return;
                        if (!self->queue_.empty()) self->Write();
                        else if (self->closing_) self->DoClose();
                      });
    }

    void DoClose() {
      open_ = false;
      ws_.async_close(websocket::close_code::normal,
                      [self = shared_from_this()](beast::error_code) {});
    }

    websocket::stream<beast::tcp_stream> ws_;
    beast::flat_buffer buffer_;
    http::request<http::string_body> request_;
    std::deque<std::string> queue_;
    Impl* server_;
    std::uint64_t id_;
    bool open_ = false;
    bool writing_ = false;
    bool closing_ = false;
  };

  Impl(Server* owner, asio::io_context& io, ServerConfig config)
      : owner(owner), io(io), config(std::move(config)), acceptor(io),
        epoch(Clock::now()) {}

  std::int64_t NowMs() const {
    return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - epoch)
        .count();
  }

  void Accept() {
    acceptor.async_accept([this](beast::error_code ec, tcp::socket socket) {
      if (ec) return;  // listener closed
      if (connections.size() >= config.max_clients) {
        beast::error_code ignored;
        socket.close(ignored);
      } else {
        std::make_shared<Connection>(std::move(socket), this, next_connection++)->Run();
      }
      Accept();
    });
  }

  static void SendJson(Connection& c, const json& message) { c.Send(message.dump()); }

  static void SendError(Connection& c, const std::string& text) {
    SendJson(c, {{"type", "error"}, {"text", text}});
  }

  void Flush(Entry& e) {
    for (Outbound& out : e.session->TakeOutbox()) {
      const std::string text = out.message.dump();
      if (out.recipient == kMonitor) {
        for (const auto& weak : e.monitors) {
          if (auto c = weak.lock()) c->Send(text);
        }
      } else if (auto it = e.seats.find(out.recipient); it != e.seats.end()) {
        if (auto c = it->second.lock()) c->Send(text);
      }
    }
  }

  void Schedule(const std::string& id) {
    Entry& e = *sessions.at(id);
    if (e.session->phase() != Phase::kRunning) {
      Finished(e);
      return;
    }
    e.timer.expires_at(epoch + std::chrono::milliseconds(e.session->deadline()));
    e.timer.async_wait([this, id](beast::error_code ec) {
      if (ec) return;
      Entry& entry = *sessions.at(id);
      entry.ticks.push_back(Clock::now());
      entry.session->Tick(NowMs());
      Flush(entry);
      Schedule(id);
    });
  }

  void Finished(Entry& e) {
    if (e.log) e.log->flush();
    if (owner->on_finished) owner->on_finished(*e.session);
  }

  void StartIfReady(const std::string& id) {
    Entry& e = *sessions.at(id);
    if (e.session->phase() != Phase::kLobby || !e.session->ReadyToStart()) return;
    e.session->Start(NowMs());
    Flush(e);
    Schedule(id);
  }

  void OnMessage(const std::shared_ptr<Connection>& c, const std::string& text) {
    json msg;
    try {
      msg = json::parse(text);
    } catch (const json::exception&) {
      SendError(*c, "malformed message: not JSON");
      return;
    }
    const std::string type = msg.is_object() ? msg.value("type", "") : "";
    try {
      if (type == "join") {
        Join(c, msg);
      } else if (type == "action") {
        if (c->player.empty()) {
          SendError(*c, "join a seat before sending actions");
          return;
        }
        Entry& e = *sessions.at(c->session);
        e.session->OnAction(c->player, msg.at("transition").get<std::string>(),
                            msg.at("chronon").get<std::uint32_t>(), NowMs());
        Flush(e);
      } else if (type == "leave") {
        if (!c->player.empty()) {
          Entry& e = *sessions.at(c->session);
          e.session->Leave(c->player);
          e.seats.erase(c->player);
          c->player.clear();
          Flush(e);
        }
        c->Close();
        connections.erase(c->id());
      } else {
        SendError(*c, "unknown message type '" + type + "'");
      }
    } catch (const json::exception& e) {
      SendError(*c, std::string("malformed ") + type + " message: " + e.what());
    }
  }

  void Join(const std::shared_ptr<Connection>& c, const json& msg) {
    if (msg.value("protocol", -1) != kProtocolVersion) {
      SendError(*c, "protocol version mismatch: server speaks " +
                        std::to_string(kProtocolVersion));
      return;
    }
    if (!c->session.empty()) {
      SendError(*c, "already joined");
      return;
    }
    const std::string id = msg.at("session").get<std::string>();
    auto it = sessions.find(id);
    if (it == sessions.end()) {
      SendError(*c, "unknown session '" + id + "'");
      return;
    }
    Entry& e = *it->second;
    const std::string role = msg.value("role", "player");
    const std::string client = "conn-" + std::to_string(c->id());
    if (role == "monitor") {
      if (!config.allow_monitor) {
        SendError(*c, "monitor role not granted by server config");
        return;
      }
      c->session = id;
      c->monitor = true;
      e.monitors.push_back(c);
      e.session->AddMonitor(client);
      Flush(e);
      return;
    }
    if (role != "player") {
      SendError(*c, "unknown role '" + role + "'");
      return;
    }
    if (e.session->phase() == Phase::kFinished) {
      SendError(*c, "session '" + id + "' has finished");
      return;
    }
    std::string seat = msg.value("seat", "");
    if (seat.empty()) {
      const auto open = e.session->OpenSeats();
      if (open.empty()) {
        SendError(*c, "no free seat in session '" + id + "'");
        return;
      }
      seat = open.front();
    }
    if (!e.session->Connect(seat, client)) {
      SendError(*c, "seat '" + seat + "' is not available");
      return;
    }
    c->session = id;
    c->player = seat;
    e.seats[seat] = c;
    Flush(e);
    StartIfReady(id);
  }

  void OnClosed(Connection& c) {
    connections.erase(c.id());
    if (c.session.empty()) return;
    auto it = sessions.find(c.session);
    if (it == sessions.end()) return;
    Entry& e = *it->second;
    if (!c.player.empty()) {
      e.session->Disconnect(c.player);
      e.seats.erase(c.player);
      Flush(e);
    }
  }

  Server* owner;
  asio::io_context& io;
  ServerConfig config;
  tcp::acceptor acceptor;
  Clock::time_point epoch;
  std::map<std::string, std::unique_ptr<Entry>> sessions;
  std::map<std::uint64_t, std::shared_ptr<Connection>> connections;
  std::uint64_t next_connection = 1;
  std::uint64_t next_session = 1;
};

Server::Server(asio::io_context& io, ServerConfig config)
    : impl_(std::make_unique<Impl>(this, io, std::move(config))) {}

Server::~Server() = default;

std::uint16_t Server::Listen() {
  const tcp::endpoint endpoint(asio::ip::make_address(impl_->config.address),
                               impl_->config.port);
  impl_->acceptor.open(endpoint.protocol());
  impl_->acceptor.set_option(asio::socket_base::reuse_address(true));
  impl_->acceptor.bind(endpoint);
  impl_->acceptor.listen();
  impl_->Accept();
  return impl_->acceptor.local_endpoint().port();
}

void Server::Stop() {
  beast::error_code ignored;
  impl_->acceptor.close(ignored);
  for (auto& [id, e] : impl_->sessions) e->timer.cancel();
  for (auto& [id, c] : impl_->connections) c->Close();
  impl_->connections.clear();
}

std::string Server::CreateSession(GameDescription desc,
                                  std::map<std::string, SeatKind> seats,
                                  std::uint64_t seed, std::string id) {
  Impl& s = *impl_;
  if (s.sessions.size() >= s.config.max_sessions) {
    throw Error("session limit of " + std::to_string(s.config.max_sessions) + " reached");
  }
  if (id.empty()) {
    do {
      id = "s" + std::to_string(s.next_session++);
    } while (s.sessions.count(id));
  } else if (s.sessions.count(id)) {
    throw Error("session '" + id + "' already exists");
  }
  for (const std::string& p : desc.players()) seats.try_emplace(p, s.config.default_bot);
  auto entry = std::make_unique<Impl::Entry>(s.io);
  if (!s.config.log_dir.empty()) {
    std::filesystem::create_directories(s.config.log_dir);
    const auto path = std::filesystem::path(s.config.log_dir) / ("session-" + id + ".jsonl");
    entry->log = std::make_unique<std::ofstream>(path);
    if (!*entry->log) throw Error("cannot write session log " + path.string());
  }
  SessionConfig sc;
  sc.session_id = id;
  sc.chronon_ms = s.config.chronon_ms;
  sc.seed = seed;
  sc.seats = std::move(seats);
  entry->session = std::make_unique<Session>(std::move(desc), std::move(sc), entry->log.get());
  s.sessions.emplace(id, std::move(entry));
  s.StartIfReady(id);
  return id;
}

const Session* Server::FindSession(const std::string& id) const {
  auto it = impl_->sessions.find(id);
  return it == impl_->sessions.end() ? nullptr : it->second->session.get();
}

const std::vector<Server::Clock::time_point>& Server::TickTimes(const std::string& id) const {
  return impl_->sessions.at(id)->ticks;
}

const ServerConfig& Server::config() const { return impl_->config; }

}  // namespace petrigame
