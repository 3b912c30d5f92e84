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

// petrigame: validate, unfold, solve, export, serve, simulate, gen, replay.
// Exit codes are listed in README.md.

#include <cmath>
#include <csignal>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <boost/asio/io_context.hpp>
#include <boost/asio/signal_set.hpp>

#include "CLI11.hpp"
#include "json.hpp"
#include "petrigame/error.h"
#include "petrigame/gdl.h"
#include "petrigame/gen.h"
#include "petrigame/server.h"
#include "petrigame/session.h"
#include "petrigame/solve.h"
#include "petrigame/unfold.h"

namespace {

using nlohmann::json;
using namespace petrigame;

enum ExitCode {
  kOk = 0,
  kInvalidInput = 1,
  kUsage = 2,
  kBudget = 3,
  kSolverPrecondition = 4,
  kIo = 5,
  kLogMismatch = 6,
  kInternal = 70,
};

struct Options {
  bool json = false;
};

// Thrown to leave with a specific exit code after printing a message.
struct Exit {
  int code;
};

void Emit(const Options& o, const json& j, const std::string& text) {
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << text;
  }
}

std::string SourceLine(const std::string& source, std::size_t line) {
  std::istringstream in(source);
  std::string text;
  for (std::size_t i = 0; i < line && std::getline(in, text); ++i) {
  }
  return text;
}

json DiagnosticJson(const std::string& file, const Diagnostic& d) {
  return {{"file", file},
          {"line", d.span.line},
          {"column", d.span.column},
          {"length", d.span.length},
          {"severity", d.severity == Severity::kError ? "error" : "warning"},
          {"message", d.message}};
}

// FILE:LINE:COL: error: MESSAGE, then the line and a caret under the span.
std::string RenderDiagnostic(const std::string& file, const std::string& source,
                             const Diagnostic& d) {
  std::string out = file + ":" + ToString(d) + "\n";
  if (d.span.line > 0) {
    const std::string line = SourceLine(source, d.span.line);
    out += "  " + line + "\n  ";
    out += std::string(d.span.column > 0 ? d.span.column - 1 : 0, ' ');
    out += std::string(std::max<std::size_t>(d.span.length, 1), '^') + "\n";
  }
  return out;
}

std::string ReadOrExit(const std::string& path) {
  try {
    return ReadTextFile(path);
  } catch (const Error& e) {
    std::cerr << "petrigame: " << e.what() << "\n";
    throw Exit{kIo};
  }
}

void WriteOrExit(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) {
    std::cerr << "petrigame: cannot write " << path << "\n";
    throw Exit{kIo};
  }
}

// Parses and validates; diagnostics go to stderr.
GameDescription LoadOrExit(const std::string& path) {
  const std::string source = ReadOrExit(path);
  std::vector<Diagnostic> diagnostics;
  std::optional<GameDescription> desc;
  try {
    desc = Parse(source);
    diagnostics = Validate(*desc);
  } catch (const ParseError& e) {
    diagnostics = e.diagnostics();
  }
  for (const Diagnostic& d : diagnostics) {
    std::cerr << RenderDiagnostic(path, source, d);
  }
  if (!desc || HasErrors(diagnostics)) throw Exit{kInvalidInput};
  return *desc;
}

int Validate(const Options& o, const std::string& path) {
  const std::string source = ReadOrExit(path);
  std::vector<Diagnostic> diagnostics;
  try {
    diagnostics = Validate(Parse(source));
  } catch (const ParseError& e) {
    diagnostics = e.diagnostics();
  }
  const bool ok = !HasErrors(diagnostics);
  json j = {{"file", path}, {"valid", ok}, {"diagnostics", json::array()}};
  std::string text;
  for (const Diagnostic& d : diagnostics) {
    j["diagnostics"].push_back(DiagnosticJson(path, d));
    text += RenderDiagnostic(path, source, d);
  }
  if (ok) text += path + ": ok\n";
  if (o.json) {
    std::cout << j.dump(2) << "\n";
  } else {
    (ok ? std::cout : std::cerr) << text;
  }
  return ok ? kOk : kInvalidInput;
}

GameTree UnfoldOrExit(const GameDescription& desc, std::uint64_t budget) {
  UnfoldOptions options;
  options.node_budget = budget;
  try {
    return Unfold(desc, options);
  } catch (const BudgetExceeded& e) {
    std::cerr << "petrigame: " << e.what() << " (raise --budget)\n";
    throw Exit{kBudget};
  }
}

int UnfoldCommand(const Options& o, const std::string& path, std::uint64_t budget,
                  const std::string& graph) {
  const GameDescription desc = LoadOrExit(path);
  const GameTree tree = UnfoldOrExit(desc, budget);
  const TreeStats s = ComputeTreeStats(tree);
  if (!graph.empty()) WriteOrExit(graph, ExportDot(tree));
  std::ostringstream text;
  text << "nodes " << s.node_count << "\nterminals " << s.terminal_count
       << "\ninfo sets " << s.info_set_count << "\nmax depth " << s.max_depth << "\n";
  Emit(o,
       {{"nodes", s.node_count},
        {"terminals", s.terminal_count},
        {"info_sets", s.info_set_count},
        {"max_depth", s.max_depth}},
       text.str());
  return kOk;
}

std::string InfoSetName(const GameTree& tree, InfoSetId h) {
  return tree.players()[tree.info_set_player(h)] + "#" + std::to_string(h);
}

std::string ActionLabel(const GameTree& tree, InfoSetId h, std::size_t a) {
  const NodeId n = tree.info_set_representative(h);
  return tree.action_label(tree.node(tree.child(n, a)).action);
}

json ValuesJson(const GameTree& tree, const std::vector<Rational>& values) {
  json j = json::object();
  for (std::size_t p = 0; p < values.size(); ++p) j[tree.players()[p]] = ToString(values[p]);
  return j;
}

std::string ValuesText(const GameTree& tree, const std::vector<Rational>& values) {
  std::string out = "values";
  for (std::size_t p = 0; p < values.size(); ++p) {
    out += " " + tree.players()[p] + "=" + ToString(values[p]);
  }
  return out + "\n";
}

int Solve(const Options& o, const std::string& path, const std::string& method,
          std::uint64_t budget) {
  const GameDescription desc = LoadOrExit(path);
  const GameTree tree = UnfoldOrExit(desc, budget);
  constexpr std::size_t kShown = 50;
  try {
    if (method == "pure-nash") {
      NormalFormOptions options;
      options.profile_budget = budget;
      NormalForm nf = ToNormalForm(tree, options);
      nf.title = desc.title;
      const auto eqs = PureNash(nf);
      json j = {{"method", method}, {"equilibria", json::array()}};
      std::string text;
      for (const PureProfile& p : eqs) {
        const std::string name = ToString(nf, p);
        json payoff = ValuesJson(tree, nf.payoffs[nf.ProfileIndex(p.strategies)]);
        j["equilibria"].push_back({{"profile", name}, {"payoffs", payoff}});
        text += name + " " + ValuesText(tree, nf.payoffs[nf.ProfileIndex(p.strategies)]);
      }
      if (eqs.empty()) text = "no pure Nash equilibrium\n";
      Emit(o, j, text);
    } else if (method == "bi") {
      const Equilibrium eq = BackwardInduction(tree);
      const auto& choice = std::get<PureBehavior>(eq.profile).choice;
      json plan = json::object();
      std::string text = ValuesText(tree, eq.values);
      for (InfoSetId h = 0; h < choice.size(); ++h) {
        plan[InfoSetName(tree, h)] = ActionLabel(tree, h, choice[h]);
        if (h < kShown) {
          text += InfoSetName(tree, h) + ": " + ActionLabel(tree, h, choice[h]) + "\n";
        }
      }
      if (choice.size() > kShown) {
        text += "(" + std::to_string(choice.size() - kShown) + " more info sets)\n";
      }
      Emit(o, {{"method", method}, {"kind", ToString(eq.kind)},
               {"values", ValuesJson(tree, eq.values)}, {"plan", plan}},
           text);
    } else {
      const Equilibrium eq = ZeroSumValue(tree);
      const auto& probs = std::get<BehaviorProfile>(eq.profile).probabilities;
      json strategy = json::object();
      std::string text = ValuesText(tree, eq.values);
      for (InfoSetId h = 0; h < probs.size(); ++h) {
        json dist = json::object();
        std::string line = InfoSetName(tree, h) + ":";
        for (std::size_t a = 0; a < probs[h].size(); ++a) {
          dist[ActionLabel(tree, h, a)] = ToString(probs[h][a]);
          line += " " + ActionLabel(tree, h, a) + "=" + ToString(probs[h][a]);
        }
        strategy[InfoSetName(tree, h)] = dist;
        if (h < kShown) text += line + "\n";
      }
      if (probs.size() > kShown) {
        text += "(" + std::to_string(probs.size() - kShown) + " more info sets)\n";
      }
      Emit(o, {{"method", method}, {"kind", ToString(eq.kind)},
               {"values", ValuesJson(tree, eq.values)}, {"strategy", strategy}},
           text);
    }
  } catch (const BudgetExceeded& e) {
    std::cerr << "petrigame: " << e.what() << "\n";
    return kBudget;
  } catch (const ImperfectInformation& e) {
    std::cerr << "petrigame: " << e.what() << "\n";
    return kSolverPrecondition;
  } catch (const NotTwoPlayer& e) {
    std::cerr << "petrigame: " << e.what() << "\n";
    return kSolverPrecondition;
  } catch (const NotConstantSum& e) {
    std::cerr << "petrigame: " << e.what() << "\n";
    return kSolverPrecondition;
  }
  return kOk;
}

int Export(const Options& o, const std::string& path, const std::string& format,
           const std::string& out, std::uint64_t budget) {
  const GameDescription desc = LoadOrExit(path);
  const GameTree tree = UnfoldOrExit(desc, budget);
  std::string text;
  if (format == "efg") {
    text = ExportEfg(tree, desc.title);
  } else {
    NormalFormOptions options;
    options.profile_budget = budget;
    try {
      NormalForm nf = ToNormalForm(tree, options);
      nf.title = desc.title;
      text = ExportNfg(nf);
    } catch (const BudgetExceeded& e) {
      std::cerr << "petrigame: " << e.what() << "\n";
      return kBudget;
    }
  }
  WriteOrExit(out, text);
  Emit(o, {{"format", format}, {"output", out}, {"bytes", text.size()}},
       "wrote " + out + "\n");
  return kOk;
}

std::map<std::string, SeatKind> SeatsOrExit(const GameDescription& desc,
                                            const std::string& spec,
                                            SeatKind fallback) {
  try {
    return ParseSeatPlan(desc, spec, fallback);
  } catch (const std::invalid_argument& e) {
    std::cerr << "petrigame: --bots: " << e.what() << "\n";
    throw Exit{kUsage};
  }
}

int Serve(const Options& o, const std::string& path, const std::string& addr,
          std::uint64_t seed, const std::string& bots, const std::string& config_path,
          const std::string& session_id) {
  const GameDescription desc = LoadOrExit(path);
  ServerConfig config;
  try {
    config = LoadServerConfig(config_path);
  } catch (const Error& e) {
    std::cerr << "petrigame: " << e.what() << "\n";
    return kInvalidInput;
  }
  if (!addr.empty()) {
    const auto colon = addr.rfind(':');
    if (colon == std::string::npos) {
      std::cerr << "petrigame: --addr expects HOST:PORT\n";
      return kUsage;
    }
    config.address = addr.substr(0, colon);
    try {
      config.port = static_cast<std::uint16_t>(std::stoul(addr.substr(colon + 1)));
    } catch (const std::exception&) {
      std::cerr << "petrigame: bad port in --addr\n";
      return kUsage;
    }
  }
  // Unnamed seats default to humans when serving.
  const auto seats = SeatsOrExit(desc, bots, SeatKind::kHuman);
  boost::asio::io_context io;
  Server server(io, config);
  std::uint16_t port = 0;
  try {
    port = server.Listen();
  } catch (const std::exception& e) {
    std::cerr << "petrigame: cannot listen on " << config.address << ":"
              << config.port << ": " << e.what() << "\n";
    return kIo;
  }
  json result;
  boost::asio::signal_set signals(io, SIGINT, SIGTERM);
  signals.async_wait([&](const boost::system::error_code& ec, int) {
    if (ec) return;
    server.Stop();
    io.stop();
  });
  server.on_finished = [&](const Session& s) {
    result = {{"session", s.config().session_id},
              {"chronons", s.chronon()},
              {"payoffs", json::object()}};
    for (std::size_t p = 0; p < s.payoffs().size(); ++p) {
      result["payoffs"][desc.players()[p]] = ToString(s.payoffs()[p]);
    }
    server.Stop();
    signals.cancel();
  };
  const std::string id = server.CreateSession(desc, seats, seed, session_id);
  std::cerr << "serving session " << id << " on ws://" << config.address << ":"
            << port << "/\n";
  io.run();
  if (result.is_null()) {
    std::cerr << "petrigame: interrupted before the session finished\n";
    return kOk;
  }
  std::string text = "session " + id + " finished:";
  for (const auto& [player, value] : result["payoffs"].items()) {
    text += " " + player + "=" + value.get<std::string>();
  }
  Emit(o, result, text + "\n");
  return kOk;
}

int Simulate(const Options& o, const std::string& path, const std::string& bots,
             std::uint64_t seed, std::uint64_t repeat, std::uint64_t budget) {
  const GameDescription desc = LoadOrExit(path);
  const auto seats = SeatsOrExit(desc, bots, SeatKind::kRandomBot);
  for (const auto& [player, kind] : seats) {
    if (kind == SeatKind::kHuman) {
      std::cerr << "petrigame: simulate needs a bot in every seat\n";
      return kUsage;
    }
  }
  const std::size_t n = desc.players().size();
  std::map<std::vector<Rational>, std::uint64_t> counts;
  std::vector<double> sum(n, 0), sum_sq(n, 0);
  for (std::uint64_t i = 0; i < repeat; ++i) {
    const SimulationResult r = SimulateSession(desc, seats, seed + i);
    ++counts[r.payoffs];
    for (std::size_t p = 0; p < n; ++p) {
      const double x = ToDouble(r.payoffs[p]);
      sum[p] += x;
      sum_sq[p] += x * x;
    }
  }
  json j = {{"sessions", repeat}, {"seed", seed}, {"outcomes", json::array()},
            {"players", json::object()}};
  std::ostringstream text;
  text << "outcome frequencies over " << repeat << " sessions\n";
  for (const auto& [payoffs, count] : counts) {
    json u = json::array();
    for (const Rational& x : payoffs) u.push_back(ToString(x));
    j["outcomes"].push_back({{"payoffs", u}, {"count", count},
                             {"frequency", static_cast<double>(count) / repeat}});
    text << "  " << ToString(payoffs) << "  " << count << "  "
         << static_cast<double>(count) / repeat << "\n";
  }
  // Exact expectation under uniform play, when every bot is uniform and the
  // tree fits the budget.
  std::optional<std::vector<Rational>> exact;
  bool all_random = true;
  for (const auto& [player, kind] : seats) all_random &= kind == SeatKind::kRandomBot;
  if (all_random) {
    try {
      UnfoldOptions options;
      options.node_budget = budget;
      const GameTree tree = Unfold(desc, options);
      exact = ExpectedPayoffs(tree, UniformProfile(tree));
    } catch (const BudgetExceeded&) {
    }
  }
  for (std::size_t p = 0; p < n; ++p) {
    const double mean = sum[p] / repeat;
    const double var = repeat > 1 ? (sum_sq[p] - repeat * mean * mean) / (repeat - 1) : 0;
    const double se = std::sqrt(std::max(0.0, var) / repeat);
    json pj = {{"mean", mean}, {"standard_error", se}};
    text << desc.players()[p] << ": mean " << mean << " se " << se;
    if (exact) {
      pj["exact_uniform"] = ToString((*exact)[p]);
      text << " exact-uniform " << ToString((*exact)[p]);
      if (se > 0) {
        const double z = (mean - ToDouble((*exact)[p])) / se;
        pj["z"] = z;
        text << " z " << z;
      }
    }
    text << "\n";
    j["players"][desc.players()[p]] = pj;
  }
  Emit(o, j, text.str());
  return kOk;
}

int Gen(const Options& o, const GenParams& params, const std::string& out) {
  try {
    CheckGenParams(params);
  } catch (const std::invalid_argument& e) {
    std::cerr << "petrigame: " << e.what() << "\n";
    return kUsage;
  }
  GameDescription desc;
  try {
    desc = Generate(params);
  } catch (const Error& e) {
    std::cerr << "petrigame: " << e.what() << "\n";
    return kBudget;
  }
  const std::string text = Serialize(desc);
  if (out.empty() || out == "-") {
    std::cout << text;
    return kOk;
  }
  WriteOrExit(out, text);
  Emit(o, {{"output", out}, {"bytes", text.size()}}, "wrote " + out + "\n");
  return kOk;
}

int ReplayCommand(const Options& o, const std::string& log_path, const std::string& path) {
  const GameDescription desc = LoadOrExit(path);
  std::ifstream in(log_path);
  if (!in) {
    std::cerr << "petrigame: cannot read " << log_path << "\n";
    return kIo;
  }
  ReplayResult r;
  try {
    r = Replay(in, desc);
  } catch (const Error& e) {
    std::cerr << "petrigame: " << e.what() << "\n";
    return kLogMismatch;
  }
  const bool match = r.payoffs == r.logged_payoffs && r.marking == r.logged_marking;
  json j = {{"match", match}, {"chronons", r.history.size()},
            {"payoffs", json::object()}, {"logged_payoffs", json::object()}};
  std::string text = match ? "replay matches the log:" : "replay DIFFERS from the log:";
  for (std::size_t p = 0; p < r.payoffs.size(); ++p) {
    j["payoffs"][desc.players()[p]] = ToString(r.payoffs[p]);
    j["logged_payoffs"][desc.players()[p]] = ToString(r.logged_payoffs.at(p));
    text += " " + desc.players()[p] + "=" + ToString(r.payoffs[p]);
  }
  Emit(o, j, text + "\n");
  return match ? kOk : kLogMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"petrigame: Petri-net games with equidistant time"};
  app.require_subcommand(1);
  Options o;
  app.add_flag("--json", o.json, "Machine-readable JSON output");

  std::string file, out, graph, method = "bi", format, addr, bots, config_path,
      session_id, log_path;
  std::uint64_t budget = 1'000'000, seed = 0, repeat = 1;
  bool stats = false;
  GenParams gen;

  auto* validate = app.add_subcommand("validate", "Check a description");
  validate->add_option("FILE", file)->required();

  auto* unfold = app.add_subcommand("unfold", "Unfold into a game tree");
  unfold->add_option("FILE", file)->required();
  unfold->add_flag("--stats", stats, "Print tree statistics (default)");
  unfold->add_option("--graph", graph, "Write the tree as Graphviz dot");
  unfold->add_option("--budget", budget, "Node budget");

  auto* solve = app.add_subcommand("solve", "Compute an equilibrium");
  solve->add_option("FILE", file)->required();
  solve->add_option("--method", method)->check(CLI::IsMember({"bi", "pure-nash", "zero-sum"}));
  solve->add_option("--budget", budget, "Node and profile budget");

  auto* exp = app.add_subcommand("export", "Export to Gambit formats");
  exp->add_option("FILE", file)->required();
  exp->add_option("--format", format)->required()->check(CLI::IsMember({"efg", "nfg"}));
  exp->add_option("-o,--output", out)->required();
  exp->add_option("--budget", budget, "Node and profile budget");

  auto* serve = app.add_subcommand("serve", "Host one live session");
  serve->add_option("FILE", file)->required();
  serve->add_option("--addr", addr, "HOST:PORT (overrides config)");
  serve->add_option("--seed", seed);
  serve->add_option("--bots", bots, "Seat plan, e.g. P2=random or human,random");
  serve->add_option("--config", config_path, "JSON server config");
  serve->add_option("--session", session_id, "Session id");

  auto* simulate = app.add_subcommand("simulate", "Run bot sessions");
  simulate->add_option("FILE", file)->required();
  simulate->add_option("--bots", bots, "Seat plan, e.g. random,random");
  simulate->add_option("--seed", seed);
  simulate->add_option("--repeat", repeat)->check(CLI::PositiveNumber);
  simulate->add_option("--budget", budget, "Node budget for the exact expectation");

  auto* gen_cmd = app.add_subcommand("gen", "Generate a random description");
  gen_cmd->add_option("--players", gen.players);
  gen_cmd->add_option("--places", gen.places);
  gen_cmd->add_option("--transitions", gen.transitions);
  gen_cmd->add_option("--horizon", gen.horizon);
  gen_cmd->add_option("--max-bound", gen.max_bound);
  gen_cmd->add_option("--chance-groups", gen.chance_groups);
  gen_cmd->add_option("--seed", gen.seed);
  gen_cmd->add_option("--node-budget", gen.node_budget);
  gen_cmd->add_flag("--perfect-information", gen.perfect_information);
  gen_cmd->add_flag("--constant-sum", gen.constant_sum);
  gen_cmd->add_option("-o,--output", out, "Output file ('-' for stdout)");

  auto* replay = app.add_subcommand("replay", "Recompute a session log");
  replay->add_option("LOG", log_path)->required();
  replay->add_option("FILE", file)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate) return Validate(o, file);
    if (*unfold) return UnfoldCommand(o, file, budget, graph);
    if (*solve) return Solve(o, file, method, budget);
    if (*exp) return Export(o, file, format, out, budget);
    if (*serve) return Serve(o, file, addr, seed, bots, config_path, session_id);
    if (*simulate) return Simulate(o, file, bots, seed, repeat, budget);
    if (*gen_cmd) return Gen(o, gen, out);
    if (*replay) return ReplayCommand(o, log_path, file);
  } catch (const Exit& e) {
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "petrigame: internal error: " << e.what() << "\n";
    return kInternal;
  }
  return kUsage;
}
