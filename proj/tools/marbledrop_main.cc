// Copyright 2026 The Marble Drop Lab Authors
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


// marbledrop: solve the games, simulate cohorts, analyze logs, serve the
// session API and export fixtures.
//
// Exit codes: 0 success, 1 usage, 2 data error, 3 acceptance check failed.

#include <pthread.h>

#include <algorithm>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "marbledrop/agents.h"
#include "marbledrop/catalog.h"
#include "marbledrop/choices.h"
#include "marbledrop/cohort.h"
#include "marbledrop/errors.h"
#include "marbledrop/event_log.h"
#include "marbledrop/game_tree.h"
#include "marbledrop/http_api.h"
#include "marbledrop/practice.h"
#include "marbledrop/reference_table.h"
#include "marbledrop/report.h"
#include "marbledrop/session_store.h"
#include "marbledrop/solvers.h"
#include "marbledrop/version.h"

namespace fs = std::filesystem;
using namespace marbledrop;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitData = 2;
constexpr int kExitCheck = 3;

constexpr const char* kOutputEnv = "MARBLEDROP_OUTPUT_DIR";

std::string DefaultOutputDir() {
  const char* env = std::getenv(kOutputEnv);
  return env && *env ? env : "marbledrop-out";
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw NotFound("cannot read " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void WriteFile(const fs::path& path, std::string_view contents) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) throw Error("cannot write " + path.string());
}

std::vector<int> ParseRounds(const std::string& text) {
  std::vector<int> rounds;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      rounds.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::logic_error&) {
      throw InvalidArgument("bad question round '" + item + "'");
    }
  }
  return rounds;
}

struct Manifest {
  Json json;
  Manifest(std::string command, int argc, char** argv) {
    json["tool"] = "marbledrop";
    json["version"] = kVersion;
    json["command"] = std::move(command);
    Json args = Json::array();
    for (int i = 1; i < argc; ++i) args.push_back(argv[i]);
    json["argv"] = args;
  }
  void Write(const fs::path& dir) const {
    WriteFile(dir / "manifest.json", json.dump(2) + "\n");
  }
};

// ---- solve ----------------------------------------------------------------

struct SolveArgs {
  std::vector<std::string> games;
  bool all = false;
  std::vector<std::string> tree_files;
  bool check = false;
  std::string out;
};

void PrintSolution(const GameTree& tree) {
  if (tree.num_nodes() > kMaxSolverNodes) {
    throw InvalidArgument(fmt::format("{} has {} nodes; the solver cap is {}",
                                      tree.name(), tree.num_nodes(),
                                      kMaxSolverNodes));
  }
  const SolutionSet s = Solve(tree);
  std::string bi_leaves, efr_leaves;
  for (int l : s.bi_outcomes) bi_leaves += (bi_leaves.empty() ? "" : ",") + tree.leaf_label(l);
  for (int l : s.efr_outcomes) efr_leaves += (efr_leaves.empty() ? "" : ",") + tree.leaf_label(l);
  fmt::print("{}\n  BI   {}   outcomes: {}\n  EFR  {}   outcomes: {}\n",
             tree.name(), RenderPlanSets(tree, s.bi), bi_leaves,
             RenderPlanSets(tree, s.efr), efr_leaves);
}

int RunSolve(const SolveArgs& a, Manifest& manifest) {
  std::vector<GameTree> trees;
  if (a.all) {
    for (GameId g : kAllGames) trees.push_back(CatalogGame(g));
  }
  for (const std::string& name : a.games) {
    const std::optional<GameId> g = ParseGameId(name);
    if (!g) throw NotFound("unknown game '" + name + "'");
    trees.push_back(CatalogGame(*g));
  }
  for (const std::string& file : a.tree_files) {
    trees.push_back(ParseTree(ReadFile(file), fs::path(file).stem().string()));
  }
  if (trees.empty() && !a.check) {
    throw InvalidArgument("name a game, use --all or --tree");
  }
  for (const GameTree& t : trees) PrintSolution(t);
  int rc = kExitOk;
  if (a.check) {
    const auto start = std::chrono::steady_clock::now();
    int bad = 0;
    for (const RowCheck& row : CheckReferenceTable()) {
      if (row.matches) {
        fmt::print("table1 {:<4} ok\n", GameName(row.game));
      } else {
        ++bad;
        fmt::print("table1 {:<4} MISMATCH\n  expected {}\n  actual   {}\n",
                   GameName(row.game), row.expected, row.actual);
      }
    }
    const double secs = std::chrono::duration<double>(
                            std::chrono::steady_clock::now() - start)
                            .count();
    fmt::print("table1 check: {} ({:.3f} s)\n", bad ? "FAILED" : "passed", secs);
    if (bad) rc = kExitCheck;
  }
  if (!a.out.empty() || std::getenv(kOutputEnv)) {
    manifest.json["check_table1"] = a.check;
    manifest.Write(a.out.empty() ? DefaultOutputDir() : a.out);
  }
  return rc;
}

// ---- simulate -------------------------------------------------------------

struct SimulateArgs {
  std::string profiles;
  std::uint64_t seed = 1;
  std::string out;
  std::string question_rounds = "2,5,7";
  double mixture_weight = 0.5;
  std::uint64_t practice_seed = kDefaultPracticeSeed;
  int threads = 0;
};

int RunSimulate(const SimulateArgs& a, Manifest& manifest) {
  const std::vector<AgentProfile> profiles = ParseProfiles(ReadFile(a.profiles));
  CohortConfig config;
  config.seed = a.seed;
  config.threads = a.threads;
  config.session.question_rounds = ParseRounds(a.question_rounds);
  config.session.opponent.second_node_exit_weight = a.mixture_weight;
  config.session.practice_seed = a.practice_seed;
  config.session.Validate();

  const fs::path out = a.out.empty() ? DefaultOutputDir() : a.out;
  const std::vector<SimulatedParticipant> cohort =
      SimulateCohort(profiles, config);
  std::vector<std::vector<Event>> logs;
  for (const SimulatedParticipant& p : cohort) {
    WriteFile(out / "logs" / (p.session_id + ".jsonl"),
              SerializeEventLog(p.events));
    logs.push_back(p.events);
  }
  const FirstChoiceSummary summary =
      AggregateFirstChoice(ExtractChoices(logs));
  std::string text = fmt::format("participants: {}\n", cohort.size());
  std::string csv = "game,stops,reached,rate\n";
  for (const Proportion& p : summary.games) {
    const std::string rate = p.rate ? fmt::format("{:.6f}", *p.rate) : "NA";
    text += fmt::format("{:<4} c-rate {} ({}/{})\n", GameName(p.game), rate,
                        p.stops, p.reached);
    csv += fmt::format("{},{},{},{}\n", GameName(p.game), p.stops, p.reached,
                       rate);
  }
  WriteFile(out / "summary.txt", text);
  WriteFile(out / "summary.csv", csv);
  fmt::print("{}", text);

  manifest.json["seed"] = a.seed;
  manifest.json["profiles_file"] = a.profiles;
  Json profs = Json::array();
  for (const AgentProfile& p : profiles) profs.push_back(FormatProfile(p, 1));
  manifest.json["profiles"] = profs;
  manifest.json["session_config"] = config.session.ToJson();
  manifest.Write(out);
  return kExitOk;
}

// ---- analyze --------------------------------------------------------------

struct AnalyzeArgs {
  std::string log_dir;
  std::string out;
  std::uint64_t seed = 1;
  int restarts = 20;
  int max_classes = 4;
};

std::vector<fs::path> LogFiles(const fs::path& dir) {
  if (!fs::is_directory(dir)) throw NotFound("not a directory: " + dir.string());
  std::vector<fs::path> files;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".jsonl") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  if (files.empty()) throw NotFound("no .jsonl logs under " + dir.string());
  return files;
}

int RunAnalyze(const AnalyzeArgs& a, Manifest& manifest) {
  std::vector<std::vector<Event>> logs;
  Json names = Json::array();
  for (const fs::path& f : LogFiles(a.log_dir)) {
    try {
      logs.push_back(ParseEventLog(ReadFile(f)));
    } catch (const ParseError& e) {
      throw ParseError(f.string() + ": " + e.what(), 0);
    }
    names.push_back(fs::relative(f, a.log_dir).generic_string());
  }
  ReportOptions options;
  options.seed = a.seed;
  options.lca_restarts = a.restarts;
  options.max_classes = a.max_classes;
  const ReportBundle bundle = BuildReport(logs, options);
  const fs::path out = a.out.empty() ? fs::path(DefaultOutputDir()) / "report"
                                     : fs::path(a.out);
  WriteReport(bundle, out);
  fmt::print("{}", bundle.at("report.txt"));
  manifest.json["log_dir"] = a.log_dir;
  manifest.json["logs"] = names;
  manifest.json["seed"] = a.seed;
  manifest.json["lca_restarts"] = a.restarts;
  manifest.json["max_classes"] = a.max_classes;
  manifest.Write(out);
  return kExitOk;
}

// ---- serve ----------------------------------------------------------------

struct ServeArgs {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::string log_dir;
  std::uint64_t seed = 1;
  std::string question_rounds = "2,5,7";
  double mixture_weight = 0.5;
};

int RunServe(const ServeArgs& a, Manifest& manifest) {
  StoreOptions options;
  options.log_dir = a.log_dir.empty() ? fs::path(DefaultOutputDir()) / "sessions"
                                      : fs::path(a.log_dir);
  options.seed = a.seed;
  options.defaults.question_rounds = ParseRounds(a.question_rounds);
  options.defaults.opponent.second_node_exit_weight = a.mixture_weight;
  SystemClock clock;
  SessionStore store(options, clock);
  ApiServer server(store);
  const int port = server.Bind(a.host, a.port);

  manifest.json["seed"] = a.seed;
  manifest.json["host"] = a.host;
  manifest.json["port"] = port;
  manifest.json["session_defaults"] = options.defaults.ToJson();
  manifest.Write(*options.log_dir);

  // Block the stop signals here so the listener thread never sees them, then
  // wait for one and shut down. Logs are flushed per command.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);
  std::thread listener([&] { server.Listen(); });
  fmt::print("marbledrop {} serving on http://{}:{} (logs in {}, {} sessions "
             "restored)\n",
             kVersion, a.host, port, options.log_dir->string(), store.size());
  std::fflush(stdout);
  int sig = 0;
  sigwait(&signals, &sig);
  fmt::print("stopping on signal {}\n", sig);
  server.Stop();
  listener.join();
  return kExitOk;
}

// ---- export ---------------------------------------------------------------

constexpr const char* kExampleProfiles =
    "# kind rho tom omega epsilon k count\n"
    "EFR 0 0 0 0.05 0 25\n"
    "RISK_TOM 0.2 2 0 0.05 0 25\n";

int RunExport(const std::string& out_arg, std::uint64_t practice_seed,
              Manifest& manifest) {
  const fs::path out = out_arg.empty() ? DefaultOutputDir() : out_arg;
  for (GameId g : kAllGames) {
    WriteFile(out / "trees" / (std::string(GameName(g)) + ".tree"),
              SerializeTree(CatalogGame(g)));
  }
  for (const GameTree& t : PracticeGames(practice_seed)) {
    WriteFile(out / "practice" / (t.name() + ".tree"), SerializeTree(t));
  }
  std::string table;
  for (GameId g : kAllGames) {
    const GameTree& tree = CatalogGame(g);
    const SolutionSet s = Solve(tree);
    table += fmt::format("{}\tBI {}\tEFR {}\n", GameName(g),
                         RenderPlanSets(tree, s.bi),
                         RenderPlanSets(tree, s.efr));
  }
  WriteFile(out / "table1.txt", table);
  WriteFile(out / "profiles.example.txt", kExampleProfiles);
  manifest.json["practice_seed"] = practice_seed;
  manifest.Write(out);
  fmt::print("wrote fixtures to {}\n", out.string());
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Marble Drop lab: solvers, simulated cohorts, analysis and the "
               "session service"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  SolveArgs solve;
  CLI::App* solve_cmd = app.add_subcommand("solve", "Print BI and EFR plan sets");
  solve_cmd->add_option("games", solve.games, "Catalog games (G1 G2 G3 G4 G1t G3t)");
  solve_cmd->add_flag("--all", solve.all, "Solve all six catalog games");
  solve_cmd->add_option("--tree", solve.tree_files, "Game tree file");
  solve_cmd->add_flag("--check-table1", solve.check,
                      "Compare against the reference table; exit 3 on mismatch");
  solve_cmd->add_option("--out", solve.out, "Directory for manifest.json");

  SimulateArgs sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Run a simulated cohort");
  sim_cmd->add_option("--profiles", sim.profiles,
                      "Profile file: kind rho tom omega epsilon k count")
      ->required();
  sim_cmd->add_option("--seed", sim.seed, "Cohort seed")->capture_default_str();
  sim_cmd->add_option("--out", sim.out,
                      std::string("Output directory (default $") + kOutputEnv +
                          " or marbledrop-out)");
  sim_cmd->add_option("--question-rounds", sim.question_rounds,
                      "Rounds with A/B questions")
      ->capture_default_str();
  sim_cmd->add_option("--mixture-weight", sim.mixture_weight,
                      "Probability that the computer's plan exits at its "
                      "second node when both kinds of plan qualify")
      ->capture_default_str();
  sim_cmd->add_option("--practice-seed", sim.practice_seed)->capture_default_str();
  sim_cmd->add_option("--threads", sim.threads, "Worker threads (0: all)");

  AnalyzeArgs an;
  CLI::App* an_cmd = app.add_subcommand("analyze", "Build the report bundle");
  an_cmd->add_option("logs", an.log_dir, "Directory of .jsonl event logs")
      ->required();
  an_cmd->add_option("--out", an.out, "Report directory (default <out>/report)");
  an_cmd->add_option("--seed", an.seed, "LCA seed")->capture_default_str();
  an_cmd->add_option("--restarts", an.restarts, "LCA random restarts")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  an_cmd->add_option("--max-classes", an.max_classes)
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  ServeArgs serve;
  CLI::App* serve_cmd = app.add_subcommand("serve", "Serve the session HTTP API");
  serve_cmd->add_option("--host", serve.host)->capture_default_str();
  serve_cmd->add_option("--port", serve.port)->capture_default_str();
  serve_cmd->add_option("--log-dir", serve.log_dir,
                        "Session logs (default <out>/sessions)");
  serve_cmd->add_option("--seed", serve.seed)->capture_default_str();
  serve_cmd->add_option("--question-rounds", serve.question_rounds)
      ->capture_default_str();
  serve_cmd->add_option("--mixture-weight", serve.mixture_weight)
      ->capture_default_str();

  std::string export_out;
  std::uint64_t export_practice_seed = kDefaultPracticeSeed;
  CLI::App* export_cmd =
      app.add_subcommand("export", "Write tree fixtures, table and profiles");
  export_cmd->add_option("--out", export_out);
  export_cmd->add_option("--practice-seed", export_practice_seed)
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) {
      Manifest m("solve", argc, argv);
      return RunSolve(solve, m);
    }
    if (*sim_cmd) {
      Manifest m("simulate", argc, argv);
      return RunSimulate(sim, m);
    }
    if (*an_cmd) {
      Manifest m("analyze", argc, argv);
      return RunAnalyze(an, m);
    }
    if (*serve_cmd) {
      Manifest m("serve", argc, argv);
      return RunServe(serve, m);
    }
    if (*export_cmd) {
      Manifest m("export", argc, argv);
      return RunExport(export_out, export_practice_seed, m);
    }
  } catch (const ParseError& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitData;
  } catch (const Error& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitData;
  } catch (const std::exception& e) {
    fmt::print(stderr, "error: {}\n", e.what());
    return kExitData;
  }
  return kExitUsage;
}
