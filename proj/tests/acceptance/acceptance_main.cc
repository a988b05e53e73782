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


// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <fmt/format.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "api_script.h"
#include "marbledrop/agents.h"
#include "marbledrop/bayes.h"
#include "marbledrop/catalog.h"
#include "marbledrop/choices.h"
#include "marbledrop/cohort.h"
#include "marbledrop/event_log.h"
#include "marbledrop/http_api.h"
#include "marbledrop/lca.h"
#include "marbledrop/logistic.h"
#include "marbledrop/opponent.h"
#include "marbledrop/reference_table.h"
#include "marbledrop/rng.h"
#include "marbledrop/session.h"
#include "marbledrop/session_store.h"
#include "marbledrop/solvers.h"
#include "oracles.h"
#include "synthetic.h"

namespace marbledrop::testing {
namespace {

struct Verdict {
  bool pass = true;
  std::string detail;
};

class Stopwatch {
 public:
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Records the first few failures; the count is always kept.
class Failures {
 public:
  void Add(const std::string& what) {
    if (++count_ <= 3) notes_.push_back(what);
  }
  int count() const { return count_; }
  std::string Summary() const {
    std::string s;
    for (const std::string& n : notes_) s += "; " + n;
    return s;
  }

 private:
  int count_ = 0;
  std::vector<std::string> notes_;
};

bool Subset(const std::vector<int>& a, const std::vector<int>& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Reference table ---------------------------------------------------------

Verdict Table1() {
  Verdict v;
  Stopwatch lib_clock;
  int matched = 0;
  for (const RowCheck& row : CheckReferenceTable()) {
    if (row.matches) {
      ++matched;
    } else {
      v.pass = false;
      v.detail += fmt::format("{} expected [{}] got [{}]; ", GameName(row.game),
                              row.expected, row.actual);
    }
  }
  const double lib_seconds = lib_clock.Seconds();
  v.detail += fmt::format("{}/6 rows exact, library {:.3f}s", matched, lib_seconds);
  if (lib_seconds >= 5.0) v.pass = false;
#ifdef MARBLEDROP_CLI_PATH
  Stopwatch cli_clock;
  const std::string cmd = std::string("\"") + MARBLEDROP_CLI_PATH +
                          "\" solve --all --check-table1 > /dev/null 2>&1";
  const int rc = std::system(cmd.c_str());
  const double cli_seconds = cli_clock.Seconds();
  const bool cli_ok = rc == 0;
  v.detail += fmt::format(", cli exit {} in {:.3f}s", cli_ok ? 0 : rc, cli_seconds);
  if (!cli_ok || cli_seconds >= 5.0) v.pass = false;
#endif
  return v;
}

// Game 1 narrative ---------------------------------------------------------

Verdict Game1Narrative() {
  Verdict v;
  const GameTree& g1 = CatalogGame(GameId::kG1);
  const SolutionSet s = Solve(g1);
  const auto leaf_a = g1.LeafByLabel("a");
  bool bi_ends_at_a = leaf_a.has_value() && !s.bi.computer.empty() &&
                      !s.bi.participant.empty();
  for (const Plan& c : s.bi.computer) {
    for (const Plan& p : s.bi.participant) {
      const Outcome o = Play(g1, c, p);
      if (!leaf_a || o.leaf != *leaf_a || o.payoff != Payoff{4, 1}) {
        bi_ends_at_a = false;
      }
    }
  }
  const std::string efr_p = RenderPlanSet(g1, s.efr.participant);
  const bool efr_unique = s.efr.participant.size() == 1 && efr_p == "d;g";
  const bool same_outcome = s.efr_outcomes == s.bi_outcomes;
  v.pass = bi_ends_at_a && efr_unique && same_outcome;
  v.detail = fmt::format("BI play ends at a (4,1): {}; EFR(P) = {}; EFR outcome {} BI outcome",
                         bi_ends_at_a ? "yes" : "no", efr_p,
                         same_outcome ? "equals" : "differs from");
  return v;
}

// Solver properties --------------------------------------------------------

Verdict SolverProperties() {
  Verdict v;
  Stopwatch clock;
  Failures fail;
  Rng rng(20260101);
  constexpr int kTrees = 1000;
  for (int i = 0; i < kTrees; ++i) {
    const GameTree t = RandomSpineTree(rng, 5, false);
    const SolutionSet s = Solve(t);
    if (!Subset(s.efr_outcomes, s.bi_outcomes)) {
      fail.Add("(i) " + SerializeTree(t));
    }
  }
  for (int i = 0; i < kTrees; ++i) {
    const GameTree t = RandomSpineTree(rng, 5, true);
    const SolutionSet s = Solve(t);
    if (s.bi_outcomes.size() != 1 || s.efr_outcomes != s.bi_outcomes ||
        s.bi_outcomes != BruteSpeOutcomes(t)) {
      fail.Add("(ii) " + SerializeTree(t));
    }
  }
  for (int i = 0; i < kTrees; ++i) {
    const GameTree t = RandomSpineTree(rng, 5, false);
    const Player who = rng.Bernoulli(0.5) ? Player::kComputer : Player::kParticipant;
    const Belief b = RandomBelief(rng, t, Other(who));
    if (BestResponse(t, who, b) != BruteBestResponse(t, who, b)) {
      fail.Add("(iii) " + SerializeTree(t));
    }
  }
  const double seconds = clock.Seconds();
  v.pass = fail.count() == 0 && seconds < 60.0;
  v.detail = fmt::format("{} trees x3 checks, {} failures, {:.2f}s{}", kTrees,
                         fail.count(), seconds, fail.Summary());
  return v;
}

// Opponent contract --------------------------------------------------------

Verdict OpponentContract() {
  Verdict v;
  Failures fail;
  constexpr int kDraws = 10000;
  constexpr int kSchedules = 250;  // 40 draws per schedule
  int g2_checked = 0;
  for (int s = 0; s < kSchedules; ++s) {
    const RoundSchedule schedule = ScheduleRounds(1000 + s);
    for (GameId g : {GameId::kG1, GameId::kG2, GameId::kG3, GameId::kG4}) {
      int exits = 0;
      for (int r = 1; r <= kRoundsPerSession; ++r) exits += schedule.IsExitRound(g, r);
      if (exits != 2) fail.Add(fmt::format("schedule {} has {} exit rounds in {}", s, exits, GameName(g)));
    }
    for (int k = 0; k < kDraws / kSchedules; ++k) {
      const GameId g = kAllGames[k % kAllGames.size()];
      const int round = 1 + (k / static_cast<int>(kAllGames.size())) % kRoundsPerSession;
      const OpponentDraw d = DrawOpponent(g, round, schedule,
                                         static_cast<std::uint64_t>(s) * 1000 + k);
      if (!VerifyDraw(d)) fail.Add(fmt::format("draw {}/{} not a best response", s, k));
      if (g == GameId::kG2) {
        const GameTree& t = CatalogGame(g);
        ++g2_checked;
        if (t.ActionLabel(2, ChoiceAt(t, d.plan, 2)) != "e") {
          fail.Add(fmt::format("G2 draw {}/{} plays {}", s, k, RenderPlan(t, d.plan)));
        }
      }
    }
  }
  v.pass = fail.count() == 0;
  v.detail = fmt::format("{} draws over {} schedules ({} in G2), {} failures{}",
                         kDraws, kSchedules, g2_checked, fail.count(), fail.Summary());
  return v;
}

// Cohort directionality ----------------------------------------------------

Verdict CohortDirectionality() {
  Verdict v;
  std::vector<AgentProfile> profiles(25, AgentProfile{.kind = AgentKind::kEfr});
  AgentProfile tom;
  tom.kind = AgentKind::kRiskTom;
  tom.tom_level = 2;
  profiles.insert(profiles.end(), 25, tom);
  constexpr int kSeeds = 20;
  int agree = 0;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    CohortConfig config;
    config.seed = static_cast<std::uint64_t>(seed);
    std::vector<std::vector<Event>> logs;
    for (auto& sp : SimulateCohort(profiles, config)) logs.push_back(std::move(sp.events));
    const FirstChoiceSummary s = AggregateFirstChoice(ExtractChoices(logs));
    const auto rate = [&](GameId g) { return s.For(g).rate.value_or(-1.0); };
    // A c-rate is the share of first participant decisions that stop.
    if (rate(GameId::kG2) > rate(GameId::kG1) && rate(GameId::kG4) > rate(GameId::kG3)) {
      ++agree;
    }
  }
  v.pass = agree >= 18;
  v.detail = fmt::format("{}/{} seeds with c(G2) > c(G1) and c(G4) > c(G3), need 18",
                         agree, kSeeds);
  return v;
}

// LCA recovery -------------------------------------------------------------

// Largest share error after matching fitted classes to the generating
// classes by their stop probabilities.
double ShareError(const LcaModel& m, const LcaData& data) {
  std::array<int, 3> perm = {0, 1, 2};
  double best_dist = 1e300;
  double best_err = 1e300;
  do {
    double dist = 0.0;
    double err = 0.0;
    for (int k = 0; k < 3; ++k) {
      const LcaClassSpec& spec = kLcaClasses[k];
      for (int g = 0; g < data.num_groups(); ++g) {
        const bool second = data.groups[g].ends_with("second");
        const double target = second ? spec.second_stop : spec.first_stop;
        dist += std::abs(m.probs[perm[k]][g] - target);
      }
      err = std::max(err, std::abs(m.shares[perm[k]] - kLcaShares[k]));
    }
    if (dist < best_dist) {
      best_dist = dist;
      best_err = err;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best_err;
}

bool Monotone(const std::vector<double>& trace) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i] < trace[i - 1] - 1e-9 * std::max(1.0, std::abs(trace[i - 1]))) {
      return false;
    }
  }
  return !trace.empty();
}

Verdict LcaRecovery() {
  Verdict v;
  Stopwatch clock;
  constexpr int kSeeds = 20;
  int recovered = 0;
  int bic_three = 0;
  int both = 0;
  int fits = 0;
  int monotone = 0;
  double worst = 0.0;
  for (int seed = 1; seed <= kSeeds; ++seed) {
    const LcaSample sample = MakeLcaSample(static_cast<std::uint64_t>(seed));
    const BicCurve curve = BicSelect(sample.data, 4, static_cast<std::uint64_t>(seed));
    for (const LcaModel& m : curve.models) {
      ++fits;
      monotone += Monotone(EmLoglikTrace(m));
    }
    if (curve.models.size() < 4) continue;
    const double err = ShareError(curve.models[2], sample.data);
    worst = std::max(worst, err);
    const bool ok_shares = err <= 0.10;
    const bool ok_bic = curve.models[2].bic < curve.models[1].bic &&
                        curve.models[2].bic < curve.models[3].bic;
    recovered += ok_shares;
    bic_three += ok_bic;
    both += ok_shares && ok_bic;
  }
  const double seconds = clock.Seconds();
  v.pass = both * 5 >= kSeeds * 4 && monotone == fits && seconds < 120.0;
  v.detail = fmt::format(
      "shares within 0.10 in {}/{} (worst {:.3f}), BIC prefers 3 over 2 and 4 in {}/{}, "
      "both in {}/{} (need 16), monotone traces {}/{}, {:.1f}s",
      recovered, kSeeds, worst, bic_three, kSeeds, both, kSeeds, monotone, fits,
      seconds);
  return v;
}

// Regression numerics ------------------------------------------------------

Verdict RegressionNumerics() {
  Verdict v;
  // The pinned dataset is the one the unit tests use. A single N=400 fit
  // misses +-0.3 about 3% of the time, so the sampling distribution over
  // further seeds is reported alongside and its mean must sit near 1.
  const LogitSample s = MakeLogitSample(1, 400, 0.0, 1.0);
  const RegressionFit fit = LogisticFit(s.outcomes, s.covariates, {"x"}, {});
  const bool estimate_ok =
      fit.converged() && std::abs(fit.coefficients(0) - 1.0) <= 0.3;
  constexpr int kReplicates = 200;
  double mean = 0.0;
  int within = 0;
  for (int k = 0; k < kReplicates; ++k) {
    const LogitSample r = MakeLogitSample(1000 + k, 400, 0.0, 1.0);
    const RegressionFit f = LogisticFit(r.outcomes, r.covariates, {"x"}, {});
    if (!f.converged()) continue;
    mean += f.coefficients(0) / kReplicates;
    within += std::abs(f.coefficients(0) - 1.0) <= 0.3;
  }
  const bool unbiased = std::abs(mean - 1.0) <= 0.05;

  Rng rng(77);
  double worst_rel = 0.0;
  for (int k = 0; k < 5; ++k) {
    Eigen::VectorXd beta(2);
    beta << rng.Normal(), rng.Normal();
    const Eigen::VectorXd g = LogisticGradient(s.design, s.y, beta);
    Eigen::VectorXd fd(2);
    for (int j = 0; j < 2; ++j) {
      const double h = 1e-5;
      Eigen::VectorXd up = beta, down = beta;
      up(j) += h;
      down(j) -= h;
      fd(j) = (LogisticLogLikelihood(s.design, s.y, up) -
               LogisticLogLikelihood(s.design, s.y, down)) / (2 * h);
    }
    worst_rel = std::max(worst_rel, (fd - g).norm() / std::max(g.norm(), 1.0));
  }
  const bool gradient_ok = worst_rel < 1e-5;

  const double bf = BayesFactorBinomial(5, 10);
  const double bf_err = std::abs(bf - 1024.0 / 2772.0);
  const bool bf_ok = bf_err <= 1e-9;

  v.pass = estimate_ok && unbiased && gradient_ok && bf_ok;
  v.detail = fmt::format(
      "effect {} (N=400, true 1.0; {} replicates: mean {:.3f}, {} within 0.3), gradient rel. error {:.2e} at 5 points, "
      "BF(5,10) = {:.12f} (error {:.1e})",
      fit.converged() ? fmt::format("{:.3f}", fit.coefficients(0))
                      : std::string(FitStatusName(fit.status)),
      kReplicates, mean, within, worst_rel, bf, bf_err);
  return v;
}

// Protocol through the API -------------------------------------------------

std::string CheckProtocolLog(const std::vector<Event>& events, const Json& live,
                             const std::vector<std::pair<std::string, int>>& phases) {
  // Games as started, with their computer-first exits.
  struct Game {
    bool practice;
    int round;
    std::string name;
    bool computer_exit = false;
    int choices = 0;
    int participant_payoff = 0;
  };
  std::vector<Game> games;
  std::optional<Json> payment;
  for (const Event& e : events) {
    const Json& p = e.payload;
    if (e.kind == EventKind::kGameStarted) {
      games.push_back({p["practice"], p["round"], p["game"]});
    } else if (e.kind == EventKind::kComputerMove && p["node"] == 0 &&
               !games.back().practice) {
      const GameTree& t = CatalogGame(ParseGameId(games.back().name).value());
      games.back().computer_exit = t.FindAction(p["action"].get<std::string>())->second ==
                                   Move::kExit;
    } else if (e.kind == EventKind::kGameEnded) {
      games.back().choices = p["participant_choices"];
      games.back().participant_payoff = p["payoff"]["participant"];
    } else if (e.kind == EventKind::kPaymentDrawn) {
      payment = p;
    }
  }
  int practice = 0;
  std::vector<Game> experiment;
  for (const Game& g : games) {
    if (g.practice) {
      if (!experiment.empty()) return "practice game after the experiment began";
      ++practice;
    } else {
      experiment.push_back(g);
    }
  }
  if (practice != kNumPracticeGames || experiment.size() != 48) {
    return fmt::format("{} practice + {} experiment games", practice, experiment.size());
  }
  std::set<std::vector<std::string>> orders;
  for (int r = 0; r < 8; ++r) {
    std::vector<std::string> order;
    for (int k = 0; k < 6; ++k) {
      const Game& g = experiment[r * 6 + k];
      if (g.round != r + 1) return fmt::format("round {} out of place", g.round);
      order.push_back(g.name);
    }
    std::vector<std::string> sorted = order;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::string> all;
    for (GameId id : kAllGames) all.emplace_back(GameName(id));
    std::sort(all.begin(), all.end());
    if (sorted != all) return fmt::format("round {} is not one of each game", r + 1);
    orders.insert(order);
  }
  if (orders.size() < 2) return "rounds are not randomized";
  for (GameId id : {GameId::kG1, GameId::kG2, GameId::kG3, GameId::kG4}) {
    int exits = 0;
    for (const Game& g : experiment) exits += g.name == GameName(id) && g.computer_exit;
    if (exits != 2) return fmt::format("{} computer exits in {}", exits, GameName(id));
  }
  // The break comes exactly after the 24th experiment game.
  bool saw_break = false;
  for (const auto& [phase, ended] : phases) {
    if (phase == "break") {
      saw_break = true;
      if (ended != kNumPracticeGames + 24) {
        return fmt::format("break seen after {} games", ended);
      }
    }
  }
  if (!saw_break) return "no break";
  // Payment: drawn among experiment games the computer did not end at once.
  if (!payment) return "no payment";
  int eligible = 0;
  for (const Game& g : experiment) eligible += !g.computer_exit;
  if ((*payment)["eligible"] != eligible) return "eligible count differs";
  const int gi = (*payment)["game_index"];
  const Game& paid = games.at(gi);
  if (paid.practice || paid.computer_exit || paid.choices == 0) {
    return "payment drawn from an excluded game";
  }
  const int marbles = (*payment)["marbles"];
  if (marbles != paid.participant_payoff) return "marbles differ from the payoff";
  if ((*payment)["cents"] != marbles * 375) return "cents != marbles x 375";
  if ((*payment)["euros"] != fmt::format("{}.{:02d}", marbles * 375 / 100, marbles * 375 % 100)) {
    return "euro amount";
  }
  if (Session::Replay(events).PublicState() != live) return "replay differs from live state";
  return "";
}

Verdict Protocol() {
  Verdict v;
  LogicalClock clock;
  SessionStore store(StoreOptions{}, clock);
  std::vector<std::pair<std::string, int>> phases;
  const Transport transport = [&](std::string_view m, const std::string& path,
                                  const std::string& body) {
    ApiResponse r = HandleApiRequest(store, m, path, body);
    if (r.status / 100 == 2 && r.content_type == "application/json") {
      Json j = Json::parse(r.body);
      if (j.contains("state")) j = j["state"];
      if (j.contains("phase")) {
        phases.emplace_back(j["phase"], j["progress"]["games_ended"]);
      }
    }
    return r;
  };
  constexpr int kSessions = 6;
  int ok = 0;
  std::string first_problem;
  for (int i = 0; i < kSessions; ++i) {
    phases.clear();
    std::string problem;
    try {
      const ScriptResult r = RunScriptedSession(transport, 500 + i, i % 2 ? "B" : "A");
      const ApiResponse log = HandleApiRequest(store, "GET", "/sessions/" + r.session + "/log", "");
      problem = CheckProtocolLog(ParseEventLog(log.body), r.final_state, phases);
    } catch (const std::exception& e) {
      problem = e.what();
    }
    if (problem.empty()) {
      ++ok;
    } else if (first_problem.empty()) {
      first_problem = fmt::format("session {}: {}", i + 1, problem);
    }
  }
  v.pass = ok == kSessions;
  v.detail = fmt::format("{}/{} scripted API sessions valid{}", ok, kSessions,
                         first_problem.empty() ? "" : "; " + first_problem);
  return v;
}

}  // namespace
}  // namespace marbledrop::testing

int main() {
  using namespace marbledrop::testing;
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"table1-exactness", Table1},
      {"game1-narrative", Game1Narrative},
      {"solver-properties", SolverProperties},
      {"opponent-contract", OpponentContract},
      {"cohort-directionality", CohortDirectionality},
      {"lca-recovery", LcaRecovery},
      {"regression-numerics", RegressionNumerics},
      {"protocol-event-sourcing", Protocol},
  };
  int failed = 0;
  for (const auto& [name, run] : criteria) {
    Verdict v;
    try {
      v = run();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name, v.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
