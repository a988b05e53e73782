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

#include "marbledrop/agents.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>

#include "marbledrop/errors.h"
#include "marbledrop/rng.h"
#include "marbledrop/solvers.h"

namespace marbledrop {
namespace {

constexpr double kTieTolerance = 1e-9;

using Policy = std::function<MoveDistribution(int node)>;

// Probability of every leaf when play starts at `start` and each node's move
// is drawn from `policy`.
std::vector<Rational> LeafDistribution(const GameTree& tree, int start,
                                       const Policy& policy) {
  std::vector<Rational> probs(tree.num_leaves());
  Rational reach = 1;
  for (int i = start; i < tree.num_nodes() && reach != 0; ++i) {
    const MoveDistribution d = policy(i);
    probs[i] = reach * d.exit;
    reach *= d.cont;
  }
  probs[tree.num_nodes()] += reach;
  return probs;
}

// Does `mover` prefer continuing at `node`, given the distribution over the
// leaves that continuing leads to? Compares the certainty equivalent of the
// own-marble lottery, plus the social term, against exiting. Ties exit.
bool ContinueIsBetter(const GameTree& tree, int node, Player mover,
                      const AgentProfile& profile,
                      const std::vector<Rational>& leaf_probs) {
  std::vector<LotteryOutcome> own;
  double expected_other = 0.0;
  for (int leaf = 0; leaf < tree.num_leaves(); ++leaf) {
    if (leaf_probs[leaf] == 0) continue;
    const Payoff pay = tree.leaf_payoff(leaf);
    own.push_back({static_cast<double>(pay.For(mover)), leaf_probs[leaf]});
    expected_other += ToDouble(leaf_probs[leaf]) * pay.For(Other(mover));
  }
  const double ce = CertaintyEquivalent(Lottery(std::move(own)), profile.rho);
  const double cont_value =
      RiskUtility(ce, profile.rho) + profile.omega * expected_other;
  const Payoff exit = tree.leaf_payoff(node);
  const double exit_value =
      Utility(exit.For(mover), exit.For(Other(mover)), profile);
  return cont_value > exit_value + kTieTolerance;
}

AgentProfile ModeledProfile(double rho) {
  AgentProfile p;
  p.rho = rho;
  return p;
}

// Opponent of the agent modeled as a first-order reasoner: it predicts the
// agent with the zero-order rule and plans its own later nodes the same way.
bool FirstOrderContinues(const GameTree& tree, int node,
                         const AgentProfile& modeled) {
  const Player mover = tree.mover(node);
  Policy policy = [&](int i) {
    if (tree.mover(i) == mover) {
      return MoveDistribution::Point(FirstOrderContinues(tree, i, modeled)
                                         ? Move::kContinue
                                         : Move::kExit);
    }
    return MoveDistribution::Point(ZeroOrderContinues(tree, i) ? Move::kContinue
                                                               : Move::kExit);
  };
  return ContinueIsBetter(tree, node, mover, modeled,
                          LeafDistribution(tree, node + 1, policy));
}

bool RiskTomContinues(const GameTree& tree, int node,
                      const AgentProfile& profile) {
  const Player self = tree.mover(node);
  Policy policy = [&](int i) {
    if (tree.mover(i) == self) {
      return MoveDistribution::Point(RiskTomContinues(tree, i, profile)
                                         ? Move::kContinue
                                         : Move::kExit);
    }
    return TomPredict(tree, i, profile.tom_level, profile, self);
  };
  return ContinueIsBetter(tree, node, self, profile,
                          LeafDistribution(tree, node + 1, policy));
}

// Level-k (k >= 1): best response to a level-(k-1) opponent, whose own model
// of this player is level-(k-2), and so on down to uniform level 0. Modeled
// players are risk neutral and selfish.
bool LevelKContinues(const GameTree& tree, int node, int k,
                     const AgentProfile& profile) {
  const Player self = tree.mover(node);
  Policy policy = [&](int i) {
    if (tree.mover(i) == self) {
      return MoveDistribution::Point(LevelKContinues(tree, i, k, profile)
                                         ? Move::kContinue
                                         : Move::kExit);
    }
    if (k - 1 == 0) return MoveDistribution::Uniform();
    return MoveDistribution::Point(
        LevelKContinues(tree, i, k - 1, ModeledProfile(0.0)) ? Move::kContinue
                                                             : Move::kExit);
  };
  return ContinueIsBetter(tree, node, self, profile,
                          LeafDistribution(tree, node + 1, policy));
}

// Solutions are reused across participants and rounds.
const SolutionSet& CachedSolution(const GameTree& tree) {
  static std::mutex mu;
  static std::map<std::string, std::unique_ptr<SolutionSet>> cache;
  const std::string key = SerializeTree(tree);
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(key);
  if (it == cache.end()) {
    it = cache.emplace(key, std::make_unique<SolutionSet>(Solve(tree))).first;
  }
  return *it->second;
}

}  // namespace

std::string_view AgentKindName(AgentKind kind) {
  switch (kind) {
    case AgentKind::kBi: return "BI";
    case AgentKind::kEfr: return "EFR";
    case AgentKind::kRiskTom: return "RISK_TOM";
    case AgentKind::kLevelK: return "LEVEL_K";
    case AgentKind::kRandom: return "RANDOM";
  }
  return "?";
}

std::optional<AgentKind> ParseAgentKind(std::string_view s) {
  for (AgentKind k : {AgentKind::kBi, AgentKind::kEfr, AgentKind::kRiskTom,
                      AgentKind::kLevelK, AgentKind::kRandom}) {
    if (AgentKindName(k) == s) return k;
  }
  return std::nullopt;
}

void AgentProfile::Validate() const {
  if (!std::isfinite(rho)) throw InvalidArgument("rho must be finite");
  if (tom_level < 0 || tom_level > 2) {
    throw InvalidArgument("tom level must be 0, 1 or 2");
  }
  if (!(omega >= -1.0 && omega <= 1.0)) {
    throw InvalidArgument("omega must be in [-1, 1]");
  }
  if (!(epsilon >= 0.0 && epsilon < 1.0)) {
    throw InvalidArgument("epsilon must be in [0, 1)");
  }
  if (k < 0) throw InvalidArgument("k must be >= 0");
}

std::vector<AgentProfile> ParseProfiles(std::string_view text) {
  std::vector<AgentProfile> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string kind;
    if (!(fields >> kind)) continue;
    AgentProfile p;
    int count = 0;
    const std::optional<AgentKind> parsed = ParseAgentKind(kind);
    if (!parsed) throw ParseError("unknown agent kind '" + kind + "'", line_no);
    p.kind = *parsed;
    if (!(fields >> p.rho >> p.tom_level >> p.omega >> p.epsilon >> p.k >>
          count)) {
      throw ParseError("expected 'kind rho tom omega epsilon k count'",
                       line_no);
    }
    std::string extra;
    if (fields >> extra) throw ParseError("trailing field '" + extra + "'", line_no);
    if (count < 1) throw ParseError("count must be >= 1", line_no);
    try {
      p.Validate();
    } catch (const InvalidArgument& e) {
      throw ParseError(e.what(), line_no);
    }
    out.insert(out.end(), count, p);
  }
  if (out.empty()) throw ParseError("no profiles", 0);
  return out;
}

std::string FormatProfile(const AgentProfile& p, int count) {
  std::ostringstream out;
  out << AgentKindName(p.kind) << ' ' << p.rho << ' ' << p.tom_level << ' '
      << p.omega << ' ' << p.epsilon << ' ' << p.k << ' ' << count;
  return out.str();
}

Lottery::Lottery(std::vector<LotteryOutcome> outcomes)
    : outcomes_(std::move(outcomes)) {
  if (outcomes_.empty()) throw InvalidArgument("empty lottery");
  Rational total = 0;
  for (const LotteryOutcome& o : outcomes_) {
    if (o.probability < 0) throw InvalidArgument("negative probability");
    total += o.probability;
  }
  if (total != 1) throw InvalidArgument("lottery probabilities must sum to 1");
}

double Lottery::ExpectedValue() const {
  double ev = 0.0;
  for (const LotteryOutcome& o : outcomes_) {
    ev += ToDouble(o.probability) * o.marbles;
  }
  return ev;
}

double RiskUtility(double marbles, double rho) {
  if (rho == 0.0) return marbles;
  return -std::expm1(-rho * marbles) / rho;
}

double InverseRiskUtility(double utility, double rho) {
  if (rho == 0.0) return utility;
  return -std::log1p(-rho * utility) / rho;
}

double Utility(double own, double opponent, const AgentProfile& profile) {
  return RiskUtility(own, profile.rho) + profile.omega * opponent;
}

double CertaintyEquivalent(const Lottery& lottery, double rho) {
  if (rho == 0.0) return lottery.ExpectedValue();
  double eu = 0.0;
  for (const LotteryOutcome& o : lottery.outcomes()) {
    eu += ToDouble(o.probability) * RiskUtility(o.marbles, rho);
  }
  return InverseRiskUtility(eu, rho);
}

MoveDistribution MoveDistribution::Point(Move m) {
  return m == Move::kExit ? MoveDistribution{1, 0} : MoveDistribution{0, 1};
}

MoveDistribution MoveDistribution::Uniform() {
  return MoveDistribution{Rational(1, 2), Rational(1, 2)};
}

bool ZeroOrderContinues(const GameTree& tree, int node) {
  const Player mover = tree.mover(node);
  int best_future = 0;
  for (int leaf = node + 1; leaf < tree.num_leaves(); ++leaf) {
    best_future = std::max(best_future, tree.leaf_payoff(leaf).For(mover));
  }
  return best_future > tree.leaf_payoff(node).For(mover);
}

MoveDistribution TomPredict(const GameTree& tree, int node, int level,
                            const AgentProfile& profile, Player self) {
  if (tree.mover(node) == self) {
    throw InvalidArgument("tom_predict needs an opponent node");
  }
  auto point = [](bool cont) {
    return MoveDistribution::Point(cont ? Move::kContinue : Move::kExit);
  };
  switch (level) {
    case 0:
      return MoveDistribution::Uniform();
    case 1:
      return point(ZeroOrderContinues(tree, node));
    case 2:
      return point(
          FirstOrderContinues(tree, node, ModeledProfile(profile.rho)));
    default:
      throw InvalidArgument("tom level must be 0, 1 or 2");
  }
}

Agent::Agent(AgentProfile profile, std::uint64_t participant_seed)
    : profile_(profile), seed_(participant_seed) {
  profile_.Validate();
}

Plan Agent::FixedPlan(const GameTree& tree, Player self) const {
  if (profile_.kind != AgentKind::kBi && profile_.kind != AgentKind::kEfr) {
    throw InvalidArgument("only BI and EFR agents commit to a plan");
  }
  const SolutionSet& s = CachedSolution(tree);
  const PlanSets& sets = profile_.kind == AgentKind::kEfr ? s.efr : s.bi;
  const std::vector<Plan>& plans = sets.For(self);
  Rng rng(DeriveSeed(seed_, SerializeTree(tree)));
  return plans[rng.UniformInt(plans.size())];
}

Move Agent::Intended(const GameTree& tree, int node,
                     std::uint64_t seed) const {
  switch (profile_.kind) {
    case AgentKind::kBi:
    case AgentKind::kEfr:
      return ChoiceAt(tree, FixedPlan(tree, tree.mover(node)), node);
    case AgentKind::kRiskTom:
      return RiskTomContinues(tree, node, profile_) ? Move::kContinue
                                                    : Move::kExit;
    case AgentKind::kLevelK:
      if (profile_.k > 0) {
        return LevelKContinues(tree, node, profile_.k, profile_)
                   ? Move::kContinue
                   : Move::kExit;
      }
      [[fallthrough]];
    case AgentKind::kRandom: {
      Rng rng(DeriveSeed(seed, "uniform"));
      return rng.Bernoulli(0.5) ? Move::kContinue : Move::kExit;
    }
  }
  return Move::kExit;
}

Move Agent::Decide(const GameTree& tree, int node,
                   std::span<const Move> history,
                   std::uint64_t decision_seed) const {
  if (node < 0 || node >= tree.num_nodes()) {
    throw InvalidArgument("node out of range");
  }
  if (static_cast<int>(history.size()) != node ||
      std::any_of(history.begin(), history.end(),
                  [](Move m) { return m != Move::kContinue; })) {
    throw InvalidArgument("history is inconsistent with reaching the node");
  }
  Move m = Intended(tree, node, decision_seed);
  if (profile_.epsilon > 0.0) {
    Rng rng(DeriveSeed(decision_seed, "tremble"));
    if (rng.Bernoulli(profile_.epsilon)) {
      m = m == Move::kExit ? Move::kContinue : Move::kExit;
    }
  }
  return m;
}

std::optional<Move> Agent::PredictOpponent(const GameTree& tree,
                                           int node) const {
  const Player self = Other(tree.mover(node));
  MoveDistribution d = MoveDistribution::Uniform();
  switch (profile_.kind) {
    case AgentKind::kBi:
    case AgentKind::kEfr: {
      const SolutionSet& s = CachedSolution(tree);
      const PlanSets& sets = profile_.kind == AgentKind::kEfr ? s.efr : s.bi;
      bool exit = false, cont = false;
      for (const Plan& p : sets.For(tree.mover(node))) {
        if (!PlanReaches(tree, p, node)) continue;
        (ChoiceAt(tree, p, node) == Move::kExit ? exit : cont) = true;
      }
      if (exit != cont) d = MoveDistribution::Point(exit ? Move::kExit
                                                         : Move::kContinue);
      break;
    }
    case AgentKind::kRiskTom:
      d = TomPredict(tree, node, profile_.tom_level, profile_, self);
      break;
    case AgentKind::kLevelK:
      if (profile_.k >= 2) {
        d = MoveDistribution::Point(
            LevelKContinues(tree, node, profile_.k - 1, ModeledProfile(0.0))
                ? Move::kContinue
                : Move::kExit);
      }
      break;
    case AgentKind::kRandom:
      break;
  }
  if (!d.IsPoint()) return std::nullopt;
  return d.exit == 1 ? Move::kExit : Move::kContinue;
}

}  // namespace marbledrop
