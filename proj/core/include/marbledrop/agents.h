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

#ifndef MARBLEDROP_AGENTS_H_
#define MARBLEDROP_AGENTS_H_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "marbledrop/game_tree.h"
#include "marbledrop/rational.h"

namespace marbledrop {

enum class AgentKind { kBi, kEfr, kRiskTom, kLevelK, kRandom };

std::string_view AgentKindName(AgentKind kind);  // "BI", "EFR", "RISK_TOM"...
std::optional<AgentKind> ParseAgentKind(std::string_view s);

// Decision model of a simulated participant. Which fields matter depends on
// `kind`: BI/EFR/RANDOM read only epsilon; RISK_TOM reads rho, tom_level and
// omega; LEVEL_K reads k, rho and omega.
struct AgentProfile {
  AgentKind kind = AgentKind::kRandom;
  double rho = 0.0;      // 0 neutral, > 0 risk averse, < 0 risk seeking
  int tom_level = 0;     // 0, 1 or 2
  double omega = 0.0;    // social weight on the opponent's marbles, [-1, 1]
  double epsilon = 0.0;  // tremble probability, [0, 1)
  int k = 0;             // level-k depth

  // Throws InvalidArgument on out-of-range parameters.
  void Validate() const;
  friend bool operator==(const AgentProfile&, const AgentProfile&) = default;
};

// Profile file: one profile per line, "kind rho tom omega epsilon k count";
// '#' starts a comment. Returns the expanded list (count copies each).
// Throws ParseError with the offending line.
std::vector<AgentProfile> ParseProfiles(std::string_view text);
std::string FormatProfile(const AgentProfile& profile, int count);

struct LotteryOutcome {
  double marbles = 0.0;
  Rational probability;
};

class Lottery {
 public:
  // Throws InvalidArgument unless probabilities are >= 0 and sum to 1.
  explicit Lottery(std::vector<LotteryOutcome> outcomes);
  std::span<const LotteryOutcome> outcomes() const { return outcomes_; }
  double ExpectedValue() const;

 private:
  std::vector<LotteryOutcome> outcomes_;
};

// u(x) = (1 - exp(-rho x)) / rho, and u(x) = x at rho = 0.
double RiskUtility(double marbles, double rho);
double InverseRiskUtility(double utility, double rho);

// RiskUtility(own) + omega * opponent.
double Utility(double own, double opponent, const AgentProfile& profile);

// u^-1(E[u(X)]): the expected value at rho = 0, decreasing in rho.
double CertaintyEquivalent(const Lottery& lottery, double rho);

struct MoveDistribution {
  Rational exit;
  Rational cont;

  static MoveDistribution Point(Move m);
  static MoveDistribution Uniform();
  bool IsPoint() const { return exit == 0 || cont == 0; }
  friend bool operator==(const MoveDistribution&,
                         const MoveDistribution&) = default;
};

// Zero-order "simple risk-taking" rule: the mover continues iff the best
// payoff still reachable after continuing beats the payoff of exiting now.
bool ZeroOrderContinues(const GameTree& tree, int node);

// Prediction of the opponent's move at `node` by an agent playing `self`:
// level 0 is uniform, level 1 models the opponent with the zero-order rule,
// level 2 models the opponent as a first-order reasoner who applies the
// zero-order rule to `self`. The modeled opponent is given the agent's own
// risk attitude and no social weight. Throws InvalidArgument if `self` owns
// `node` or the level is outside 0..2.
MoveDistribution TomPredict(const GameTree& tree, int node, int level,
                            const AgentProfile& profile, Player self);

// A simulated participant. Stateless between games: a BI or EFR agent picks
// its plan per game from the solver's set, seeded by the participant.
class Agent {
 public:
  Agent(AgentProfile profile, std::uint64_t participant_seed);

  const AgentProfile& profile() const { return profile_; }
  std::uint64_t seed() const { return seed_; }

  // Move at `node`, owned by the agent, after `history` (the moves made at
  // nodes 0..node-1, which in a spine must all be kContinue).
  // `decision_seed` drives RANDOM, level-0 and tremble draws.
  Move Decide(const GameTree& tree, int node, std::span<const Move> history,
              std::uint64_t decision_seed) const;

  // Answer to "what will the opponent do at `node`": nullopt is undecided.
  std::optional<Move> PredictOpponent(const GameTree& tree, int node) const;

  // Plan the agent commits to in `tree` (BI and EFR kinds only).
  Plan FixedPlan(const GameTree& tree, Player self) const;

 private:
  Move Intended(const GameTree& tree, int node, std::uint64_t seed) const;

  AgentProfile profile_;
  std::uint64_t seed_;
};

}  // namespace marbledrop

#endif  // MARBLEDROP_AGENTS_H_
