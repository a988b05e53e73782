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

#ifndef MARBLEDROP_OPPONENT_H_
#define MARBLEDROP_OPPONENT_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "marbledrop/belief.h"
#include "marbledrop/catalog.h"
#include "marbledrop/game_tree.h"

namespace marbledrop {

inline constexpr int kRoundsPerSession = 8;

// Rounds (1-based) in which the computer takes its outside option in each
// computer-first game. Truncated games never appear here.
struct RoundSchedule {
  std::uint64_t seed = 0;
  std::map<GameId, std::array<int, 2>> exit_rounds;

  bool IsExitRound(GameId game, int round) const;
  friend bool operator==(const RoundSchedule&, const RoundSchedule&) = default;
};

// Two rounds per game, uniform over 2-subsets of 1..8, independent across
// games, deterministic in `seed`.
RoundSchedule ScheduleRounds(std::uint64_t seed);

struct OpponentConfig {
  // When both kinds of admissible plan exist, the probability of drawing one
  // that exits at the computer's second node (e) rather than continuing (f).
  double second_node_exit_weight = 0.5;

  friend bool operator==(const OpponentConfig&, const OpponentConfig&) = default;
};

// Required computer moves, by position among the computer's nodes.
struct DrawConstraints {
  std::optional<Move> first_move;
  std::optional<Move> second_move;
};

struct OpponentDraw {
  std::string game;  // tree name
  int round = 0;     // 0 for practice games
  DrawConstraints constraints;
  Belief belief;     // about the participant's plans
  Plan plan;         // computer plan; a best response to `belief`
};

// Constraints for a catalog game in `round`: first move a in scheduled exit
// rounds and b otherwise (G1..G4); e at the second node in G2.
DrawConstraints ConstraintsFor(GameId game, int round,
                               const RoundSchedule& schedule);

// Samples a point belief on a participant plan such that the first best
// response (in plan order) meeting `constraints` exists, and emits that plan.
// Throws Error if no point belief admits a constrained best response.
OpponentDraw DrawOpponent(const GameTree& tree, int round,
                          const DrawConstraints& constraints,
                          std::uint64_t seed,
                          const OpponentConfig& config = {});

// Catalog-game convenience. Throws InvalidArgument for rounds outside 1..8.
OpponentDraw DrawOpponent(GameId game, int round,
                          const RoundSchedule& schedule, std::uint64_t seed,
                          const OpponentConfig& config = {});

// True iff the plan is a best response to the recorded belief and satisfies
// the recorded constraints.
bool VerifyDraw(const GameTree& tree, const OpponentDraw& draw);
bool VerifyDraw(const OpponentDraw& draw);  // catalog games only

}  // namespace marbledrop

#endif  // MARBLEDROP_OPPONENT_H_
