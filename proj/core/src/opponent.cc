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

#include "marbledrop/opponent.h"

#include <algorithm>
#include <vector>

#include "marbledrop/errors.h"
#include "marbledrop/rng.h"
#include "marbledrop/solvers.h"

namespace marbledrop {
namespace {

bool Satisfies(const GameTree& tree, const Plan& plan,
               const DrawConstraints& c) {
  const std::vector<int> nodes = tree.NodesOf(Player::kComputer);
  if (c.first_move &&
      (nodes.empty() || ChoiceAt(tree, plan, nodes[0]) != *c.first_move)) {
    return false;
  }
  if (c.second_move &&
      (nodes.size() < 2 || ChoiceAt(tree, plan, nodes[1]) != *c.second_move)) {
    return false;
  }
  return true;
}

struct Candidate {
  Belief belief;
  Plan plan;
};

}  // namespace

bool RoundSchedule::IsExitRound(GameId game, int round) const {
  auto it = exit_rounds.find(game);
  if (it == exit_rounds.end()) return false;
  return it->second[0] == round || it->second[1] == round;
}

RoundSchedule ScheduleRounds(std::uint64_t seed) {
  RoundSchedule s;
  s.seed = seed;
  for (GameId game : kComputerFirstGames) {
    Rng rng(DeriveSeed(seed, "exit-rounds", static_cast<int>(game)));
    std::array<int, kRoundsPerSession> rounds{};
    for (int i = 0; i < kRoundsPerSession; ++i) rounds[i] = i + 1;
    rng.Shuffle(std::span<int>(rounds));
    std::array<int, 2> pick = {rounds[0], rounds[1]};
    std::sort(pick.begin(), pick.end());
    s.exit_rounds[game] = pick;
  }
  return s;
}

DrawConstraints ConstraintsFor(GameId game, int round,
                               const RoundSchedule& schedule) {
  DrawConstraints c;
  if (!IsTruncated(game)) {
    c.first_move =
        schedule.IsExitRound(game, round) ? Move::kExit : Move::kContinue;
  }
  if (game == GameId::kG2) c.second_move = Move::kExit;
  return c;
}

OpponentDraw DrawOpponent(const GameTree& tree, int round,
                          const DrawConstraints& constraints,
                          std::uint64_t seed, const OpponentConfig& config) {
  // Enumerating every point belief gives the same distribution as rejection
  // sampling from the uniform point-belief family.
  std::vector<Candidate> exits_second;
  std::vector<Candidate> continues_second;
  const std::vector<int> computer_nodes = tree.NodesOf(Player::kComputer);
  for (const Plan& p : AllPlans(tree, Player::kParticipant)) {
    Belief belief = Belief::Point(p);
    for (const Plan& br : BestResponse(tree, Player::kComputer, belief)) {
      if (!Satisfies(tree, br, constraints)) continue;
      const bool exits = computer_nodes.size() >= 2 &&
                         ChoiceAt(tree, br, computer_nodes[1]) == Move::kExit;
      (exits ? exits_second : continues_second)
          .push_back(Candidate{std::move(belief), br});
      break;
    }
  }
  if (exits_second.empty() && continues_second.empty()) {
    throw Error("no point belief admits a best response meeting the " +
                std::string("constraints for ") + tree.name());
  }
  Rng rng(seed);
  const std::vector<Candidate>* pool = &exits_second;
  if (exits_second.empty()) {
    pool = &continues_second;
  } else if (!continues_second.empty()) {
    pool = rng.Bernoulli(config.second_node_exit_weight) ? &exits_second
                                                         : &continues_second;
  }
  const Candidate& chosen = (*pool)[rng.UniformInt(pool->size())];
  return OpponentDraw{tree.name(), round, constraints, chosen.belief,
                      chosen.plan};
}

OpponentDraw DrawOpponent(GameId game, int round,
                          const RoundSchedule& schedule, std::uint64_t seed,
                          const OpponentConfig& config) {
  if (round < 1 || round > kRoundsPerSession) {
    throw InvalidArgument("round must be in 1..8");
  }
  return DrawOpponent(CatalogGame(game), round,
                      ConstraintsFor(game, round, schedule), seed, config);
}

bool VerifyDraw(const GameTree& tree, const OpponentDraw& draw) {
  if (draw.plan.owner != Player::kComputer ||
      draw.belief.about() != Player::kParticipant ||
      static_cast<int>(draw.plan.choices.size()) !=
          tree.NumNodesOf(Player::kComputer)) {
    return false;
  }
  if (!Satisfies(tree, draw.plan, draw.constraints)) return false;
  const std::vector<Plan> best =
      BestResponse(tree, Player::kComputer, draw.belief);
  return std::find(best.begin(), best.end(), draw.plan) != best.end();
}

bool VerifyDraw(const OpponentDraw& draw) {
  const std::optional<GameId> id = ParseGameId(draw.game);
  if (!id) return false;
  const GameTree& tree = CatalogGame(*id);
  if (*id == GameId::kG2) {
    const std::vector<int> nodes = tree.NodesOf(Player::kComputer);
    if (draw.plan.choices.size() != nodes.size() ||
        ChoiceAt(tree, draw.plan, nodes[1]) != Move::kExit) {
      return false;
    }
  }
  return VerifyDraw(tree, draw);
}

}  // namespace marbledrop
