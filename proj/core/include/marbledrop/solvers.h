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

#ifndef MARBLEDROP_SOLVERS_H_
#define MARBLEDROP_SOLVERS_H_

#include <span>
#include <string>
#include <vector>

#include "marbledrop/belief.h"
#include "marbledrop/game_tree.h"
#include "marbledrop/rational.h"

namespace marbledrop {

// Solvers enumerate plans, so trees are capped at this many decision nodes.
inline constexpr int kMaxSolverNodes = 12;

struct PlanSets {
  std::vector<Plan> computer;
  std::vector<Plan> participant;

  const std::vector<Plan>& For(Player p) const {
    return p == Player::kComputer ? computer : participant;
  }
  std::vector<Plan>& For(Player p) {
    return p == Player::kComputer ? computer : participant;
  }
  friend bool operator==(const PlanSets&, const PlanSets&) = default;
};

// Backward induction with ties. For every node, the admissible moves are
// those chosen by some subgame-perfect continuation from that node; a plan is
// a BI plan iff each of its moves is admissible at its node. Sorted.
PlanSets BackwardInduction(const GameTree& tree);

// Leaves reachable by subgame-perfect play from `node` (tie branches kept).
std::vector<int> SubgamePerfectLeaves(const GameTree& tree, int node);

// Expected marbles of `plan` (for its owner) against `belief`.
Rational ExpectedPayoff(const GameTree& tree, const Plan& plan,
                        const Belief& belief);

// Every plan of `player` maximizing expected payoff against a belief about
// the other player. Sorted. Throws InvalidArgument when the belief is about
// the wrong player.
std::vector<Plan> BestResponse(const GameTree& tree, Player player,
                               const Belief& belief);

// Weak dominance over the opponent's full plan set.
bool Dominates(const GameTree& tree, const Plan& s1, const Plan& s2);

// True iff `plan` is optimal at `node` (an own node) against some belief
// concentrated on `opponents` (plans that must all reach `node`).
bool OptimalAtNodeForSomeBelief(const GameTree& tree, const Plan& plan,
                                int node, std::span<const Plan> opponents);

// Elimination levels of extensive-form rationalizability. levels[0] holds all
// plans; levels[k+1] keeps the plans of levels[k] that, at every own node h,
// are optimal against some belief concentrated on the highest level m <= k
// whose opponent plans reach h. The last entry is the fixpoint.
struct EfrTrace {
  std::vector<PlanSets> levels;
  const PlanSets& result() const { return levels.back(); }
};

EfrTrace EfrLevels(const GameTree& tree);
PlanSets Efr(const GameTree& tree);

struct SolutionSet {
  PlanSets bi;
  PlanSets efr;
  // Leaves reached by the cross products of the plan sets. Sorted.
  std::vector<int> bi_outcomes;
  std::vector<int> efr_outcomes;
};

SolutionSet Solve(const GameTree& tree);

// Leaves reached by all pairs in computer x participant. Sorted, unique.
std::vector<int> CrossOutcomes(const GameTree& tree,
                               std::span<const Plan> computer,
                               std::span<const Plan> participant);

// "C: a;e, a;f | P: d;g"
std::string RenderPlanSets(const GameTree& tree, const PlanSets& sets);

}  // namespace marbledrop

#endif  // MARBLEDROP_SOLVERS_H_
