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

#include "marbledrop/solvers.h"

#include <algorithm>
#include <map>
#include <set>

#include "marbledrop/errors.h"
#include "marbledrop/exact_lp.h"

namespace marbledrop {
namespace {

void CheckSize(const GameTree& tree) {
  if (tree.num_nodes() > kMaxSolverNodes) {
    throw InvalidArgument("solver supports at most " +
                          std::to_string(kMaxSolverNodes) + " decision nodes");
  }
}

// Moves a subgame-perfect continuation may choose at each node.
std::vector<std::set<Move>> AdmissibleMoves(const GameTree& tree) {
  const int n = tree.num_nodes();
  std::vector<std::set<Move>> admissible(n);
  std::set<int> continuation = {n};  // SPE leaves of the subgame after node i
  for (int i = n - 1; i >= 0; --i) {
    const Player mover = tree.mover(i);
    const int exit_value = tree.leaf_payoff(i).For(mover);
    std::set<int> here;
    for (int leaf : continuation) {
      const int cont_value = tree.leaf_payoff(leaf).For(mover);
      if (exit_value >= cont_value) {
        admissible[i].insert(Move::kExit);
        here.insert(i);
      }
      if (cont_value >= exit_value) {
        admissible[i].insert(Move::kContinue);
        here.insert(leaf);
      }
    }
    continuation = std::move(here);
  }
  return admissible;
}

// Opponent choices from `node` on; plans with equal keys are
// indistinguishable once `node` is reached.
std::vector<Move> ContinuationKey(const GameTree& tree, const Plan& plan,
                                  int node) {
  std::vector<Move> key;
  for (int i = node; i < tree.num_nodes(); ++i) {
    if (tree.mover(i) == plan.owner) key.push_back(ChoiceAt(tree, plan, i));
  }
  return key;
}

Plan PlanFor(const GameTree& tree, Player owner, const std::vector<Move>& key,
             int node) {
  // Rebuild a full plan whose continuation from `node` is `key`; moves before
  // `node` are irrelevant for play from `node`.
  Plan plan{owner, std::vector<Move>(tree.NumNodesOf(owner), Move::kContinue)};
  std::size_t k = 0;
  for (int i = node; i < tree.num_nodes(); ++i) {
    if (tree.mover(i) == owner) plan.choices[tree.OwnIndex(i)] = key[k++];
  }
  return plan;
}

int ValueFrom(const GameTree& tree, int node, const Plan& own,
              const Plan& other) {
  const Plan& c = own.owner == Player::kComputer ? own : other;
  const Plan& p = own.owner == Player::kComputer ? other : own;
  return PlayFrom(tree, node, c, p).payoff.For(own.owner);
}

}  // namespace

std::vector<int> SubgamePerfectLeaves(const GameTree& tree, int node) {
  const int n = tree.num_nodes();
  std::set<int> continuation = {n};
  for (int i = n - 1; i >= node; --i) {
    const Player mover = tree.mover(i);
    const int exit_value = tree.leaf_payoff(i).For(mover);
    std::set<int> here;
    for (int leaf : continuation) {
      const int cont_value = tree.leaf_payoff(leaf).For(mover);
      if (exit_value >= cont_value) here.insert(i);
      if (cont_value >= exit_value) here.insert(leaf);
    }
    continuation = std::move(here);
  }
  return {continuation.begin(), continuation.end()};
}

PlanSets BackwardInduction(const GameTree& tree) {
  CheckSize(tree);
  const std::vector<std::set<Move>> admissible = AdmissibleMoves(tree);
  PlanSets out;
  for (Player p : {Player::kComputer, Player::kParticipant}) {
    for (const Plan& plan : AllPlans(tree, p)) {
      bool ok = true;
      for (int node : tree.NodesOf(p)) {
        if (!admissible[node].contains(ChoiceAt(tree, plan, node))) {
          ok = false;
          break;
        }
      }
      if (ok) out.For(p).push_back(plan);
    }
  }
  return out;
}

Rational ExpectedPayoff(const GameTree& tree, const Plan& plan,
                        const Belief& belief) {
  if (belief.about() != Other(plan.owner)) {
    throw InvalidArgument("belief must be about the other player's plans");
  }
  Rational total = 0;
  for (std::size_t i = 0; i < belief.size(); ++i) {
    total += belief.weights()[i] *
             ValueFrom(tree, 0, plan, belief.support()[i]);
  }
  return total;
}

std::vector<Plan> BestResponse(const GameTree& tree, Player player,
                               const Belief& belief) {
  CheckSize(tree);
  if (belief.about() != Other(player)) {
    throw InvalidArgument("belief must be about the other player's plans");
  }
  std::vector<Plan> best;
  Rational best_value;
  for (const Plan& plan : AllPlans(tree, player)) {
    Rational v = ExpectedPayoff(tree, plan, belief);
    if (best.empty() || v > best_value) {
      best = {plan};
      best_value = v;
    } else if (v == best_value) {
      best.push_back(plan);
    }
  }
  return best;
}

bool Dominates(const GameTree& tree, const Plan& s1, const Plan& s2) {
  if (s1.owner != s2.owner) {
    throw InvalidArgument("dominance compares plans of the same player");
  }
  bool strict = false;
  for (const Plan& t : AllPlans(tree, Other(s1.owner))) {
    const int v1 = ValueFrom(tree, 0, s1, t);
    const int v2 = ValueFrom(tree, 0, s2, t);
    if (v1 < v2) return false;
    if (v1 > v2) strict = true;
  }
  return strict;
}

bool OptimalAtNodeForSomeBelief(const GameTree& tree, const Plan& plan,
                                int node, std::span<const Plan> opponents) {
  if (tree.mover(node) != plan.owner) {
    throw InvalidArgument("node is not owned by the plan's owner");
  }
  if (opponents.empty()) throw InvalidArgument("empty belief support");
  const Player owner = plan.owner;
  const Player other = Other(owner);

  // Merge opponent plans that behave identically from `node` on.
  std::map<std::vector<Move>, Plan> columns;
  for (const Plan& t : opponents) {
    if (t.owner != other) throw InvalidArgument("opponent plan owner mismatch");
    columns.try_emplace(ContinuationKey(tree, t, node), t);
  }
  const std::vector<Move> own_key = ContinuationKey(tree, plan, node);
  std::set<std::vector<Move>> alternatives;
  for (const Plan& r : AllPlans(tree, owner)) {
    std::vector<Move> key = ContinuationKey(tree, r, node);
    if (key != own_key) alternatives.insert(std::move(key));
  }

  std::vector<std::vector<Rational>> rows;
  rows.reserve(alternatives.size());
  for (const std::vector<Move>& alt_key : alternatives) {
    const Plan alt = PlanFor(tree, owner, alt_key, node);
    std::vector<Rational> row;
    row.reserve(columns.size());
    for (const auto& [key, t] : columns) {
      row.emplace_back(ValueFrom(tree, node, plan, t) -
                       ValueFrom(tree, node, alt, t));
    }
    rows.push_back(std::move(row));
  }
  return FindSimplexPoint(rows, static_cast<int>(columns.size())).has_value();
}

EfrTrace EfrLevels(const GameTree& tree) {
  CheckSize(tree);
  EfrTrace trace;
  trace.levels.push_back(PlanSets{AllPlans(tree, Player::kComputer),
                                  AllPlans(tree, Player::kParticipant)});
  while (true) {
    const PlanSets& current = trace.levels.back();
    PlanSets next;
    for (Player p : {Player::kComputer, Player::kParticipant}) {
      const Player other = Other(p);
      const std::vector<int> own_nodes = tree.NodesOf(p);
      // Strong belief: the highest level whose opponent plans reach h.
      std::vector<std::vector<Plan>> support(own_nodes.size());
      for (std::size_t k = 0; k < own_nodes.size(); ++k) {
        for (auto level = trace.levels.rbegin(); level != trace.levels.rend();
             ++level) {
          for (const Plan& t : level->For(other)) {
            if (PlanReaches(tree, t, own_nodes[k])) support[k].push_back(t);
          }
          if (!support[k].empty()) break;
        }
      }
      for (const Plan& s : current.For(p)) {
        bool survives = true;
        for (std::size_t k = 0; k < own_nodes.size() && survives; ++k) {
          survives = OptimalAtNodeForSomeBelief(tree, s, own_nodes[k],
                                                support[k]);
        }
        if (survives) next.For(p).push_back(s);
      }
    }
    if (next == current) break;
    trace.levels.push_back(std::move(next));
  }
  return trace;
}

PlanSets Efr(const GameTree& tree) { return EfrLevels(tree).result(); }

std::vector<int> CrossOutcomes(const GameTree& tree,
                               std::span<const Plan> computer,
                               std::span<const Plan> participant) {
  std::set<int> leaves;
  for (const Plan& c : computer) {
    for (const Plan& p : participant) leaves.insert(Play(tree, c, p).leaf);
  }
  return {leaves.begin(), leaves.end()};
}

SolutionSet Solve(const GameTree& tree) {
  SolutionSet s;
  s.bi = BackwardInduction(tree);
  s.efr = Efr(tree);
  s.bi_outcomes = CrossOutcomes(tree, s.bi.computer, s.bi.participant);
  s.efr_outcomes = CrossOutcomes(tree, s.efr.computer, s.efr.participant);
  return s;
}

std::string RenderPlanSets(const GameTree& tree, const PlanSets& sets) {
  return "C: " + RenderPlanSet(tree, sets.computer) +
         " | P: " + RenderPlanSet(tree, sets.participant);
}

}  // namespace marbledrop
