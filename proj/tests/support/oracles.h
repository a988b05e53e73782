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


#ifndef MARBLEDROP_TESTS_SUPPORT_ORACLES_H_
#define MARBLEDROP_TESTS_SUPPORT_ORACLES_H_

#include <boost/rational.hpp>

#include <vector>

#include "marbledrop/belief.h"
#include "marbledrop/game_tree.h"
#include "marbledrop/rng.h"
#include "marbledrop/solvers.h"

namespace marbledrop::testing {

using Q = boost::rational<long long>;

// Random spine tree with 1..max_nodes nodes, a random first mover and
// payoffs in 1..6. With `distinct`, each player's payoffs are pairwise
// distinct.
GameTree RandomSpineTree(Rng& rng, int max_nodes, bool distinct);

// Random belief over `owner`'s plans: random support, small integer weights.
Belief RandomBelief(Rng& rng, const GameTree& tree, Player owner);

// Expected payoff by playing every support plan, in long-long rationals.
Q BruteExpectedPayoff(const GameTree& tree, const Plan& plan,
                      const Belief& belief);

// Arg-max over all of `player`'s plans, by brute force.
std::vector<Plan> BruteBestResponse(const GameTree& tree, Player player,
                                    const Belief& belief);

// Is there mu >= 0, sum mu = 1 with rows . mu >= 0? Decided by enumerating
// the vertices of the polytope (Gaussian elimination over Q).
bool FeasibleByVertices(const std::vector<std::vector<Q>>& rows, int num_vars);

// Plans of each player that survive the first elimination round: optimal,
// at every own node h, against some belief over all opponent plans
// reaching h. Checked with FeasibleByVertices, no column merging.
PlanSets EfrRoundOneOracle(const GameTree& tree);

// Is `plan` optimal at each own node for some choice of subgame-perfect
// continuation? Checked by enumerating opponent and own continuations.
bool NodeWiseBiOptimal(const GameTree& tree, const Plan& plan);

// Subgame-perfect outcomes by brute force over all plan pairs: a pair is
// subgame perfect when no player gains by deviating at any node.
std::vector<int> BruteSpeOutcomes(const GameTree& tree);

}  // namespace marbledrop::testing

#endif  // MARBLEDROP_TESTS_SUPPORT_ORACLES_H_
