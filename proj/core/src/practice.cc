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


#include "marbledrop/practice.h"

#include <fmt/format.h>

#include <numeric>
#include <span>

#include "marbledrop/errors.h"
#include "marbledrop/rng.h"

namespace marbledrop {

GameTree RandomPracticeGame(int depth, std::uint64_t seed, std::string name) {
  if (depth < 1 || depth > 5) {
    throw InvalidArgument("practice depth must be in 1..5");
  }
  Rng rng(seed);
  std::array<int, 6> c_pay, p_pay;
  std::iota(c_pay.begin(), c_pay.end(), 1);
  std::iota(p_pay.begin(), p_pay.end(), 1);
  rng.Shuffle(std::span<int>(c_pay));
  rng.Shuffle(std::span<int>(p_pay));
  std::vector<DecisionNode> nodes;
  for (int i = 0; i < depth; ++i) {
    DecisionNode n;
    // The last node belongs to the participant.
    n.mover = (depth - 1 - i) % 2 == 0 ? Player::kParticipant
                                       : Player::kComputer;
    n.exit_label = std::string(1, static_cast<char>('a' + 2 * i));
    n.continue_label = std::string(1, static_cast<char>('b' + 2 * i));
    n.exit_payoff = Payoff{c_pay[i], p_pay[i]};
    nodes.push_back(std::move(n));
  }
  return GameTree(std::move(name), std::move(nodes),
                  Payoff{c_pay[depth], p_pay[depth]});
}

std::vector<GameTree> PracticeGames(std::uint64_t seed) {
  std::vector<GameTree> games;
  for (int i = 0; i < kNumPracticeGames; ++i) {
    games.push_back(RandomPracticeGame(kPracticeDepths[i],
                                       DeriveSeed(seed, "practice", i),
                                       fmt::format("practice-{:02d}", i + 1)));
  }
  return games;
}

}  // namespace marbledrop
