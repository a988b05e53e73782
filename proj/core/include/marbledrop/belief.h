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

#ifndef MARBLEDROP_BELIEF_H_
#define MARBLEDROP_BELIEF_H_

#include <span>
#include <string>
#include <vector>

#include "marbledrop/game_tree.h"
#include "marbledrop/rational.h"

namespace marbledrop {

// Probability distribution over the plans of one player, with exact weights.
class Belief {
 public:
  // Throws InvalidArgument unless: support non-empty, same owner throughout,
  // no duplicate plans, weights >= 0 summing to exactly 1.
  Belief(std::vector<Plan> support, std::vector<Rational> weights);

  static Belief Point(Plan plan);
  static Belief Uniform(std::vector<Plan> support);

  Player about() const { return support_.front().owner; }
  std::span<const Plan> support() const { return support_; }
  std::span<const Rational> weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }

  // "d;h" for point beliefs, otherwise "p1:w1, p2:w2, ...".
  std::string Render(const GameTree& tree) const;

  friend bool operator==(const Belief&, const Belief&) = default;

 private:
  std::vector<Plan> support_;
  std::vector<Rational> weights_;
};

}  // namespace marbledrop

#endif  // MARBLEDROP_BELIEF_H_
