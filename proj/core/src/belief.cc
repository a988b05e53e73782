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

#include "marbledrop/belief.h"

#include <algorithm>

#include "marbledrop/errors.h"

namespace marbledrop {

Belief::Belief(std::vector<Plan> support, std::vector<Rational> weights)
    : support_(std::move(support)), weights_(std::move(weights)) {
  if (support_.empty()) throw InvalidArgument("belief support is empty");
  if (support_.size() != weights_.size()) {
    throw InvalidArgument("belief support and weights differ in size");
  }
  Rational total = 0;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (support_[i].owner != support_.front().owner) {
      throw InvalidArgument("belief mixes plans of both players");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (support_[j] == support_[i]) {
        throw InvalidArgument("duplicate plan in belief support");
      }
    }
    if (weights_[i] < 0) throw InvalidArgument("negative belief weight");
    total += weights_[i];
  }
  if (total != 1) throw InvalidArgument("belief weights must sum to 1");
}

Belief Belief::Point(Plan plan) {
  return Belief({std::move(plan)}, {Rational(1)});
}

Belief Belief::Uniform(std::vector<Plan> support) {
  const std::size_t n = support.size();
  if (n == 0) throw InvalidArgument("belief support is empty");
  std::vector<Rational> w(n, Rational(1, static_cast<long>(n)));
  return Belief(std::move(support), std::move(w));
}

std::string Belief::Render(const GameTree& tree) const {
  if (support_.size() == 1) return RenderPlan(tree, support_[0]);
  std::string out;
  for (std::size_t i = 0; i < support_.size(); ++i) {
    if (i) out += ", ";
    out += RenderPlan(tree, support_[i]) + ":" + weights_[i].str();
  }
  return out;
}

}  // namespace marbledrop
