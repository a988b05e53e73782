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

#ifndef MARBLEDROP_EXACT_LP_H_
#define MARBLEDROP_EXACT_LP_H_

#include <optional>
#include <vector>

#include "marbledrop/rational.h"

namespace marbledrop {

// Decides whether some probability vector mu (mu >= 0, sum mu = 1) satisfies
// rows[r] . mu >= 0 for every row, and returns one such mu when it exists.
// Exact phase-1 simplex with Bland's rule; `rows` may be empty.
std::optional<std::vector<Rational>> FindSimplexPoint(
    const std::vector<std::vector<Rational>>& rows, int num_vars);

}  // namespace marbledrop

#endif  // MARBLEDROP_EXACT_LP_H_
