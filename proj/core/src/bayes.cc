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


#include "marbledrop/bayes.h"

#include <cmath>

#include "marbledrop/errors.h"

namespace marbledrop {

double BetaDensity(double x, double a, double b) {
  const double log_beta = std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b);
  return std::exp((a - 1) * std::log(x) + (b - 1) * std::log1p(-x) - log_beta);
}

double BayesFactorBinomial(int successes, int trials, double p0) {
  if (trials < 0 || successes < 0 || successes > trials) {
    throw InvalidArgument("need 0 <= successes <= trials");
  }
  if (!(p0 > 0.0 && p0 < 1.0)) throw InvalidArgument("p0 must be in (0, 1)");
  if (trials == 0) return 1.0;
  // The Beta(1, 1) prior density is 1 everywhere.
  return 1.0 / BetaDensity(p0, 1.0 + successes, 1.0 + trials - successes);
}

double BayesFactorNull(int successes, int trials, double p0) {
  return 1.0 / BayesFactorBinomial(successes, trials, p0);
}

}  // namespace marbledrop
