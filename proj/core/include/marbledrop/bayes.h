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


#ifndef MARBLEDROP_BAYES_H_
#define MARBLEDROP_BAYES_H_

namespace marbledrop {

// Density of Beta(a, b) at x in (0, 1).
double BetaDensity(double x, double a, double b);

// Savage-Dickey Bayes factor BF10 for a binomial rate against the point null
// p0, under a uniform prior: 1 / Beta(1 + s, 1 + t - s) density at p0.
// Returns 1 when trials == 0. Throws InvalidArgument unless
// 0 <= successes <= trials and 0 < p0 < 1.
double BayesFactorBinomial(int successes, int trials, double p0 = 0.5);

// BF01 = 1 / BF10.
double BayesFactorNull(int successes, int trials, double p0 = 0.5);

}  // namespace marbledrop

#endif  // MARBLEDROP_BAYES_H_
