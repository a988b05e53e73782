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


#ifndef MARBLEDROP_LCA_H_
#define MARBLEDROP_LCA_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace marbledrop {

// Binary items aggregated into parameter groups: every item in a group
// shares one Bernoulli parameter per class, so a participant contributes
// (stops, observations) per group. Zero observations means missing.
struct LcaData {
  std::vector<std::string> groups;
  std::vector<std::vector<std::pair<int, int>>> counts;  // [participant][group]

  // `rows[i][item]` is 1, 0 or -1 (missing); `item_group[item]` indexes
  // `groups`. Throws InvalidArgument on ragged rows or bad values.
  static LcaData FromBinary(const std::vector<std::vector<int>>& rows,
                            const std::vector<int>& item_group,
                            std::vector<std::string> groups);

  int participants() const { return static_cast<int>(counts.size()); }
  int num_groups() const { return static_cast<int>(groups.size()); }
  int DistinctPatterns() const;
};

struct LcaOptions {
  int n_classes = 1;
  std::uint64_t seed = 1;
  int restarts = 20;
  int max_iterations = 500;
  double tolerance = 1e-8;  // on the change in log-likelihood
};

struct LcaModel {
  int n_classes = 0;
  std::vector<double> shares;              // sorted, largest first
  std::vector<std::vector<double>> probs;  // [class][group]: P(stop)
  std::vector<std::vector<double>> posteriors;  // [participant][class]
  double log_likelihood = 0.0;
  int free_parameters = 0;
  int observations = 0;  // participants
  double bic = 0.0;      // -2 logL + p ln N
  std::vector<double> trace;  // log-likelihood per EM iteration, best run
  int iterations = 0;
  bool converged = false;
  int best_restart = 0;
};

// EM from `restarts` random starts, keeping the best log-likelihood.
// Throws InvalidArgument when n_classes < 1 or exceeds the number of
// distinct response patterns.
LcaModel LcaFit(const LcaData& data, const LcaOptions& options);

// Log-likelihood trace of a fitted model.
const std::vector<double>& EmLoglikTrace(const LcaModel& model);

struct BicCurve {
  std::vector<LcaModel> models;  // 1..max_classes (fewer if patterns run out)
  int selected = 1;              // argmin BIC
};

BicCurve BicSelect(const LcaData& data, int max_classes, std::uint64_t seed,
                   int restarts = 20);

}  // namespace marbledrop

#endif  // MARBLEDROP_LCA_H_
