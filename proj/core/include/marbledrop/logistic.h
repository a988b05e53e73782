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


#ifndef MARBLEDROP_LOGISTIC_H_
#define MARBLEDROP_LOGISTIC_H_

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace marbledrop {

struct LogisticOptions {
  int max_iterations = 100;
  double tolerance = 1e-10;  // on the largest Newton step
  // Coefficients beyond this size, or fitted probabilities within 1e-12 of
  // 0 or 1, are read as (quasi-)separation.
  double separation_bound = 30.0;
};

enum class FitStatus { kConverged, kSeparation, kNotConverged };
const char* FitStatusName(FitStatus s);

// Estimates are reported only when status == kConverged.
struct RegressionFit {
  FitStatus status = FitStatus::kNotConverged;
  int iterations = 0;
  std::vector<std::string> names;  // covariates; intercepts are not reported
  Eigen::VectorXd coefficients;
  Eigen::VectorXd standard_errors;
  Eigen::VectorXd z;
  Eigen::VectorXd p_values;  // two-sided Wald
  double log_likelihood = 0.0;
  int observations = 0;            // after dropping
  int dropped_participants = 0;    // constant outcomes
  int participants = 0;            // kept

  bool converged() const { return status == FitStatus::kConverged; }
};

// Logit log-likelihood, its gradient and Hessian (negative definite) for a
// full design matrix.
double LogisticLogLikelihood(const Eigen::MatrixXd& design,
                             const Eigen::VectorXd& y,
                             const Eigen::VectorXd& beta);
Eigen::VectorXd LogisticGradient(const Eigen::MatrixXd& design,
                                 const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& beta);

// Newton / IRLS on a full design matrix (no columns added). The leading
// `reported` columns are copied into the fit.
RegressionFit FitLogit(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                       std::vector<std::string> names, int reported,
                       const LogisticOptions& options = {});

// Logistic regression of `outcomes` on `covariates` with one intercept per
// participant (fixed effects standing in for random intercepts). With an
// empty `participants` a single common intercept is used. Participants whose
// outcomes are all equal carry no information about the covariates under
// fixed effects and are dropped first. Throws InvalidArgument on shape
// mismatches, non-binary outcomes or zero covariates.
RegressionFit LogisticFit(const std::vector<int>& outcomes,
                          const Eigen::MatrixXd& covariates,
                          const std::vector<std::string>& names,
                          const std::vector<std::string>& participants,
                          const LogisticOptions& options = {});

}  // namespace marbledrop

#endif  // MARBLEDROP_LOGISTIC_H_
