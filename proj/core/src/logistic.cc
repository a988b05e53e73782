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


#include "marbledrop/logistic.h"

#include <cmath>
#include <map>

#include "marbledrop/errors.h"

namespace marbledrop {
namespace {

// log(1 + exp(x)) without overflow.
double Log1pExp(double x) {
  return x > 0 ? x + std::log1p(std::exp(-x)) : std::log1p(std::exp(x));
}

double Sigmoid(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace

const char* FitStatusName(FitStatus s) {
  switch (s) {
    case FitStatus::kConverged: return "converged";
    case FitStatus::kSeparation: return "separation";
    case FitStatus::kNotConverged: return "not_converged";
  }
  return "?";
}

double LogisticLogLikelihood(const Eigen::MatrixXd& design,
                             const Eigen::VectorXd& y,
                             const Eigen::VectorXd& beta) {
  const Eigen::VectorXd eta = design * beta;
  double ll = 0.0;
  for (Eigen::Index i = 0; i < eta.size(); ++i) {
    ll += y[i] * eta[i] - Log1pExp(eta[i]);
  }
  return ll;
}

Eigen::VectorXd LogisticGradient(const Eigen::MatrixXd& design,
                                 const Eigen::VectorXd& y,
                                 const Eigen::VectorXd& beta) {
  const Eigen::VectorXd eta = design * beta;
  Eigen::VectorXd resid(eta.size());
  for (Eigen::Index i = 0; i < eta.size(); ++i) resid[i] = y[i] - Sigmoid(eta[i]);
  return design.transpose() * resid;
}

RegressionFit FitLogit(const Eigen::MatrixXd& design, const Eigen::VectorXd& y,
                       std::vector<std::string> names, int reported,
                       const LogisticOptions& options) {
  const Eigen::Index n = design.rows();
  const Eigen::Index k = design.cols();
  RegressionFit fit;
  fit.names = std::move(names);
  fit.observations = static_cast<int>(n);

  Eigen::VectorXd beta = Eigen::VectorXd::Zero(k);
  double ll = LogisticLogLikelihood(design, y, beta);
  Eigen::MatrixXd info(k, k);
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    fit.iterations = iter;
    const Eigen::VectorXd eta = design * beta;
    Eigen::VectorXd w(n), resid(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double mu = Sigmoid(eta[i]);
      w[i] = mu * (1.0 - mu);
      resid[i] = y[i] - mu;
    }
    info = design.transpose() * w.asDiagonal() * design;
    Eigen::LDLT<Eigen::MatrixXd> ldlt(info);
    if (ldlt.info() != Eigen::Success || !ldlt.isPositive()) {
      fit.status = FitStatus::kSeparation;
      return fit;
    }
    Eigen::VectorXd step = ldlt.solve(design.transpose() * resid);
    // Halve the step until the likelihood does not drop.
    double next_ll = LogisticLogLikelihood(design, y, beta + step);
    for (int h = 0; h < 30 && next_ll < ll - 1e-12; ++h) {
      step /= 2.0;
      next_ll = LogisticLogLikelihood(design, y, beta + step);
    }
    beta += step;
    ll = next_ll;
    if (beta.cwiseAbs().maxCoeff() > options.separation_bound) {
      fit.status = FitStatus::kSeparation;
      return fit;
    }
    if (step.cwiseAbs().maxCoeff() < options.tolerance) {
      fit.status = FitStatus::kConverged;
      break;
    }
  }
  if (fit.status != FitStatus::kConverged) return fit;

  const Eigen::VectorXd eta = design * beta;
  Eigen::VectorXd w(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double mu = Sigmoid(eta[i]);
    if (mu < 1e-12 || mu > 1.0 - 1e-12) {
      fit.status = FitStatus::kSeparation;
      return fit;
    }
    w[i] = mu * (1.0 - mu);
  }
  info = design.transpose() * w.asDiagonal() * design;
  const Eigen::MatrixXd cov = info.inverse();
  fit.log_likelihood = ll;
  fit.coefficients = beta.head(reported);
  fit.standard_errors = cov.diagonal().head(reported).cwiseSqrt();
  fit.z = fit.coefficients.cwiseQuotient(fit.standard_errors);
  fit.p_values.resize(reported);
  for (int j = 0; j < reported; ++j) {
    fit.p_values[j] = std::erfc(std::abs(fit.z[j]) / std::sqrt(2.0));
  }
  return fit;
}

RegressionFit LogisticFit(const std::vector<int>& outcomes,
                          const Eigen::MatrixXd& covariates,
                          const std::vector<std::string>& names,
                          const std::vector<std::string>& participants,
                          const LogisticOptions& options) {
  const std::size_t n = outcomes.size();
  if (covariates.cols() < 1) throw InvalidArgument("need at least one covariate");
  if (static_cast<std::size_t>(covariates.rows()) != n) {
    throw InvalidArgument("covariate rows do not match outcomes");
  }
  if (names.size() != static_cast<std::size_t>(covariates.cols())) {
    throw InvalidArgument("one name per covariate");
  }
  if (!participants.empty() && participants.size() != n) {
    throw InvalidArgument("one participant id per outcome");
  }
  for (int v : outcomes) {
    if (v != 0 && v != 1) throw InvalidArgument("outcomes must be 0 or 1");
  }

  // Intercept column per kept participant, in order of first appearance.
  std::map<std::string, std::pair<int, int>> totals;  // id -> (sum, count)
  for (std::size_t i = 0; i < participants.size(); ++i) {
    auto& t = totals[participants[i]];
    t.first += outcomes[i];
    t.second += 1;
  }
  std::map<std::string, int> column;
  std::vector<std::size_t> rows;
  int dropped = 0;
  for (const auto& [id, t] : totals) {
    if (t.first == 0 || t.first == t.second) ++dropped;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (participants.empty()) {
      rows.push_back(i);
      continue;
    }
    const auto& t = totals[participants[i]];
    if (t.first == 0 || t.first == t.second) continue;
    if (!column.count(participants[i])) {
      const int next = static_cast<int>(column.size());
      column[participants[i]] = next;
    }
    rows.push_back(i);
  }
  const int k = static_cast<int>(covariates.cols());
  const int intercepts = participants.empty() ? 1 : static_cast<int>(column.size());

  RegressionFit fit;
  fit.names = names;
  fit.dropped_participants = dropped;
  fit.participants = participants.empty() ? 0 : static_cast<int>(column.size());
  if (rows.empty() || intercepts == 0) {
    fit.status = FitStatus::kSeparation;
    return fit;
  }
  Eigen::MatrixXd design = Eigen::MatrixXd::Zero(rows.size(), k + intercepts);
  Eigen::VectorXd y(rows.size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    const std::size_t i = rows[r];
    design.row(r).head(k) = covariates.row(i);
    design(r, k + (participants.empty() ? 0 : column[participants[i]])) = 1.0;
    y[r] = outcomes[i];
  }
  RegressionFit inner = FitLogit(design, y, names, k, options);
  inner.dropped_participants = fit.dropped_participants;
  inner.participants = fit.participants;
  return inner;
}

}  // namespace marbledrop
