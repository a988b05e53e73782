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


#include "marbledrop/lca.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "marbledrop/errors.h"
#include "marbledrop/rng.h"

namespace marbledrop {
namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double LogSumExp(const std::vector<double>& v) {
  const double m = *std::max_element(v.begin(), v.end());
  if (m == kNegInf) return kNegInf;
  double s = 0.0;
  for (double x : v) s += std::exp(x - m);
  return m + std::log(s);
}

// s log p + (n - s) log(1 - p), with 0 log 0 = 0.
double BinomialLogTerm(int s, int n, double p) {
  double out = 0.0;
  if (s > 0) out += s * std::log(p);
  if (n - s > 0) out += (n - s) * std::log1p(-p);
  return out;
}

struct Params {
  std::vector<double> shares;
  std::vector<std::vector<double>> probs;
};

// E-step: fills `post` and returns the log-likelihood.
double EStep(const LcaData& data, const Params& p,
             std::vector<std::vector<double>>& post) {
  const int k = static_cast<int>(p.shares.size());
  double ll = 0.0;
  std::vector<double> logs(k);
  post.assign(data.participants(), std::vector<double>(k));
  for (int i = 0; i < data.participants(); ++i) {
    for (int c = 0; c < k; ++c) {
      double v = p.shares[c] > 0 ? std::log(p.shares[c]) : kNegInf;
      for (int g = 0; g < data.num_groups() && v != kNegInf; ++g) {
        const auto [s, n] = data.counts[i][g];
        v += BinomialLogTerm(s, n, p.probs[c][g]);
      }
      logs[c] = v;
    }
    const double norm = LogSumExp(logs);
    ll += norm;
    for (int c = 0; c < k; ++c) post[i][c] = std::exp(logs[c] - norm);
  }
  return ll;
}

void MStep(const LcaData& data, const std::vector<std::vector<double>>& post,
           Params& p) {
  const int k = static_cast<int>(p.shares.size());
  const int n = data.participants();
  double total = 0.0;
  for (int c = 0; c < k; ++c) {
    double mass = 0.0;
    for (int i = 0; i < n; ++i) mass += post[i][c];
    p.shares[c] = mass;
    total += mass;
    for (int g = 0; g < data.num_groups(); ++g) {
      double num = 0.0, den = 0.0;
      for (int i = 0; i < n; ++i) {
        num += post[i][c] * data.counts[i][g].first;
        den += post[i][c] * data.counts[i][g].second;
      }
      if (den > 0) p.probs[c][g] = num / den;
    }
  }
  for (double& s : p.shares) s /= total;
}

struct Run {
  Params params;
  std::vector<double> trace;
  int iterations = 0;
  bool converged = false;
};

Run RunEm(const LcaData& data, const LcaOptions& options, Rng& rng) {
  const int k = options.n_classes;
  Run run;
  run.params.shares.assign(k, 1.0 / k);
  run.params.probs.assign(k, std::vector<double>(data.num_groups()));
  for (auto& row : run.params.probs) {
    for (double& v : row) v = 0.05 + 0.9 * rng.Uniform01();
  }
  std::vector<std::vector<double>> post;
  for (int iter = 1; iter <= options.max_iterations; ++iter) {
    const double ll = EStep(data, run.params, post);
    run.trace.push_back(ll);
    run.iterations = iter;
    if (run.trace.size() >= 2 &&
        std::abs(ll - run.trace[run.trace.size() - 2]) < options.tolerance) {
      run.converged = true;
      break;
    }
    MStep(data, post, run.params);
  }
  return run;
}

}  // namespace

LcaData LcaData::FromBinary(const std::vector<std::vector<int>>& rows,
                            const std::vector<int>& item_group,
                            std::vector<std::string> groups) {
  LcaData data;
  data.groups = std::move(groups);
  for (int g : item_group) {
    if (g < 0 || g >= data.num_groups()) {
      throw InvalidArgument("item group out of range");
    }
  }
  for (const std::vector<int>& row : rows) {
    if (row.size() != item_group.size()) throw InvalidArgument("ragged rows");
    std::vector<std::pair<int, int>> counts(data.groups.size());
    for (std::size_t j = 0; j < row.size(); ++j) {
      if (row[j] == -1) continue;
      if (row[j] != 0 && row[j] != 1) {
        throw InvalidArgument("items must be 0, 1 or -1");
      }
      counts[item_group[j]].first += row[j];
      counts[item_group[j]].second += 1;
    }
    data.counts.push_back(std::move(counts));
  }
  return data;
}

int LcaData::DistinctPatterns() const {
  return static_cast<int>(
      std::set<std::vector<std::pair<int, int>>>(counts.begin(), counts.end())
          .size());
}

LcaModel LcaFit(const LcaData& data, const LcaOptions& options) {
  if (options.n_classes < 1) throw InvalidArgument("n_classes must be >= 1");
  if (data.participants() == 0) throw InvalidArgument("no participants");
  if (options.n_classes > data.DistinctPatterns()) {
    throw InvalidArgument("more classes than distinct response patterns");
  }
  if (options.restarts < 1) throw InvalidArgument("restarts must be >= 1");

  Run best;
  double best_ll = kNegInf;
  int best_restart = 0;
  for (int r = 0; r < options.restarts; ++r) {
    Rng rng(DeriveSeed(options.seed, "lca-restart",
                       static_cast<std::uint64_t>(r)));
    Run run = RunEm(data, options, rng);
    if (run.trace.back() > best_ll) {
      best_ll = run.trace.back();
      best = std::move(run);
      best_restart = r;
    }
  }

  const int k = options.n_classes;
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return best.params.shares[a] > best.params.shares[b];
  });
  LcaModel m;
  m.n_classes = k;
  Params sorted;
  for (int c : order) {
    sorted.shares.push_back(best.params.shares[c]);
    sorted.probs.push_back(best.params.probs[c]);
  }
  m.log_likelihood = EStep(data, sorted, m.posteriors);
  m.shares = std::move(sorted.shares);
  m.probs = std::move(sorted.probs);
  m.free_parameters = (k - 1) + k * data.num_groups();
  m.observations = data.participants();
  m.bic = -2.0 * m.log_likelihood +
          m.free_parameters * std::log(static_cast<double>(m.observations));
  m.trace = std::move(best.trace);
  m.iterations = best.iterations;
  m.converged = best.converged;
  m.best_restart = best_restart;
  return m;
}

const std::vector<double>& EmLoglikTrace(const LcaModel& model) {
  return model.trace;
}

BicCurve BicSelect(const LcaData& data, int max_classes, std::uint64_t seed,
                   int restarts) {
  if (max_classes < 1) throw InvalidArgument("max_classes must be >= 1");
  BicCurve curve;
  const int limit = std::min(max_classes, data.DistinctPatterns());
  for (int k = 1; k <= limit; ++k) {
    LcaOptions o;
    o.n_classes = k;
    o.seed = DeriveSeed(seed, "classes", static_cast<std::uint64_t>(k));
    o.restarts = restarts;
    curve.models.push_back(LcaFit(data, o));
  }
  int best = 0;
  for (int i = 1; i < static_cast<int>(curve.models.size()); ++i) {
    if (curve.models[i].bic < curve.models[best].bic) best = i;
  }
  curve.selected = curve.models[best].n_classes;
  return curve;
}

}  // namespace marbledrop
