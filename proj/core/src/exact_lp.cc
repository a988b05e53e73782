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

#include "marbledrop/exact_lp.h"

#include <cstddef>

namespace marbledrop {

Rational ParseRational(const std::string& text) { return Rational(text); }

double ToDouble(const Rational& r) { return r.convert_to<double>(); }

std::optional<std::vector<Rational>> FindSimplexPoint(
    const std::vector<std::vector<Rational>>& rows, int num_vars) {
  const int n = num_vars;
  const int num_rows = static_cast<int>(rows.size());
  const int m = num_rows + 1;           // one equality per row plus sum = 1
  const int cols = n + num_rows + m;    // mu, surplus, artificial
  const int rhs = cols;

  // Equalities: row.mu - surplus + artificial = 0 and sum(mu) + artificial = 1.
  std::vector<std::vector<Rational>> t(m, std::vector<Rational>(cols + 1));
  std::vector<int> basis(m);
  for (int r = 0; r < num_rows; ++r) {
    for (int j = 0; j < n; ++j) t[r][j] = rows[r].at(j);
    t[r][n + r] = -1;
    t[r][n + num_rows + r] = 1;
    basis[r] = n + num_rows + r;
  }
  for (int j = 0; j < n; ++j) t[num_rows][j] = 1;
  t[num_rows][n + num_rows + num_rows] = 1;
  t[num_rows][rhs] = 1;
  basis[num_rows] = n + num_rows + num_rows;

  // Phase-1 reduced costs: cost 1 on artificials, basis is all artificials.
  std::vector<Rational> obj(cols + 1);
  for (int j = 0; j <= cols; ++j) {
    Rational sum = 0;
    for (int i = 0; i < m; ++i) sum += t[i][j];
    const bool artificial = j >= n + num_rows && j < cols;
    obj[j] = (artificial ? Rational(1) : Rational(0)) - sum;
  }

  while (true) {
    int enter = -1;
    for (int j = 0; j < cols; ++j) {
      if (obj[j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    int leave = -1;
    Rational best_ratio;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      Rational ratio = t[i][rhs] / t[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    // Phase 1 is bounded below by zero, so a leaving row always exists.
    if (leave < 0) return std::nullopt;

    const Rational pivot = t[leave][enter];
    for (int j = 0; j <= cols; ++j) t[leave][j] /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rational f = t[i][enter];
      for (int j = 0; j <= cols; ++j) t[i][j] -= f * t[leave][j];
    }
    if (obj[enter] != 0) {
      const Rational f = obj[enter];
      for (int j = 0; j <= cols; ++j) obj[j] -= f * t[leave][j];
    }
    basis[leave] = enter;
  }

  // obj[rhs] is minus the sum of the artificials.
  if (obj[rhs] != 0) return std::nullopt;
  std::vector<Rational> mu(n);
  for (int i = 0; i < m; ++i) {
    if (basis[i] < n) mu[basis[i]] = t[i][rhs];
  }
  return mu;
}

}  // namespace marbledrop
