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


#include "oracles.h"

#include <algorithm>
#include <functional>
#include <numeric>
#include <set>
#include <span>

namespace marbledrop::testing {
namespace {

Q ToQ(const Rational& r) {
  return Q(boost::multiprecision::numerator(r).convert_to<long long>(),
           boost::multiprecision::denominator(r).convert_to<long long>());
}

int PayoffFrom(const GameTree& tree, int node, const Plan& a, const Plan& b,
               Player who) {
  const Plan& c = a.owner == Player::kComputer ? a : b;
  const Plan& p = a.owner == Player::kComputer ? b : a;
  return PlayFrom(tree, node, c, p).payoff.For(who);
}

// Solves the square system m x = rhs; false when singular.
bool Solve(std::vector<std::vector<Q>> m, std::vector<Q> rhs,
           std::vector<Q>& x) {
  const int n = static_cast<int>(rhs.size());
  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    for (int r = col; r < n; ++r) {
      if (m[r][col] != Q(0)) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) return false;
    std::swap(m[col], m[pivot]);
    std::swap(rhs[col], rhs[pivot]);
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == Q(0)) continue;
      const Q f = m[r][col] / m[col][col];
      for (int c = col; c < n; ++c) m[r][c] -= f * m[col][c];
      rhs[r] -= f * rhs[col];
    }
  }
  x.resize(n);
  for (int i = 0; i < n; ++i) x[i] = rhs[i] / m[i][i];
  return true;
}

}  // namespace

GameTree RandomSpineTree(Rng& rng, int max_nodes, bool distinct) {
  const int n = rng.UniformInt(1, max_nodes);
  std::vector<int> pc(6), pp(6);
  std::iota(pc.begin(), pc.end(), 1);
  std::iota(pp.begin(), pp.end(), 1);
  rng.Shuffle(std::span<int>(pc));
  rng.Shuffle(std::span<int>(pp));
  auto pay = [&](int i) {
    if (distinct) return Payoff{pc[i], pp[i]};
    const int c = rng.UniformInt(1, 6);
    return Payoff{c, rng.UniformInt(1, 6)};
  };
  Player mover = rng.Bernoulli(0.5) ? Player::kComputer : Player::kParticipant;
  std::vector<DecisionNode> nodes;
  for (int i = 0; i < n; ++i) {
    nodes.push_back(DecisionNode{mover, std::string(1, char('a' + 2 * i)),
                                 std::string(1, char('b' + 2 * i)), pay(i)});
    mover = Other(mover);
  }
  return GameTree("random", std::move(nodes), pay(n));
}

Belief RandomBelief(Rng& rng, const GameTree& tree, Player owner) {
  std::vector<Plan> plans = AllPlans(tree, owner);
  rng.Shuffle(std::span<Plan>(plans));
  const int k = rng.UniformInt(1, static_cast<int>(plans.size()));
  plans.resize(k);
  std::vector<int> raw(k);
  int total = 0;
  for (int& w : raw) total += (w = rng.UniformInt(1, 5));
  std::vector<Rational> weights;
  for (int w : raw) weights.emplace_back(w, total);
  return Belief(std::move(plans), std::move(weights));
}

Q BruteExpectedPayoff(const GameTree& tree, const Plan& plan,
                      const Belief& belief) {
  Q sum = 0;
  for (std::size_t i = 0; i < belief.size(); ++i) {
    sum += ToQ(belief.weights()[i]) *
           PayoffFrom(tree, 0, plan, belief.support()[i], plan.owner);
  }
  return sum;
}

std::vector<Plan> BruteBestResponse(const GameTree& tree, Player player,
                                    const Belief& belief) {
  std::vector<Plan> best;
  Q best_value(-1);
  for (const Plan& p : AllPlans(tree, player)) {
    const Q v = BruteExpectedPayoff(tree, p, belief);
    if (v > best_value) {
      best_value = v;
      best = {p};
    } else if (v == best_value) {
      best.push_back(p);
    }
  }
  return best;
}

bool FeasibleByVertices(const std::vector<std::vector<Q>>& rows, int n) {
  // Inequalities g . mu >= 0: first the n coordinates, then the rows.
  std::vector<std::vector<Q>> ineq;
  for (int j = 0; j < n; ++j) {
    std::vector<Q> e(n, Q(0));
    e[j] = 1;
    ineq.push_back(std::move(e));
  }
  ineq.insert(ineq.end(), rows.begin(), rows.end());
  const int m = static_cast<int>(ineq.size());

  std::vector<int> chosen;
  std::function<bool(int)> search = [&](int start) -> bool {
    if (static_cast<int>(chosen.size()) == n - 1) {
      std::vector<std::vector<Q>> a;
      std::vector<Q> rhs;
      a.push_back(std::vector<Q>(n, Q(1)));
      rhs.push_back(1);
      for (int idx : chosen) {
        a.push_back(ineq[idx]);
        rhs.push_back(0);
      }
      std::vector<Q> x;
      if (!Solve(a, rhs, x)) return false;
      for (const std::vector<Q>& g : ineq) {
        Q dot = 0;
        for (int j = 0; j < n; ++j) dot += g[j] * x[j];
        if (dot < Q(0)) return false;
      }
      return true;
    }
    for (int i = start; i < m; ++i) {
      chosen.push_back(i);
      if (search(i + 1)) return true;
      chosen.pop_back();
    }
    return false;
  };
  return search(0);
}

PlanSets EfrRoundOneOracle(const GameTree& tree) {
  PlanSets out;
  for (Player p : {Player::kComputer, Player::kParticipant}) {
    const std::vector<Plan> own = AllPlans(tree, p);
    const std::vector<Plan> theirs = AllPlans(tree, Other(p));
    for (const Plan& s : own) {
      bool survives = true;
      for (int h : tree.NodesOf(p)) {
        std::vector<Plan> cols;
        for (const Plan& t : theirs) {
          if (PlanReaches(tree, t, h)) cols.push_back(t);
        }
        std::vector<std::vector<Q>> rows;
        for (const Plan& alt : own) {
          if (alt == s) continue;
          std::vector<Q> row;
          for (const Plan& t : cols) {
            row.emplace_back(PayoffFrom(tree, h, s, t, p) -
                             PayoffFrom(tree, h, alt, t, p));
          }
          rows.push_back(std::move(row));
        }
        if (!FeasibleByVertices(rows, static_cast<int>(cols.size()))) {
          survives = false;
          break;
        }
      }
      if (survives) out.For(p).push_back(s);
    }
  }
  return out;
}

std::vector<int> BruteSpeOutcomes(const GameTree& tree) {
  std::set<int> leaves;
  const std::vector<Plan> cs = AllPlans(tree, Player::kComputer);
  const std::vector<Plan> ps = AllPlans(tree, Player::kParticipant);
  for (const Plan& c : cs) {
    for (const Plan& p : ps) {
      bool perfect = true;
      for (int i = 0; i < tree.num_nodes() && perfect; ++i) {
        const Player who = tree.mover(i);
        Plan dev = who == Player::kComputer ? c : p;
        const int j = tree.OwnIndex(i);
        dev.choices[j] = dev.choices[j] == Move::kExit ? Move::kContinue
                                                        : Move::kExit;
        const int stay = PlayFrom(tree, i, c, p).payoff.For(who);
        const int move = who == Player::kComputer
                             ? PlayFrom(tree, i, dev, p).payoff.For(who)
                             : PlayFrom(tree, i, c, dev).payoff.For(who);
        perfect = stay >= move;
      }
      if (perfect) leaves.insert(Play(tree, c, p).leaf);
    }
  }
  return {leaves.begin(), leaves.end()};
}

bool NodeWiseBiOptimal(const GameTree& tree, const Plan& plan) {
  for (int h : tree.NodesOf(plan.owner)) {
    const int exit_value = tree.leaf_payoff(h).For(plan.owner);
    std::vector<int> values;
    if (h + 1 == tree.num_nodes()) {
      values.push_back(tree.final_payoff().For(plan.owner));
    } else {
      const GameTree sub = Subgame(tree, h + 1);
      for (int leaf : BruteSpeOutcomes(sub)) {
        values.push_back(sub.leaf_payoff(leaf).For(plan.owner));
      }
    }
    const Move m = ChoiceAt(tree, plan, h);
    const bool ok = std::any_of(values.begin(), values.end(), [&](int v) {
      return m == Move::kExit ? exit_value >= v : v >= exit_value;
    });
    if (!ok) return false;
  }
  return true;
}

}  // namespace marbledrop::testing
