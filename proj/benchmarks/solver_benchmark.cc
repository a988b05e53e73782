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


#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "marbledrop/belief.h"
#include "marbledrop/catalog.h"
#include "marbledrop/rng.h"
#include "marbledrop/solvers.h"

namespace marbledrop {
namespace {

// Alternating spine with payoffs 1..6 drawn from a fixed seed.
GameTree SpineTree(int nodes, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<DecisionNode> spine;
  for (int i = 0; i < nodes; ++i) {
    DecisionNode n;
    n.mover = i % 2 == 0 ? Player::kComputer : Player::kParticipant;
    n.exit_label = std::string(1, static_cast<char>('a' + 2 * i));
    n.continue_label = std::string(1, static_cast<char>('b' + 2 * i));
    n.exit_payoff = Payoff{rng.UniformInt(1, 6), rng.UniformInt(1, 6)};
    spine.push_back(n);
  }
  return GameTree("spine" + std::to_string(nodes), std::move(spine),
                  Payoff{rng.UniformInt(1, 6), rng.UniformInt(1, 6)});
}

void BM_SolveCatalog(benchmark::State& state) {
  const std::vector<GameTree> catalog = BuildCatalog();
  for (auto _ : state) {
    for (const GameTree& t : catalog) benchmark::DoNotOptimize(Solve(t));
  }
}
BENCHMARK(BM_SolveCatalog)->Unit(benchmark::kMillisecond);

void BM_BackwardInduction(benchmark::State& state) {
  const GameTree t = SpineTree(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(BackwardInduction(t));
}
BENCHMARK(BM_BackwardInduction)->Arg(4)->Arg(8)->Arg(12);

void BM_Efr(benchmark::State& state) {
  const GameTree t = SpineTree(static_cast<int>(state.range(0)), 7);
  for (auto _ : state) benchmark::DoNotOptimize(Efr(t));
}
BENCHMARK(BM_Efr)->Arg(4)->Arg(8)->Arg(12)->Unit(benchmark::kMillisecond);

void BM_BestResponseUniform(benchmark::State& state) {
  const GameTree t = SpineTree(12, 11);
  const Belief b = Belief::Uniform(AllPlans(t, Player::kParticipant));
  for (auto _ : state) {
    benchmark::DoNotOptimize(BestResponse(t, Player::kComputer, b));
  }
}
BENCHMARK(BM_BestResponseUniform)->Unit(benchmark::kMicrosecond);

}  // namespace
}  // namespace marbledrop
