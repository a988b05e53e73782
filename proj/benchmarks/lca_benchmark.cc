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

#include <vector>

#include "marbledrop/lca.h"
#include "marbledrop/rng.h"

namespace marbledrop {
namespace {

// Three classes over four binary item groups, eight items per group.
LcaData ThreeClassData(int participants, std::uint64_t seed) {
  constexpr double kStop[3][2] = {{0.15, 0.85}, {0.15, 0.15}, {0.85, 0.85}};
  constexpr double kShare[3] = {0.46, 0.34, 0.20};
  Rng rng(seed);
  std::vector<std::vector<int>> rows;
  std::vector<int> item_group;
  for (int g = 0; g < 4; ++g) {
    for (int k = 0; k < 8; ++k) item_group.push_back(g);
  }
  for (int i = 0; i < participants; ++i) {
    const double u = rng.Uniform01();
    const int c = u < kShare[0] ? 0 : u < kShare[0] + kShare[1] ? 1 : 2;
    std::vector<int> row;
    for (int g : item_group) row.push_back(rng.Bernoulli(kStop[c][g % 2]) ? 1 : 0);
    rows.push_back(std::move(row));
  }
  return LcaData::FromBinary(rows, item_group,
                             {"G3.first", "G3.second", "G4.first", "G4.second"});
}

void BM_LcaFit(benchmark::State& state) {
  const LcaData data = ThreeClassData(static_cast<int>(state.range(0)), 3);
  LcaOptions options;
  options.n_classes = 3;
  for (auto _ : state) benchmark::DoNotOptimize(LcaFit(data, options));
}
BENCHMARK(BM_LcaFit)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_BicSelect(benchmark::State& state) {
  const LcaData data = ThreeClassData(50, 5);
  for (auto _ : state) benchmark::DoNotOptimize(BicSelect(data, 4, 1));
}
BENCHMARK(BM_BicSelect)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace marbledrop
