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

#include "marbledrop/agents.h"
#include "marbledrop/choices.h"
#include "marbledrop/cohort.h"
#include "marbledrop/event_log.h"
#include "marbledrop/session.h"

namespace marbledrop {
namespace {

void BM_SimulateParticipant(benchmark::State& state) {
  AgentProfile profile;
  profile.kind = AgentKind::kRiskTom;
  profile.tom_level = 2;
  CohortConfig config;
  int index = 0;
  for (auto _ : state) {
    benchmark::DoNotOptimize(SimulateParticipant(profile, index++, config));
  }
}
BENCHMARK(BM_SimulateParticipant)->Unit(benchmark::kMillisecond);

void BM_ReplaySession(benchmark::State& state) {
  AgentProfile profile;
  profile.kind = AgentKind::kEfr;
  const std::vector<Event> events =
      SimulateParticipant(profile, 0, CohortConfig{}).events;
  for (auto _ : state) benchmark::DoNotOptimize(Session::Replay(events));
  state.counters["events"] = static_cast<double>(events.size());
}
BENCHMARK(BM_ReplaySession)->Unit(benchmark::kMillisecond);

void BM_SimulateCohortAndAggregate(benchmark::State& state) {
  std::vector<AgentProfile> profiles(25, AgentProfile{.kind = AgentKind::kEfr});
  AgentProfile tom;
  tom.kind = AgentKind::kRiskTom;
  tom.tom_level = 2;
  profiles.insert(profiles.end(), 25, tom);
  CohortConfig config;
  config.threads = 1;
  for (auto _ : state) {
    std::vector<std::vector<Event>> logs;
    for (auto& p : SimulateCohort(profiles, config)) logs.push_back(std::move(p.events));
    benchmark::DoNotOptimize(AggregateFirstChoice(ExtractChoices(logs)));
  }
}
BENCHMARK(BM_SimulateCohortAndAggregate)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace marbledrop
