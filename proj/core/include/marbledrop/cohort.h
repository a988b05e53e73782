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


#ifndef MARBLEDROP_COHORT_H_
#define MARBLEDROP_COHORT_H_

#include <cstdint>
#include <vector>

#include "marbledrop/agents.h"
#include "marbledrop/event_log.h"
#include "marbledrop/session.h"

namespace marbledrop {

struct CohortConfig {
  std::uint64_t seed = 1;
  SessionConfig session;  // `session.seed` is replaced per participant
  int threads = 0;        // 0: one per hardware thread
};

struct SimulatedParticipant {
  int index = 0;
  std::string session_id;
  AgentProfile profile;
  Group group = Group::kA;
  std::uint64_t seed = 0;
  std::vector<Event> events;
};

// Runs one simulated participant through the whole protocol (practice,
// experiment, questions, questionnaires, payment) with a logical clock, so
// the log depends only on (profile, index, config).
SimulatedParticipant SimulateParticipant(const AgentProfile& profile,
                                         int index,
                                         const CohortConfig& config);

// Participants run in parallel; result order follows `profiles`. Groups are
// assigned by balanced blocks. Throws InvalidArgument on an empty list.
std::vector<SimulatedParticipant> SimulateCohort(
    const std::vector<AgentProfile>& profiles, const CohortConfig& config);

}  // namespace marbledrop

#endif  // MARBLEDROP_COHORT_H_
