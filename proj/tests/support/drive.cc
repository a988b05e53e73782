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


#include "drive.h"

#include "marbledrop/rng.h"

namespace marbledrop::testing {

std::vector<FinalAnswer> SampleFinalAnswers() {
  return {{'A', Side::kLeft, "bigger pile"},
          {'B', Side::kRight, "hoping it continues"},
          {'C', Side::kLeft, "safe"},
          {'D', Side::kRight, "computer wants more too"}};
}

bool Step(Session& s, Clock& clock, Rng& rng) {
  switch (s.awaiting()) {
    case Awaiting::kNext:
      s.Next(clock);
      return true;
    case Awaiting::kChoice: {
      const int node = *s.participant_node();
      const GameTree& tree = s.slots()[*s.active_game()].tree;
      const Move m = rng.Bernoulli(0.5) ? Move::kExit : Move::kContinue;
      s.Choose(node, tree.ActionLabel(node, m), clock);
      return true;
    }
    case Awaiting::kAnswer:
      s.Answer(s.pending_question()->id, rng.UniformInt(0, 2), clock);
      return true;
    case Awaiting::kFinal:
      s.SubmitFinal(static_cast<int>(s.finals().size()) + 1,
                    SampleFinalAnswers(), clock);
      return true;
    case Awaiting::kPayment:
      s.DrawPayment(std::nullopt, clock);
      return true;
    case Awaiting::kNothing:
      return false;
  }
  return false;
}

void PlayThrough(Session& session, Clock& clock, std::uint64_t seed) {
  Rng rng(seed);
  while (Step(session, clock, rng)) {
  }
}

}  // namespace marbledrop::testing
