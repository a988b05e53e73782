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


#ifndef MARBLEDROP_CHOICES_H_
#define MARBLEDROP_CHOICES_H_

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "marbledrop/catalog.h"
#include "marbledrop/event_log.h"
#include "marbledrop/session.h"

namespace marbledrop {

// One participant decision in an experiment game.
struct Decision {
  GameId game = GameId::kG1;
  int round = 0;
  int decision = 1;   // 1: first participant node (c/d), 2: second (g/h)
  bool stop = false;  // exit (c or g)
  friend bool operator==(const Decision&, const Decision&) = default;
};

// Experiment-phase choices of one participant. Only reached nodes appear.
struct ChoicePattern {
  std::string participant;  // session id
  std::string label;
  Group group = Group::kA;
  std::vector<Decision> decisions;

  // Stops and observations at `decision` of `game`.
  std::pair<int, int> Count(GameId game, int decision) const;
};

// Throws ParseError when a log does not start with session_created or
// names a game outside the catalog in the experiment phase.
ChoicePattern ExtractChoices(const std::vector<Event>& log);
std::vector<ChoicePattern> ExtractChoices(
    const std::vector<std::vector<Event>>& logs);

struct Proportion {
  GameId game = GameId::kG1;
  int stops = 0;
  int reached = 0;
  std::optional<double> rate;  // nullopt when nothing was reached
};

struct FirstChoiceSummary {
  std::vector<Proportion> games;  // catalog order
  // participant -> game -> (stops, reached)
  std::map<std::string, std::map<GameId, std::pair<int, int>>> participants;

  const Proportion& For(GameId g) const;
};

// Rates of c at the participant's first node. Throws InvalidArgument on an
// empty cohort.
FirstChoiceSummary AggregateFirstChoice(
    const std::vector<ChoicePattern>& cohort);

struct SomewhatMore {
  int more = 0;     // count(c, y) - count(c, x) > 1
  int fewer = 0;    // < -1
  int similar = 0;  // otherwise
  friend bool operator==(const SomewhatMore&, const SomewhatMore&) = default;
};

SomewhatMore SomewhatMoreCounts(const std::vector<ChoicePattern>& cohort,
                                GameId x, GameId y);

}  // namespace marbledrop

#endif  // MARBLEDROP_CHOICES_H_
