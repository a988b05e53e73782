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


#include "marbledrop/choices.h"

#include "marbledrop/errors.h"

namespace marbledrop {

std::pair<int, int> ChoicePattern::Count(GameId game, int decision) const {
  int stops = 0, n = 0;
  for (const Decision& d : decisions) {
    if (d.game == game && d.decision == decision) {
      ++n;
      stops += d.stop ? 1 : 0;
    }
  }
  return {stops, n};
}

ChoicePattern ExtractChoices(const std::vector<Event>& log) {
  if (log.empty() || log.front().kind != EventKind::kSessionCreated) {
    throw ParseError("log does not start with session_created", 0);
  }
  ChoicePattern out;
  try {
    const Json& created = log.front().payload;
    out.participant = created.at("session").get<std::string>();
    out.label = created.at("label").get<std::string>();
    const std::optional<Group> group =
        ParseGroup(created.at("group").get<std::string>());
    if (!group) throw ParseError("unknown group", 0);
    out.group = *group;

    // Pointer rather than optional<GameId>: GCC 11 misreports the latter.
    const GameTree* tree = nullptr;
    GameId game{};
    int round = 0;
    for (const Event& e : log) {
      if (e.kind == EventKind::kGameStarted) {
        tree = nullptr;
        if (e.payload.at("practice").get<bool>()) continue;
        const std::string name = e.payload.at("game").get<std::string>();
        const std::optional<GameId> id = ParseGameId(name);
        if (!id) throw ParseError("unknown game '" + name + "'", 0);
        game = *id;
        tree = &CatalogGame(game);
        round = e.payload.at("round").get<int>();
      } else if (e.kind == EventKind::kParticipantMove && tree) {
        const auto action =
            tree->FindAction(e.payload.at("action").get<std::string>());
        if (!action) throw ParseError("unknown action in log", 0);
        out.decisions.push_back(Decision{game, round,
                                         tree->OwnIndex(action->first) + 1,
                                         action->second == Move::kExit});
      }
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed log payload: ") + e.what(), 0);
  }
  return out;
}

std::vector<ChoicePattern> ExtractChoices(
    const std::vector<std::vector<Event>>& logs) {
  std::vector<ChoicePattern> out;
  for (const std::vector<Event>& log : logs) out.push_back(ExtractChoices(log));
  return out;
}

const Proportion& FirstChoiceSummary::For(GameId g) const {
  for (const Proportion& p : games) {
    if (p.game == g) return p;
  }
  throw NotFound("no proportion for game");
}

FirstChoiceSummary AggregateFirstChoice(
    const std::vector<ChoicePattern>& cohort) {
  if (cohort.empty()) throw InvalidArgument("no participants to aggregate");
  FirstChoiceSummary s;
  for (GameId g : kAllGames) {
    Proportion p;
    p.game = g;
    for (const ChoicePattern& c : cohort) {
      const auto [stops, n] = c.Count(g, 1);
      s.participants[c.participant][g] = {stops, n};
      p.stops += stops;
      p.reached += n;
    }
    if (p.reached > 0) {
      p.rate = static_cast<double>(p.stops) / p.reached;
    }
    s.games.push_back(p);
  }
  return s;
}

SomewhatMore SomewhatMoreCounts(const std::vector<ChoicePattern>& cohort,
                                GameId x, GameId y) {
  SomewhatMore out;
  for (const ChoicePattern& c : cohort) {
    const int diff = c.Count(y, 1).first - c.Count(x, 1).first;
    if (diff > 1) {
      ++out.more;
    } else if (diff < -1) {
      ++out.fewer;
    } else {
      ++out.similar;
    }
  }
  return out;
}

}  // namespace marbledrop
