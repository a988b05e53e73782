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

#include "marbledrop/catalog.h"

#include "marbledrop/errors.h"

namespace marbledrop {
namespace {

// Computer-first spine shared by G1..G4. `a_payoff_c` is C's marbles when it
// exits at its first node, `h_payoff_p` is P's marbles at the final leaf.
GameTree MainGame(std::string name, int a_payoff_c, int h_payoff_p) {
  using P = Player;
  std::vector<DecisionNode> nodes = {
      {P::kComputer, "a", "b", {a_payoff_c, 1}},
      {P::kParticipant, "c", "d", {1, 2}},
      {P::kComputer, "e", "f", {3, 1}},
      {P::kParticipant, "g", "h", {1, 4}},
  };
  return GameTree(std::move(name), std::move(nodes), {6, h_payoff_p});
}

}  // namespace

std::string_view GameName(GameId id) {
  switch (id) {
    case GameId::kG1: return "G1";
    case GameId::kG2: return "G2";
    case GameId::kG3: return "G3";
    case GameId::kG4: return "G4";
    case GameId::kG1t: return "G1t";
    case GameId::kG3t: return "G3t";
  }
  return "?";
}

std::string_view GameTitle(GameId id) {
  switch (id) {
    case GameId::kG1: return "Game 1";
    case GameId::kG2: return "Game 2";
    case GameId::kG3: return "Game 3";
    case GameId::kG4: return "Game 4";
    case GameId::kG1t: return "Game 1'";
    case GameId::kG3t: return "Game 3'";
  }
  return "?";
}

std::optional<GameId> ParseGameId(std::string_view s) {
  if (!s.empty() && (s.front() == 'G' || s.front() == 'g')) s.remove_prefix(1);
  if (s == "1") return GameId::kG1;
  if (s == "2") return GameId::kG2;
  if (s == "3") return GameId::kG3;
  if (s == "4") return GameId::kG4;
  if (s == "1t" || s == "1'") return GameId::kG1t;
  if (s == "3t" || s == "3'") return GameId::kG3t;
  return std::nullopt;
}

bool IsTruncated(GameId id) {
  return id == GameId::kG1t || id == GameId::kG3t;
}

std::vector<GameTree> BuildCatalog() {
  GameTree g1 = MainGame("G1", 4, 3);
  GameTree g2 = MainGame("G2", 2, 3);
  GameTree g3 = MainGame("G3", 4, 4);
  GameTree g4 = MainGame("G4", 2, 4);
  GameTree g1t = Truncate(g1, "G1t");
  GameTree g3t = Truncate(g3, "G3t");
  return {std::move(g1), std::move(g2), std::move(g3),
          std::move(g4), std::move(g1t), std::move(g3t)};
}

const GameTree& CatalogGame(GameId id) {
  static const std::vector<GameTree> catalog = BuildCatalog();
  return catalog.at(static_cast<std::size_t>(id));
}

}  // namespace marbledrop
