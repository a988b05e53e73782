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

#ifndef MARBLEDROP_CATALOG_H_
#define MARBLEDROP_CATALOG_H_

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "marbledrop/game_tree.h"

namespace marbledrop {

// The six experimental games. G1t and G3t are the truncations.
enum class GameId { kG1 = 0, kG2, kG3, kG4, kG1t, kG3t };

inline constexpr std::array<GameId, 6> kAllGames = {
    GameId::kG1, GameId::kG2, GameId::kG3, GameId::kG4, GameId::kG1t,
    GameId::kG3t};
inline constexpr std::array<GameId, 4> kComputerFirstGames = {
    GameId::kG1, GameId::kG2, GameId::kG3, GameId::kG4};

// "G1", "G2", "G3", "G4", "G1t", "G3t".
std::string_view GameName(GameId id);
// "Game 1", ..., "Game 1'", "Game 3'".
std::string_view GameTitle(GameId id);
// Accepts the short names, "1".."4", "1'"/"3'" and "G1'"/"G3'".
std::optional<GameId> ParseGameId(std::string_view s);

bool IsTruncated(GameId id);

// Six trees in kAllGames order, each named by GameName().
std::vector<GameTree> BuildCatalog();
const GameTree& CatalogGame(GameId id);

}  // namespace marbledrop

#endif  // MARBLEDROP_CATALOG_H_
