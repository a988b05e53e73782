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


#ifndef MARBLEDROP_PRACTICE_H_
#define MARBLEDROP_PRACTICE_H_

#include <array>
#include <cstdint>
#include <vector>

#include "marbledrop/game_tree.h"

namespace marbledrop {

inline constexpr int kNumPracticeGames = 14;
inline constexpr std::uint64_t kDefaultPracticeSeed = 0x5eed'0014ULL;

// Number of decision nodes of each practice game, easiest first.
inline constexpr std::array<int, kNumPracticeGames> kPracticeDepths = {
    1, 1, 1, 2, 2, 2, 3, 3, 3, 3, 4, 4, 4, 4};

// Spine game with `depth` nodes whose last mover is the participant and
// whose leaf payoffs are distinct per player, drawn from 1..6.
GameTree RandomPracticeGame(int depth, std::uint64_t seed,
                            std::string name = "practice");

// The practice ladder, named "practice-01" .. "practice-14".
std::vector<GameTree> PracticeGames(
    std::uint64_t seed = kDefaultPracticeSeed);

}  // namespace marbledrop

#endif  // MARBLEDROP_PRACTICE_H_
