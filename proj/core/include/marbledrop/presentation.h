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

#ifndef MARBLEDROP_PRESENTATION_H_
#define MARBLEDROP_PRESENTATION_H_

#include <array>
#include <cstdint>
#include <vector>

#include "marbledrop/game_tree.h"

namespace marbledrop {

enum class Side : std::uint8_t { kLeft = 0, kRight = 1 };

inline constexpr Side OtherSide(Side s) {
  return s == Side::kLeft ? Side::kRight : Side::kLeft;
}
const char* SideName(Side s);

inline constexpr int kNumBinLayouts = 6;

// What the participant sees: per node, which trapdoor leads out, plus a
// permutation of the three cosmetic bin styles. The canonical layout puts
// every exit on the left and bin styles in order {0, 1, 2}.
struct Layout {
  std::vector<Side> exit_side;
  std::array<int, 3> bin_styles = {0, 1, 2};

  friend bool operator==(const Layout&, const Layout&) = default;
};

Layout CanonicalLayout(const GameTree& tree);

// Orientation changes for one round. The underlying tree is untouched.
struct PresentationMap {
  std::vector<bool> flipped;  // per node: exit shown on the right
  int bin_layout = 0;         // index of a permutation of 3 bin styles
  int round = 1;

  Side SideOf(int node, Move move) const;
  Move MoveAt(int node, Side side) const;
  Layout Apply(const Layout& layout) const;
  PresentationMap Inverse() const;
  bool IsIdentity() const;

  friend bool operator==(const PresentationMap&,
                         const PresentationMap&) = default;
};

// Deterministic in (tree, round, seed). Round 1 is the identity; rounds 2..8
// are non-identity and pairwise distinct for the same (tree, seed).
// Throws InvalidArgument for rounds outside 1..8.
PresentationMap PermutePresentation(const GameTree& tree, int round,
                                    std::uint64_t seed);

}  // namespace marbledrop

#endif  // MARBLEDROP_PRESENTATION_H_
