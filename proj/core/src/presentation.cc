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

#include "marbledrop/presentation.h"

#include <algorithm>

#include "marbledrop/errors.h"
#include "marbledrop/rng.h"

namespace marbledrop {
namespace {

// All permutations of {0,1,2} in lexicographic order; index = layout id.
constexpr std::array<std::array<int, 3>, kNumBinLayouts> kBinPermutations = {{
    {0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};

int InversePermutationId(int id) {
  const auto& p = kBinPermutations.at(id);
  std::array<int, 3> inv{};
  for (int i = 0; i < 3; ++i) inv[p[i]] = i;
  for (int j = 0; j < kNumBinLayouts; ++j) {
    if (kBinPermutations[j] == inv) return j;
  }
  return 0;
}

}  // namespace

const char* SideName(Side s) { return s == Side::kLeft ? "left" : "right"; }

Layout CanonicalLayout(const GameTree& tree) {
  return Layout{std::vector<Side>(tree.num_nodes(), Side::kLeft), {0, 1, 2}};
}

Side PresentationMap::SideOf(int node, Move move) const {
  const Side exit_side = flipped.at(node) ? Side::kRight : Side::kLeft;
  return move == Move::kExit ? exit_side : OtherSide(exit_side);
}

Move PresentationMap::MoveAt(int node, Side side) const {
  return SideOf(node, Move::kExit) == side ? Move::kExit : Move::kContinue;
}

Layout PresentationMap::Apply(const Layout& layout) const {
  Layout out = layout;
  for (std::size_t i = 0; i < out.exit_side.size(); ++i) {
    if (flipped.at(i)) out.exit_side[i] = OtherSide(out.exit_side[i]);
  }
  const auto& perm = kBinPermutations.at(bin_layout);
  for (int i = 0; i < 3; ++i) out.bin_styles[i] = layout.bin_styles[perm[i]];
  return out;
}

PresentationMap PresentationMap::Inverse() const {
  return PresentationMap{flipped, InversePermutationId(bin_layout), round};
}

bool PresentationMap::IsIdentity() const {
  return bin_layout == 0 &&
         std::none_of(flipped.begin(), flipped.end(), [](bool b) { return b; });
}

PresentationMap PermutePresentation(const GameTree& tree, int round,
                                    std::uint64_t seed) {
  if (round < 1 || round > 8) {
    throw InvalidArgument("presentation round must be in 1..8");
  }
  const int n = tree.num_nodes();
  PresentationMap identity{std::vector<bool>(n, false), 0, 1};
  if (round == 1) return identity;

  // Replay the whole sequence so that rounds stay pairwise distinct.
  Rng rng(DeriveSeed(seed, HashBytes(SerializeTree(tree))));
  std::vector<PresentationMap> seen = {identity};
  PresentationMap current;
  for (int r = 2; r <= round; ++r) {
    do {
      current.flipped.assign(n, false);
      for (int i = 0; i < n; ++i) current.flipped[i] = rng.Bernoulli(0.5);
      current.bin_layout = static_cast<int>(rng.UniformInt(kNumBinLayouts));
      current.round = 1;
    } while (std::find(seen.begin(), seen.end(), current) != seen.end());
    seen.push_back(current);
  }
  current.round = round;
  return current;
}

}  // namespace marbledrop
