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

#ifndef MARBLEDROP_GAME_TREE_H_
#define MARBLEDROP_GAME_TREE_H_

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace marbledrop {

enum class Player : std::uint8_t { kComputer = 0, kParticipant = 1 };

inline constexpr Player Other(Player p) {
  return p == Player::kComputer ? Player::kParticipant : Player::kComputer;
}
char PlayerChar(Player p);
std::optional<Player> ParsePlayer(std::string_view s);

// At every decision node of a spine tree the mover either exits (ending the
// game at that node's exit leaf) or continues to the next node.
enum class Move : std::uint8_t { kExit = 0, kContinue = 1 };

// Marbles for each side at a leaf.
struct Payoff {
  int computer = 0;
  int participant = 0;

  int For(Player p) const {
    return p == Player::kComputer ? computer : participant;
  }
  friend bool operator==(const Payoff&, const Payoff&) = default;
};

struct DecisionNode {
  Player mover = Player::kComputer;
  std::string exit_label;
  std::string continue_label;
  // Payoff at the exit leaf of this node.
  Payoff exit_payoff;

  friend bool operator==(const DecisionNode&, const DecisionNode&) = default;
};

// A two-player perfect-information "centipede spine": node i has an exit
// leaf and a continuation to node i+1; the last node's continuation is the
// final leaf. Leaves are indexed 0..num_nodes(): leaf i < num_nodes() is the
// exit leaf of node i and leaf num_nodes() is the final leaf.
//
// Immutable after construction.
class GameTree {
 public:
  // Throws InvalidArgument unless: at least one node, movers alternate,
  // labels are non-empty and unique, every payoff is >= 1.
  GameTree(std::string name, std::vector<DecisionNode> nodes,
           Payoff final_payoff);

  const std::string& name() const { return name_; }
  int num_nodes() const { return static_cast<int>(nodes_.size()); }
  int num_leaves() const { return num_nodes() + 1; }
  const DecisionNode& node(int i) const { return nodes_.at(i); }
  std::span<const DecisionNode> nodes() const { return nodes_; }
  const Payoff& final_payoff() const { return final_payoff_; }

  Player mover(int node) const { return nodes_.at(node).mover; }
  Payoff leaf_payoff(int leaf) const;
  // The label of the action that ends the game at `leaf` (a, c, e, g, h...).
  const std::string& leaf_label(int leaf) const;
  std::optional<int> LeafByLabel(std::string_view label) const;
  // Node index and move for an action label.
  std::optional<std::pair<int, Move>> FindAction(std::string_view label) const;
  const std::string& ActionLabel(int node, Move move) const;

  // Decision nodes owned by `p`, in tree order.
  std::vector<int> NodesOf(Player p) const;
  int NumNodesOf(Player p) const;
  // Position of `node` among the nodes of its mover.
  int OwnIndex(int node) const;

  GameTree WithName(std::string name) const;

  // Equality is structural; the name is ignored.
  friend bool operator==(const GameTree& a, const GameTree& b) {
    return a.nodes_ == b.nodes_ && a.final_payoff_ == b.final_payoff_;
  }

 private:
  std::string name_;
  std::vector<DecisionNode> nodes_;
  Payoff final_payoff_;
  std::vector<int> own_index_;
};

// A full strategy: one move per decision node of `owner`, reachable or not.
// choices[k] is the move at the k-th node owned by `owner`.
struct Plan {
  Player owner = Player::kComputer;
  std::vector<Move> choices;

  friend auto operator<=>(const Plan&, const Plan&) = default;
  friend bool operator==(const Plan&, const Plan&) = default;
};

// All 2^k plans of `p`, ordered by their rendering (see RenderPlan).
std::vector<Plan> AllPlans(const GameTree& tree, Player p);

// Move prescribed by `plan` at `node`; node must be owned by plan.owner.
Move ChoiceAt(const GameTree& tree, const Plan& plan, int node);

// True iff the plan continues at all of its nodes before `node`, i.e. the
// owner does not itself end the game before `node` is reached.
bool PlanReaches(const GameTree& tree, const Plan& plan, int node);

// "a;e" notation: the owner's action labels joined with ';'.
std::string RenderPlan(const GameTree& tree, const Plan& plan);
// Inverse of RenderPlan. Throws InvalidArgument.
Plan ParsePlan(const GameTree& tree, Player owner, std::string_view text);

// Sorts by rendering and removes duplicates.
void SortPlans(const GameTree& tree, std::vector<Plan>& plans);
// Sorted, ", "-joined renderings.
std::string RenderPlanSet(const GameTree& tree, std::span<const Plan> plans);

struct Outcome {
  int leaf = 0;
  Payoff payoff;
  // Action labels from the starting node to the leaf.
  std::vector<std::string> path;

  friend bool operator==(const Outcome&, const Outcome&) = default;
};

// Plays both plans from the root. Throws InvalidArgument when the owners are
// wrong or a plan does not cover every node of its owner.
Outcome Play(const GameTree& tree, const Plan& computer,
             const Plan& participant);

// Plays from `start` as if it had been reached; earlier choices are ignored.
Outcome PlayFrom(const GameTree& tree, int start, const Plan& computer,
                 const Plan& participant);

// Leaf reached from `start` when moves are given per node (size num_nodes()).
int LeafFrom(const GameTree& tree, int start, std::span<const Move> per_node);

// Removes the root node and its exit leaf. Throws InvalidArgument for a
// single-node tree. The result is named `name` or, by default, name + "t".
GameTree Truncate(const GameTree& tree,
                  std::optional<std::string> name = std::nullopt);

// Subgame rooted at `node` (Truncate applied `node` times).
GameTree Subgame(const GameTree& tree, int node);

// Canonical text format, one line per node:
//   node <id> mover=<C|P> exit=<label>:(<payC>,<payP>) cont=<label>
//   last <id> mover=<C|P> left=<label>:(<payC>,<payP>) right=<label>:(<payC>,<payP>)
// Node ids are 1-based. The serializer emits LF line endings.
std::string SerializeTree(const GameTree& tree);
// Accepts blank lines and '#' comments. Throws ParseError with a line number.
GameTree ParseTree(std::string_view text, std::string name = "custom");

}  // namespace marbledrop

#endif  // MARBLEDROP_GAME_TREE_H_
