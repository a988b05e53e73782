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

#include "marbledrop/game_tree.h"

#include <algorithm>
#include <charconv>
#include <set>
#include <sstream>

#include "marbledrop/errors.h"

namespace marbledrop {

char PlayerChar(Player p) { return p == Player::kComputer ? 'C' : 'P'; }

std::optional<Player> ParsePlayer(std::string_view s) {
  if (s == "C") return Player::kComputer;
  if (s == "P") return Player::kParticipant;
  return std::nullopt;
}

GameTree::GameTree(std::string name, std::vector<DecisionNode> nodes,
                   Payoff final_payoff)
    : name_(std::move(name)),
      nodes_(std::move(nodes)),
      final_payoff_(final_payoff) {
  if (nodes_.empty()) throw InvalidArgument("game tree has no decision nodes");
  std::set<std::string> labels;
  auto check_payoff = [](const Payoff& p) {
    if (p.computer < 1 || p.participant < 1) {
      throw InvalidArgument("payoffs must be >= 1");
    }
  };
  int counts[2] = {0, 0};
  own_index_.reserve(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const DecisionNode& n = nodes_[i];
    if (i > 0 && n.mover == nodes_[i - 1].mover) {
      throw InvalidArgument("movers must alternate along the spine");
    }
    for (const std::string* label : {&n.exit_label, &n.continue_label}) {
      if (label->empty()) throw InvalidArgument("empty action label");
      if (!labels.insert(*label).second) {
        throw InvalidArgument("duplicate action label '" + *label + "'");
      }
    }
    check_payoff(n.exit_payoff);
    own_index_.push_back(counts[static_cast<int>(n.mover)]++);
  }
  check_payoff(final_payoff_);
}

Payoff GameTree::leaf_payoff(int leaf) const {
  if (leaf == num_nodes()) return final_payoff_;
  return nodes_.at(leaf).exit_payoff;
}

const std::string& GameTree::leaf_label(int leaf) const {
  if (leaf == num_nodes()) return nodes_.back().continue_label;
  return nodes_.at(leaf).exit_label;
}

std::optional<int> GameTree::LeafByLabel(std::string_view label) const {
  for (int leaf = 0; leaf < num_leaves(); ++leaf) {
    if (leaf_label(leaf) == label) return leaf;
  }
  return std::nullopt;
}

std::optional<std::pair<int, Move>> GameTree::FindAction(
    std::string_view label) const {
  for (int i = 0; i < num_nodes(); ++i) {
    if (nodes_[i].exit_label == label) return std::pair{i, Move::kExit};
    if (nodes_[i].continue_label == label) return std::pair{i, Move::kContinue};
  }
  return std::nullopt;
}

const std::string& GameTree::ActionLabel(int node, Move move) const {
  const DecisionNode& n = nodes_.at(node);
  return move == Move::kExit ? n.exit_label : n.continue_label;
}

std::vector<int> GameTree::NodesOf(Player p) const {
  std::vector<int> out;
  for (int i = 0; i < num_nodes(); ++i) {
    if (nodes_[i].mover == p) out.push_back(i);
  }
  return out;
}

int GameTree::NumNodesOf(Player p) const {
  return static_cast<int>(
      std::count_if(nodes_.begin(), nodes_.end(),
                    [p](const DecisionNode& n) { return n.mover == p; }));
}

int GameTree::OwnIndex(int node) const { return own_index_.at(node); }

GameTree GameTree::WithName(std::string name) const {
  return GameTree(std::move(name), nodes_, final_payoff_);
}

std::vector<Plan> AllPlans(const GameTree& tree, Player p) {
  const int k = tree.NumNodesOf(p);
  std::vector<Plan> plans;
  plans.reserve(std::size_t{1} << k);
  for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
    Plan plan{p, std::vector<Move>(k)};
    for (int j = 0; j < k; ++j) {
      plan.choices[j] = (mask >> (k - 1 - j)) & 1u ? Move::kContinue
                                                   : Move::kExit;
    }
    plans.push_back(std::move(plan));
  }
  SortPlans(tree, plans);
  return plans;
}

namespace {

void CheckPlan(const GameTree& tree, const Plan& plan, Player expected) {
  if (plan.owner != expected) {
    throw InvalidArgument(std::string("plan owner mismatch: expected ") +
                          PlayerChar(expected));
  }
  if (static_cast<int>(plan.choices.size()) != tree.NumNodesOf(expected)) {
    throw InvalidArgument(std::string("plan for ") + PlayerChar(expected) +
                          " does not cover every decision node");
  }
}

}  // namespace

Move ChoiceAt(const GameTree& tree, const Plan& plan, int node) {
  if (tree.mover(node) != plan.owner) {
    throw InvalidArgument("node is not owned by the plan's owner");
  }
  return plan.choices.at(tree.OwnIndex(node));
}

bool PlanReaches(const GameTree& tree, const Plan& plan, int node) {
  for (int i = 0; i < node; ++i) {
    if (tree.mover(i) == plan.owner && ChoiceAt(tree, plan, i) == Move::kExit) {
      return false;
    }
  }
  return true;
}

std::string RenderPlan(const GameTree& tree, const Plan& plan) {
  std::string out;
  for (int node : tree.NodesOf(plan.owner)) {
    if (!out.empty()) out += ';';
    out += tree.ActionLabel(node, ChoiceAt(tree, plan, node));
  }
  return out;
}

Plan ParsePlan(const GameTree& tree, Player owner, std::string_view text) {
  Plan plan{owner, {}};
  const std::vector<int> nodes = tree.NodesOf(owner);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < nodes.size(); ++k) {
    if (pos > text.size()) {
      throw InvalidArgument("bad plan '" + std::string(text) + "'");
    }
    std::size_t end = text.find(';', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view label = text.substr(pos, end - pos);
    const DecisionNode& n = tree.node(nodes[k]);
    if (label == n.exit_label) {
      plan.choices.push_back(Move::kExit);
    } else if (label == n.continue_label) {
      plan.choices.push_back(Move::kContinue);
    } else {
      throw InvalidArgument("bad plan '" + std::string(text) + "'");
    }
    pos = end + 1;
  }
  if (pos != text.size() + 1) {
    throw InvalidArgument("bad plan '" + std::string(text) + "'");
  }
  return plan;
}

void SortPlans(const GameTree& tree, std::vector<Plan>& plans) {
  std::sort(plans.begin(), plans.end(), [&](const Plan& a, const Plan& b) {
    return RenderPlan(tree, a) < RenderPlan(tree, b);
  });
  plans.erase(std::unique(plans.begin(), plans.end()), plans.end());
}

std::string RenderPlanSet(const GameTree& tree, std::span<const Plan> plans) {
  std::vector<std::string> parts;
  for (const Plan& p : plans) parts.push_back(RenderPlan(tree, p));
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  std::string out;
  for (const std::string& s : parts) {
    if (!out.empty()) out += ", ";
    out += s;
  }
  return out;
}

Outcome Play(const GameTree& tree, const Plan& computer,
             const Plan& participant) {
  return PlayFrom(tree, 0, computer, participant);
}

Outcome PlayFrom(const GameTree& tree, int start, const Plan& computer,
                 const Plan& participant) {
  CheckPlan(tree, computer, Player::kComputer);
  CheckPlan(tree, participant, Player::kParticipant);
  Outcome out;
  for (int i = start; i < tree.num_nodes(); ++i) {
    const Plan& plan =
        tree.mover(i) == Player::kComputer ? computer : participant;
    const Move m = plan.choices[tree.OwnIndex(i)];
    out.path.push_back(tree.ActionLabel(i, m));
    if (m == Move::kExit) {
      out.leaf = i;
      out.payoff = tree.leaf_payoff(i);
      return out;
    }
  }
  out.leaf = tree.num_nodes();
  out.payoff = tree.final_payoff();
  return out;
}

int LeafFrom(const GameTree& tree, int start, std::span<const Move> per_node) {
  for (int i = start; i < tree.num_nodes(); ++i) {
    if (per_node[i] == Move::kExit) return i;
  }
  return tree.num_nodes();
}

GameTree Truncate(const GameTree& tree, std::optional<std::string> name) {
  if (tree.num_nodes() < 2) {
    throw InvalidArgument("cannot truncate a single-node tree");
  }
  std::vector<DecisionNode> nodes(tree.nodes().begin() + 1, tree.nodes().end());
  return GameTree(name.value_or(tree.name() + "t"), std::move(nodes),
                  tree.final_payoff());
}

GameTree Subgame(const GameTree& tree, int node) {
  if (node < 0 || node >= tree.num_nodes()) {
    throw InvalidArgument("subgame root out of range");
  }
  std::vector<DecisionNode> nodes(tree.nodes().begin() + node,
                                  tree.nodes().end());
  return GameTree(tree.name(), std::move(nodes), tree.final_payoff());
}

namespace {

std::string PayoffText(const Payoff& p) {
  return "(" + std::to_string(p.computer) + "," + std::to_string(p.participant) +
         ")";
}

std::vector<std::string_view> SplitWords(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

int ParseInt(std::string_view s, int line) {
  int v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw ParseError("expected integer, got '" + std::string(s) + "'", line);
  }
  return v;
}

// "<key>=<value>"
std::string_view Field(std::string_view word, std::string_view key, int line) {
  if (word.size() <= key.size() || word.substr(0, key.size()) != key ||
      word[key.size()] != '=') {
    throw ParseError("expected '" + std::string(key) + "=...', got '" +
                         std::string(word) + "'",
                     line);
  }
  return word.substr(key.size() + 1);
}

// "<label>:(<c>,<p>)"
std::pair<std::string, Payoff> LabelledPayoff(std::string_view s, int line) {
  const std::size_t colon = s.find(':');
  if (colon == std::string_view::npos || colon == 0 || s.size() < colon + 6 ||
      s[colon + 1] != '(' || s.back() != ')') {
    throw ParseError("expected <label>:(<payC>,<payP>), got '" +
                         std::string(s) + "'",
                     line);
  }
  std::string_view inner = s.substr(colon + 2, s.size() - colon - 3);
  const std::size_t comma = inner.find(',');
  if (comma == std::string_view::npos) {
    throw ParseError("missing ',' in payoff '" + std::string(s) + "'", line);
  }
  Payoff p{ParseInt(inner.substr(0, comma), line),
           ParseInt(inner.substr(comma + 1), line)};
  return {std::string(s.substr(0, colon)), p};
}

}  // namespace

std::string SerializeTree(const GameTree& tree) {
  std::ostringstream out;
  const int n = tree.num_nodes();
  for (int i = 0; i < n; ++i) {
    const DecisionNode& node = tree.node(i);
    if (i + 1 < n) {
      out << "node " << (i + 1) << " mover=" << PlayerChar(node.mover)
          << " exit=" << node.exit_label << ':' << PayoffText(node.exit_payoff)
          << " cont=" << node.continue_label << '\n';
    } else {
      out << "last " << (i + 1) << " mover=" << PlayerChar(node.mover)
          << " left=" << node.exit_label << ':' << PayoffText(node.exit_payoff)
          << " right=" << node.continue_label << ':'
          << PayoffText(tree.final_payoff()) << '\n';
    }
  }
  return out.str();
}

GameTree ParseTree(std::string_view text, std::string name) {
  std::vector<DecisionNode> nodes;
  std::optional<Payoff> final_payoff;
  int line_no = 0;
  int last_line = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      throw ParseError("CR line endings are not accepted", line_no);
    }
    const std::vector<std::string_view> words = SplitWords(line);
    if (words.empty() || words[0].front() == '#') {
      if (end == text.size()) break;
      continue;
    }
    if (final_payoff) {
      throw ParseError("content after the 'last' line", line_no);
    }
    const bool is_last = words[0] == "last";
    if (!is_last && words[0] != "node") {
      throw ParseError("expected 'node' or 'last', got '" +
                           std::string(words[0]) + "'",
                       line_no);
    }
    if (words.size() != 5) {
      throw ParseError("expected 5 fields, got " + std::to_string(words.size()),
                       line_no);
    }
    if (ParseInt(words[1], line_no) != static_cast<int>(nodes.size()) + 1) {
      throw ParseError("node ids must be consecutive from 1", line_no);
    }
    const std::optional<Player> mover =
        ParsePlayer(Field(words[2], "mover", line_no));
    if (!mover) throw ParseError("mover must be C or P", line_no);
    DecisionNode node;
    node.mover = *mover;
    if (is_last) {
      auto [left, left_pay] = LabelledPayoff(Field(words[3], "left", line_no),
                                             line_no);
      auto [right, right_pay] =
          LabelledPayoff(Field(words[4], "right", line_no), line_no);
      node.exit_label = std::move(left);
      node.exit_payoff = left_pay;
      node.continue_label = std::move(right);
      final_payoff = right_pay;
      last_line = line_no;
    } else {
      auto [exit, exit_pay] =
          LabelledPayoff(Field(words[3], "exit", line_no), line_no);
      node.exit_label = std::move(exit);
      node.exit_payoff = exit_pay;
      node.continue_label = std::string(Field(words[4], "cont", line_no));
    }
    nodes.push_back(std::move(node));
    if (end == text.size()) break;
  }
  if (!final_payoff) throw ParseError("missing 'last' line", line_no);
  try {
    return GameTree(std::move(name), std::move(nodes), *final_payoff);
  } catch (const InvalidArgument& e) {
    throw ParseError(e.what(), last_line);
  }
}

}  // namespace marbledrop
