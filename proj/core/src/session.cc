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


#include "marbledrop/session.h"

#include <fmt/format.h>

#include <algorithm>
#include <cctype>
#include <span>

#include "marbledrop/errors.h"
#include "marbledrop/rng.h"

namespace marbledrop {
namespace {

const char* MoveLabel(const GameTree& tree, int node, Move m) {
  return tree.ActionLabel(node, m).c_str();
}

Json MapToJson(const PresentationMap& map) {
  Json j;
  Json flipped = Json::array();
  for (bool f : map.flipped) flipped.push_back(f);
  j["flipped"] = flipped;
  j["bin_layout"] = map.bin_layout;
  j["round"] = map.round;
  return j;
}

Json PayoffJson(const Payoff& p) {
  Json j;
  j["computer"] = p.computer;
  j["participant"] = p.participant;
  return j;
}

Json TreeToJson(const GameTree& tree) {
  Json nodes = Json::array();
  for (int i = 0; i < tree.num_nodes(); ++i) {
    const DecisionNode& n = tree.node(i);
    Json node;
    node["node"] = i;
    node["mover"] = std::string(1, PlayerChar(n.mover));
    node["exit"] = {{"label", n.exit_label}, {"payoff", PayoffJson(n.exit_payoff)}};
    node["continue"] = {{"label", n.continue_label}};
    nodes.push_back(node);
  }
  Json j;
  j["nodes"] = nodes;
  j["final_payoff"] = PayoffJson(tree.final_payoff());
  return j;
}

std::string Euros(int cents) {
  return fmt::format("{}.{:02d}", cents / 100, cents % 100);
}

void ExpectKeys(const Json& p, std::initializer_list<const char*> keys) {
  if (!p.is_object() || p.size() != keys.size()) {
    throw ProtocolError("payload has unexpected fields");
  }
  for (const char* k : keys) {
    if (!p.contains(k)) throw ProtocolError(std::string("payload lacks ") + k);
  }
}

bool Blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::isspace(c) != 0;
  });
}

}  // namespace

std::string_view GroupName(Group g) { return g == Group::kA ? "A" : "B"; }

std::optional<Group> ParseGroup(std::string_view s) {
  if (s == "A") return Group::kA;
  if (s == "B") return Group::kB;
  return std::nullopt;
}

Group AssignGroup(std::uint64_t seed, int participant_index) {
  if (participant_index < 0) throw InvalidArgument("negative participant index");
  Rng rng(DeriveSeed(seed, "group-block", participant_index / 2));
  const bool a_first = rng.Bernoulli(0.5);
  const bool first = participant_index % 2 == 0;
  return first == a_first ? Group::kA : Group::kB;
}

std::string_view PhaseName(Phase p) {
  switch (p) {
    case Phase::kPractice: return "practice";
    case Phase::kExperiment: return "experiment";
    case Phase::kBreak: return "break";
    case Phase::kFinalQuestions: return "final_questions";
    case Phase::kPayment: return "payment";
    case Phase::kDone: return "done";
  }
  return "?";
}

std::string_view AwaitingName(Awaiting a) {
  switch (a) {
    case Awaiting::kNext: return "next";
    case Awaiting::kChoice: return "choice";
    case Awaiting::kAnswer: return "answer";
    case Awaiting::kFinal: return "final";
    case Awaiting::kPayment: return "payment";
    case Awaiting::kNothing: return "nothing";
  }
  return "?";
}

std::string_view QuestionKindName(QuestionKind k) {
  return k == QuestionKind::kGroupA ? "A-at-node" : "B-post-game";
}

const std::vector<std::string>& QuestionOptions() {
  static const std::vector<std::string> options = {
      "I think the computer would most likely open the left side",
      "I think the computer would most likely open the right side",
      "Both answers seem equally likely"};
  return options;
}

void SessionConfig::Validate() const {
  for (int r : question_rounds) {
    if (r < 1 || r > kRoundsPerSession) {
      throw InvalidArgument("question rounds must be in 1..8");
    }
  }
  const double w = opponent.second_node_exit_weight;
  if (!(w >= 0.0 && w <= 1.0)) {
    throw InvalidArgument("opponent mixture weight must be in [0, 1]");
  }
}

Json SessionConfig::ToJson() const {
  Json j;
  j["seed"] = seed;
  j["question_rounds"] = question_rounds;
  j["second_node_exit_weight"] = opponent.second_node_exit_weight;
  j["practice_seed"] = practice_seed;
  return j;
}

SessionConfig SessionConfig::FromJson(const Json& j) {
  SessionConfig c;
  try {
    ExpectKeys(j, {"seed", "question_rounds", "second_node_exit_weight",
                   "practice_seed"});
    c.seed = j.at("seed").get<std::uint64_t>();
    c.question_rounds = j.at("question_rounds").get<std::vector<int>>();
    c.opponent.second_node_exit_weight =
        j.at("second_node_exit_weight").get<double>();
    c.practice_seed = j.at("practice_seed").get<std::uint64_t>();
    c.Validate();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("bad session config: ") + e.what(), 0);
  } catch (const Error& e) {
    throw ParseError(std::string("bad session config: ") + e.what(), 0);
  }
  return c;
}

Json QuestionRecord::ToJson() const {
  Json j;
  j["question_id"] = id;
  j["kind"] = QuestionKindName(kind);
  j["game_index"] = game_index;
  j["game"] = game;
  j["round"] = round;
  j["node"] = node;
  j["text"] = text;
  j["options"] = options;
  j["meanings"] = meanings;
  return j;
}

Json PaymentRecord::ToJson() const {
  Json j;
  j["seed"] = seed;
  j["eligible"] = eligible;
  j["game_index"] = game_index ? Json(*game_index) : Json(nullptr);
  j["experiment_number"] = experiment_number;
  j["marbles"] = marbles;
  j["cents"] = cents;
  j["euros"] = Euros(cents);
  return j;
}

std::vector<std::vector<GameId>> RoundPlan(std::uint64_t seed) {
  std::vector<std::vector<GameId>> plan;
  for (int r = 1; r <= kRoundsPerSession; ++r) {
    std::vector<GameId> row(kAllGames.begin(), kAllGames.end());
    Rng rng(DeriveSeed(seed, "round-order", r));
    rng.Shuffle(std::span<GameId>(row));
    plan.push_back(std::move(row));
  }
  return plan;
}

RoundSchedule SessionSchedule(const SessionConfig& config) {
  return ScheduleRounds(DeriveSeed(config.seed, "schedule"));
}

std::vector<GameSlot> BuildSlots(const SessionConfig& config) {
  std::vector<GameSlot> slots;
  const std::vector<GameTree> practice = PracticeGames(config.practice_seed);
  const std::uint64_t map_seed = DeriveSeed(config.seed, "presentation");
  for (int i = 0; i < kNumPracticeGames; ++i) {
    const GameTree& tree = practice[i];
    slots.push_back(GameSlot{
        i, true, 0, 0, std::nullopt, tree,
        PermutePresentation(tree, 1 + i % kRoundsPerSession,
                            DeriveSeed(map_seed, "practice", i)),
        DrawOpponent(tree, 0, DrawConstraints{},
                     DeriveSeed(config.seed, "opponent", i),
                     config.opponent)});
  }
  const RoundSchedule schedule = SessionSchedule(config);
  const std::vector<std::vector<GameId>> plan = RoundPlan(config.seed);
  int number = 0;
  for (int r = 1; r <= kRoundsPerSession; ++r) {
    for (GameId g : plan[r - 1]) {
      const int index = kNumPracticeGames + number;
      ++number;
      const GameTree& tree = CatalogGame(g);
      slots.push_back(GameSlot{
          index, false, r, number, g, tree,
          PermutePresentation(tree, r, map_seed),
          DrawOpponent(g, r, schedule,
                       DeriveSeed(config.seed, "opponent", index),
                       config.opponent)});
    }
  }
  return slots;
}

Session Session::Create(std::string id, std::string label, Group group,
                        const SessionConfig& config, Clock& clock) {
  if (id.empty()) throw InvalidArgument("session id must not be empty");
  config.Validate();
  Session s;
  s.id_ = std::move(id);
  Json p;
  p["session"] = s.id_;
  p["label"] = label;
  p["group"] = GroupName(group);
  p["config"] = config.ToJson();
  s.Emit(EventKind::kSessionCreated, std::move(p), clock);
  return s;
}

Session Session::Replay(const std::vector<Event>& events) {
  if (events.empty()) throw ProtocolError("empty event log");
  Session s;
  s.id_ = events.front().session;
  for (const Event& e : events) s.Apply(e);
  return s;
}

void Session::Emit(EventKind kind, Json payload, Clock& clock) {
  Event e;
  e.seq = static_cast<std::int64_t>(events_.size()) + 1;
  e.ts = clock.NowMillis();
  if (!events_.empty()) e.ts = std::max(e.ts, events_.back().ts);
  e.session = id_;
  e.kind = kind;
  e.payload = std::move(payload);
  Apply(e);
}

void Session::Apply(const Event& e) {
  if (e.seq != static_cast<std::int64_t>(events_.size()) + 1) {
    throw ProtocolError(fmt::format("event seq {} out of order (expected {})",
                                    e.seq, events_.size() + 1));
  }
  if (e.session != id_) throw ProtocolError("event from another session");
  if (!events_.empty() && e.ts < events_.back().ts) {
    throw ProtocolError("event timestamp goes backwards");
  }
  if ((e.kind == EventKind::kSessionCreated) != events_.empty()) {
    throw ProtocolError("session_created must be the first event, once");
  }
  try {
    switch (e.kind) {
      case EventKind::kSessionCreated: ApplyCreated(e.payload); break;
      case EventKind::kGameStarted: ApplyGameStarted(e.payload); break;
      case EventKind::kComputerMove:
        ApplyMove(e.payload, Player::kComputer);
        break;
      case EventKind::kParticipantMove:
        ApplyMove(e.payload, Player::kParticipant);
        break;
      case EventKind::kQuestionShown: ApplyQuestionShown(e.payload); break;
      case EventKind::kQuestionAnswered:
        ApplyQuestionAnswered(e.payload);
        break;
      case EventKind::kGameEnded: ApplyGameEnded(e.payload); break;
      case EventKind::kFinalAnswer: ApplyFinalAnswer(e.payload); break;
      case EventKind::kPaymentDrawn: ApplyPayment(e.payload); break;
    }
  } catch (const Json::exception& err) {
    throw ProtocolError(fmt::format("event {} ({}): malformed payload: {}",
                                    e.seq, EventKindName(e.kind), err.what()));
  }
  events_.push_back(e);
}

void Session::ApplyCreated(const Json& p) {
  ExpectKeys(p, {"session", "label", "group", "config"});
  if (p.at("session").get<std::string>() != id_) {
    throw ProtocolError("session id mismatch");
  }
  const std::optional<Group> group = ParseGroup(p.at("group").get<std::string>());
  if (!group) throw ProtocolError("unknown group");
  SessionConfig config;
  try {
    config = SessionConfig::FromJson(p.at("config"));
  } catch (const ParseError& err) {
    throw ProtocolError(err.what());
  }
  label_ = p.at("label").get<std::string>();
  group_ = *group;
  config_ = std::move(config);
  slots_ = BuildSlots(config_);
  records_.assign(slots_.size(), GameRecord{});
}

namespace {

Json GameStartedPayload(const GameSlot& slot) {
  Json j;
  j["game_index"] = slot.index;
  j["number"] = slot.index + 1;
  j["practice"] = slot.practice;
  j["round"] = slot.round;
  j["experiment_number"] = slot.experiment_number;
  j["game"] = slot.tree.name();
  j["map"] = MapToJson(slot.map);
  j["belief"] = slot.draw.belief.Render(slot.tree);
  j["plan"] = RenderPlan(slot.tree, slot.draw.plan);
  j["after_break"] =
      slot.index == kNumPracticeGames + kBreakAfterExperimentGame;
  return j;
}

}  // namespace

void Session::ApplyGameStarted(const Json& p) {
  if (active_game() || pending_question()) {
    throw ProtocolError("game_started while a game or question is open");
  }
  if (started_ >= kNumSessionGames) throw ProtocolError("all games played");
  if (p != GameStartedPayload(slots_[started_])) {
    throw ProtocolError(fmt::format(
        "game_started does not match the session plan for game {}",
        started_ + 1));
  }
  records_[started_].started = true;
  ++started_;
}

void Session::ApplyMove(const Json& p, Player mover) {
  ExpectKeys(p, {"game_index", "node", "action"});
  const int g = p.at("game_index").get<int>();
  const int node = p.at("node").get<int>();
  const std::string action = p.at("action").get<std::string>();
  if (active_game() != g) throw ProtocolError("move outside the active game");
  if (LeafReached(g)) throw ProtocolError("game already reached a leaf");
  if (pending_question()) throw ProtocolError("move while a question is open");
  const GameTree& tree = slots_[g].tree;
  if (CurrentNode(g) != node) {
    throw ProtocolError(fmt::format("move at node {}, current node is {}",
                                    node, CurrentNode(g)));
  }
  if (tree.mover(node) != mover) throw ProtocolError("move out of turn");
  const auto found = tree.FindAction(action);
  if (!found || found->first != node) {
    throw ProtocolError("action '" + action + "' is not available at node " +
                        std::to_string(node));
  }
  if (mover == Player::kComputer &&
      ChoiceAt(tree, slots_[g].draw.plan, node) != found->second) {
    throw ProtocolError("computer move deviates from its plan");
  }
  records_[g].moves.push_back(found->second);
  if (mover == Player::kParticipant) ++records_[g].participant_choices;
}

void Session::ApplyQuestionShown(const Json& p) {
  const std::string kind_name = p.at("kind").get<std::string>();
  const int g = p.at("game_index").get<int>();
  if (g < 0 || g >= started_) throw ProtocolError("question for unknown game");
  if (pending_question()) throw ProtocolError("question already open");
  for (const QuestionRecord& q : questions_) {
    if (q.game_index == g) throw ProtocolError("second question in a game");
  }
  if (!QuestionRound(g)) throw ProtocolError("no questions in this round");
  QuestionKind kind;
  if (kind_name == QuestionKindName(QuestionKind::kGroupA)) {
    kind = QuestionKind::kGroupA;
    if (group_ != Group::kA) throw ProtocolError("A question in group B");
    if (active_game() != g || LeafReached(g) ||
        CurrentNode(g) != FirstParticipantNode(g)) {
      throw ProtocolError("A question only before the first choice");
    }
  } else if (kind_name == QuestionKindName(QuestionKind::kGroupB)) {
    kind = QuestionKind::kGroupB;
    if (group_ != Group::kB) throw ProtocolError("B question in group A");
    if (!records_[g].ended || g != started_ - 1) {
      throw ProtocolError("B question only right after the game ends");
    }
    if (records_[g].participant_choices == 0) {
      throw ProtocolError("B question needs a participant choice");
    }
  } else {
    throw ProtocolError("unknown question kind");
  }
  QuestionRecord q = BuildQuestion(kind, g);
  if (p != q.ToJson()) throw ProtocolError("question does not match template");
  questions_.push_back(std::move(q));
}

void Session::ApplyQuestionAnswered(const Json& p) {
  ExpectKeys(p, {"question_id", "option", "meaning"});
  if (!pending_question()) throw ProtocolError("no open question");
  QuestionRecord& q = questions_.back();
  if (p.at("question_id").get<std::string>() != q.id) {
    throw ProtocolError("answer to a question that is not open");
  }
  const int option = p.at("option").get<int>();
  if (option < 0 || option >= static_cast<int>(q.options.size())) {
    throw ProtocolError("option out of range");
  }
  if (p.at("meaning").get<std::string>() != q.meanings[option]) {
    throw ProtocolError("answer meaning does not match the option");
  }
  q.answer = option;
}

void Session::ApplyGameEnded(const Json& p) {
  const std::optional<int> g = active_game();
  if (!g || !LeafReached(*g)) throw ProtocolError("no game at a leaf");
  if (p != GameEndedPayload(*g)) throw ProtocolError("game_ended mismatch");
  records_[*g].ended = true;
  ++ended_;
}

void Session::ApplyFinalAnswer(const Json& p) {
  ExpectKeys(p, {"questionnaire", "answers"});
  if (phase() != Phase::kFinalQuestions) {
    throw ProtocolError("final questionnaires are not open");
  }
  const int number = p.at("questionnaire").get<int>();
  if (number != static_cast<int>(finals_.size()) + 1) {
    throw ProtocolError(fmt::format("expected questionnaire {}",
                                    finals_.size() + 1));
  }
  const Json& answers = p.at("answers");
  if (!answers.is_array() ||
      answers.size() != static_cast<std::size_t>(kQuestionnairePositions)) {
    throw ProtocolError("a questionnaire has four answers");
  }
  std::vector<FinalAnswer> parsed;
  for (int i = 0; i < kQuestionnairePositions; ++i) {
    const Json& a = answers[i];
    ExpectKeys(a, {"position", "direction", "motivation"});
    FinalAnswer f;
    const std::string pos = a.at("position").get<std::string>();
    if (pos != std::string(1, static_cast<char>('A' + i))) {
      throw ProtocolError("positions must be A, B, C, D in order");
    }
    f.position = pos[0];
    const std::string dir = a.at("direction").get<std::string>();
    if (dir == "left") {
      f.direction = Side::kLeft;
    } else if (dir == "right") {
      f.direction = Side::kRight;
    } else {
      throw ProtocolError("direction must be left or right");
    }
    f.motivation = a.at("motivation").get<std::string>();
    if (Blank(f.motivation)) throw ProtocolError("motivation is required");
    parsed.push_back(std::move(f));
  }
  finals_.push_back(std::move(parsed));
}

void Session::ApplyPayment(const Json& p) {
  if (phase() != Phase::kPayment) throw ProtocolError("payment is not due");
  ExpectKeys(p, {"seed", "eligible", "game_index", "experiment_number",
                 "marbles", "cents", "euros"});
  PaymentRecord r = ComputePayment(p.at("seed").get<std::uint64_t>());
  if (p != r.ToJson()) throw ProtocolError("payment does not match the draw");
  payment_ = std::move(r);
}

bool Session::LeafReached(int g) const {
  const std::vector<Move>& m = records_[g].moves;
  return !m.empty() && (m.back() == Move::kExit ||
                        static_cast<int>(m.size()) == slots_[g].tree.num_nodes());
}

int Session::CurrentNode(int g) const {
  return static_cast<int>(records_[g].moves.size());
}

int Session::FirstParticipantNode(int g) const {
  return slots_[g].tree.NodesOf(Player::kParticipant).front();
}

bool Session::QuestionRound(int g) const {
  const GameSlot& s = slots_[g];
  if (s.practice) return false;
  const std::vector<int>& rounds = config_.question_rounds;
  return std::find(rounds.begin(), rounds.end(), s.round) != rounds.end();
}

QuestionRecord Session::BuildQuestion(QuestionKind kind, int g) const {
  const GameSlot& slot = slots_[g];
  const GameTree& tree = slot.tree;
  const int p_node = FirstParticipantNode(g);
  const int c_node = p_node + 1;
  if (c_node >= tree.num_nodes()) {
    throw ProtocolError("no computer node follows the first choice");
  }
  const std::string dir_d = SideName(slot.map.SideOf(p_node, Move::kContinue));
  std::string text;
  if (p_node > 0) {
    const std::string dir_c =
        SideName(slot.map.SideOf(0, records_[g].moves.at(0)));
    text = kind == QuestionKind::kGroupA
               ? fmt::format("The computer just chose to go {}. If you choose "
                             "to go {}, what do you think the computer would "
                             "do next?",
                             dir_c, dir_d)
               : fmt::format("The computer first chose to go {}. When you "
                             "made your first choice, what did you think the "
                             "computer would do next if you chose to go {}?",
                             dir_c, dir_d);
  } else {
    text = kind == QuestionKind::kGroupA
               ? fmt::format("It's your turn. If you choose to go {}, what do "
                             "you think the computer would do next?",
                             dir_d)
               : fmt::format("When you made your first choice, what did you "
                             "think the computer would do next if you chose "
                             "to go {}?",
                             dir_d);
  }
  QuestionRecord q;
  q.id = fmt::format("q{}", g + 1);
  q.kind = kind;
  q.game_index = g;
  q.game = tree.name();
  q.round = slot.round;
  q.node = c_node;
  q.text = std::move(text);
  q.options = QuestionOptions();
  q.meanings = {MoveLabel(tree, c_node, slot.map.MoveAt(c_node, Side::kLeft)),
                MoveLabel(tree, c_node, slot.map.MoveAt(c_node, Side::kRight)),
                "undecided"};
  return q;
}

Json Session::GameEndedPayload(int g) const {
  const GameTree& tree = slots_[g].tree;
  const std::vector<Move>& m = records_[g].moves;
  const int leaf = m.back() == Move::kExit ? static_cast<int>(m.size()) - 1
                                           : tree.num_nodes();
  Json j;
  j["game_index"] = g;
  j["leaf"] = leaf;
  j["leaf_label"] = tree.leaf_label(leaf);
  j["payoff"] = PayoffJson(tree.leaf_payoff(leaf));
  j["participant_choices"] = records_[g].participant_choices;
  j["break_follows"] = g + 1 == kNumPracticeGames + kBreakAfterExperimentGame;
  return j;
}

PaymentRecord Session::ComputePayment(std::uint64_t seed) const {
  std::vector<int> eligible;
  for (const GameSlot& s : slots_) {
    if (!s.practice && records_[s.index].ended &&
        records_[s.index].participant_choices > 0) {
      eligible.push_back(s.index);
    }
  }
  PaymentRecord r;
  r.seed = seed;
  r.eligible = static_cast<int>(eligible.size());
  if (eligible.empty()) return r;
  Rng rng(seed);
  const int g = eligible[rng.UniformInt(eligible.size())];
  const std::vector<Move>& m = records_[g].moves;
  const GameTree& tree = slots_[g].tree;
  const int leaf = m.back() == Move::kExit ? static_cast<int>(m.size()) - 1
                                           : tree.num_nodes();
  r.game_index = g;
  r.experiment_number = slots_[g].experiment_number;
  r.marbles = tree.leaf_payoff(leaf).participant;
  r.cents = r.marbles * kCentsPerMarble;
  return r;
}

std::optional<int> Session::active_game() const {
  if (started_ > ended_) return started_ - 1;
  return std::nullopt;
}

const QuestionRecord* Session::pending_question() const {
  if (!questions_.empty() && !questions_.back().answer) {
    return &questions_.back();
  }
  return nullptr;
}

std::optional<int> Session::participant_node() const {
  const std::optional<int> g = active_game();
  if (!g || LeafReached(*g)) return std::nullopt;
  const int node = CurrentNode(*g);
  if (slots_[*g].tree.mover(node) != Player::kParticipant) return std::nullopt;
  return node;
}

Phase Session::phase() const {
  if (payment_) return Phase::kDone;
  if (static_cast<int>(finals_.size()) == kNumQuestionnaires) {
    return Phase::kPayment;
  }
  const bool open = active_game() || pending_question();
  if (!open && ended_ == kNumSessionGames) return Phase::kFinalQuestions;
  if (open) {
    return slots_[started_ - 1].practice ? Phase::kPractice
                                         : Phase::kExperiment;
  }
  if (started_ == kNumPracticeGames + kBreakAfterExperimentGame) {
    return Phase::kBreak;
  }
  if (slots_.empty()) return Phase::kPractice;
  return slots_[started_].practice ? Phase::kPractice : Phase::kExperiment;
}

Awaiting Session::awaiting() const {
  switch (phase()) {
    case Phase::kDone: return Awaiting::kNothing;
    case Phase::kPayment: return Awaiting::kPayment;
    case Phase::kFinalQuestions: return Awaiting::kFinal;
    default: break;
  }
  if (pending_question()) return Awaiting::kAnswer;
  if (active_game()) return Awaiting::kChoice;
  return Awaiting::kNext;
}

void Session::Advance(Clock& clock) {
  const std::optional<int> g = active_game();
  if (!g) return;
  const GameSlot& slot = slots_[*g];
  while (!LeafReached(*g) &&
         slot.tree.mover(CurrentNode(*g)) == Player::kComputer) {
    const int node = CurrentNode(*g);
    Json p;
    p["game_index"] = *g;
    p["node"] = node;
    p["action"] = MoveLabel(slot.tree, node, ChoiceAt(slot.tree, slot.draw.plan, node));
    Emit(EventKind::kComputerMove, std::move(p), clock);
  }
  if (LeafReached(*g)) {
    Emit(EventKind::kGameEnded, GameEndedPayload(*g), clock);
    if (group_ == Group::kB && QuestionRound(*g) &&
        records_[*g].participant_choices > 0) {
      Emit(EventKind::kQuestionShown,
           BuildQuestion(QuestionKind::kGroupB, *g).ToJson(), clock);
    }
    return;
  }
  if (group_ == Group::kA && QuestionRound(*g) &&
      CurrentNode(*g) == FirstParticipantNode(*g)) {
    Emit(EventKind::kQuestionShown,
         BuildQuestion(QuestionKind::kGroupA, *g).ToJson(), clock);
  }
}

void Session::Next(Clock& clock) {
  if (awaiting() != Awaiting::kNext) {
    throw ProtocolError(fmt::format("cannot start a game while awaiting {}",
                                    AwaitingName(awaiting())));
  }
  Emit(EventKind::kGameStarted, GameStartedPayload(slots_[started_]), clock);
  Advance(clock);
}

void Session::Choose(int node, std::string_view action, Clock& clock) {
  if (awaiting() != Awaiting::kChoice) {
    throw ProtocolError(fmt::format("no choice expected (awaiting {})",
                                    AwaitingName(awaiting())));
  }
  const int g = *active_game();
  const int expected = *participant_node();
  if (node != expected) {
    throw ProtocolError(fmt::format("it is your turn at node {}, not {}",
                                    expected, node));
  }
  const auto found = slots_[g].tree.FindAction(action);
  if (!found || found->first != node) {
    throw InvalidArgument(fmt::format("action '{}' is not available at node {}",
                                      action, node));
  }
  Json p;
  p["game_index"] = g;
  p["node"] = node;
  p["action"] = std::string(action);
  Emit(EventKind::kParticipantMove, std::move(p), clock);
  Advance(clock);
}

void Session::Answer(std::string_view question_id, int option, Clock& clock) {
  const QuestionRecord* q = pending_question();
  if (!q) throw ProtocolError("no question is open");
  if (q->id != question_id) {
    throw ProtocolError(fmt::format("open question is {}, not {}", q->id,
                                    question_id));
  }
  if (option < 0 || option >= static_cast<int>(q->options.size())) {
    throw InvalidArgument("option must be 0, 1 or 2");
  }
  Json p;
  p["question_id"] = q->id;
  p["option"] = option;
  p["meaning"] = q->meanings[option];
  Emit(EventKind::kQuestionAnswered, std::move(p), clock);
}

void Session::SubmitFinal(int questionnaire, std::vector<FinalAnswer> answers,
                          Clock& clock) {
  if (phase() != Phase::kFinalQuestions) {
    throw ProtocolError("final questionnaires are not open");
  }
  if (questionnaire != static_cast<int>(finals_.size()) + 1) {
    throw ProtocolError(fmt::format("expected questionnaire {}",
                                    finals_.size() + 1));
  }
  if (answers.size() != static_cast<std::size_t>(kQuestionnairePositions)) {
    throw InvalidArgument("a questionnaire has four answers");
  }
  Json list = Json::array();
  for (int i = 0; i < kQuestionnairePositions; ++i) {
    const FinalAnswer& a = answers[i];
    if (a.position != 'A' + i) {
      throw InvalidArgument("positions must be A, B, C, D in order");
    }
    if (Blank(a.motivation)) {
      throw InvalidArgument(fmt::format("motivation for {} is required",
                                        a.position));
    }
    Json j;
    j["position"] = std::string(1, a.position);
    j["direction"] = SideName(a.direction);
    j["motivation"] = a.motivation;
    list.push_back(std::move(j));
  }
  Json p;
  p["questionnaire"] = questionnaire;
  p["answers"] = std::move(list);
  Emit(EventKind::kFinalAnswer, std::move(p), clock);
}

const PaymentRecord& Session::DrawPayment(std::optional<std::uint64_t> seed,
                                          Clock& clock) {
  if (phase() != Phase::kPayment) throw ProtocolError("payment is not due");
  Emit(EventKind::kPaymentDrawn,
       ComputePayment(seed.value_or(DeriveSeed(config_.seed, "payment")))
           .ToJson(),
       clock);
  return *payment_;
}

Json Session::PublicState() const {
  Json j;
  j["session"] = id_;
  j["label"] = label_;
  j["group"] = GroupName(group_);
  j["phase"] = PhaseName(phase());
  j["awaiting"] = AwaitingName(awaiting());
  j["progress"] = {{"games_total", kNumSessionGames},
                   {"practice_games", kNumPracticeGames},
                   {"experiment_games", kNumExperimentGames},
                   {"games_started", started_},
                   {"games_ended", ended_},
                   {"break_after_game",
                    kNumPracticeGames + kBreakAfterExperimentGame}};
  if (started_ == 0) {
    j["game"] = nullptr;
  } else {
    const int g = started_ - 1;
    const GameSlot& slot = slots_[g];
    const GameRecord& rec = records_[g];
    Json game;
    game["game_index"] = g;
    game["number"] = g + 1;
    game["practice"] = slot.practice;
    game["round"] = slot.round;
    game["experiment_number"] = slot.experiment_number;
    game["tree"] = TreeToJson(slot.tree);
    game["map"] = MapToJson(slot.map);
    Json moves = Json::array();
    for (int i = 0; i < static_cast<int>(rec.moves.size()); ++i) {
      moves.push_back(
          {{"node", i},
           {"mover", std::string(1, PlayerChar(slot.tree.mover(i)))},
           {"action", slot.tree.ActionLabel(i, rec.moves[i])},
           {"side", SideName(slot.map.SideOf(i, rec.moves[i]))}});
    }
    game["moves"] = moves;
    const std::optional<int> pn = participant_node();
    game["your_node"] = pn ? Json(*pn) : Json(nullptr);
    game["ended"] = rec.ended;
    if (rec.ended) {
      const Json end = GameEndedPayload(g);
      game["leaf_label"] = end["leaf_label"];
      game["marbles"] = end["payoff"]["participant"];
    }
    j["game"] = std::move(game);
  }
  const QuestionRecord* q = pending_question();
  if (q) {
    Json qj;
    qj["question_id"] = q->id;
    qj["kind"] = QuestionKindName(q->kind);
    qj["text"] = q->text;
    qj["options"] = q->options;
    j["question"] = std::move(qj);
  } else {
    j["question"] = nullptr;
  }
  j["questionnaires_submitted"] = finals_.size();
  j["payment"] = payment_ ? payment_->ToJson() : Json(nullptr);
  return j;
}

Json Session::Snapshot() const {
  Json j;
  j["session"] = id_;
  j["label"] = label_;
  j["group"] = GroupName(group_);
  j["config"] = config_.ToJson();
  j["phase"] = PhaseName(phase());
  j["awaiting"] = AwaitingName(awaiting());
  j["games_started"] = started_;
  j["games_ended"] = ended_;
  Json games = Json::array();
  for (const GameSlot& slot : slots_) {
    const GameRecord& rec = records_[slot.index];
    Json g = GameStartedPayload(slot);
    g["tree"] = SerializeTree(slot.tree);
    g["started"] = rec.started;
    g["ended"] = rec.ended;
    Json moves = Json::array();
    for (int i = 0; i < static_cast<int>(rec.moves.size()); ++i) {
      moves.push_back(slot.tree.ActionLabel(i, rec.moves[i]));
    }
    g["moves"] = moves;
    g["participant_choices"] = rec.participant_choices;
    games.push_back(std::move(g));
  }
  j["games"] = std::move(games);
  Json questions = Json::array();
  for (const QuestionRecord& q : questions_) {
    Json qj = q.ToJson();
    qj["answer"] = q.answer ? Json(*q.answer) : Json(nullptr);
    questions.push_back(std::move(qj));
  }
  j["questions"] = std::move(questions);
  Json finals = Json::array();
  for (const std::vector<FinalAnswer>& f : finals_) {
    Json list = Json::array();
    for (const FinalAnswer& a : f) {
      list.push_back({{"position", std::string(1, a.position)},
                      {"direction", SideName(a.direction)},
                      {"motivation", a.motivation}});
    }
    finals.push_back(std::move(list));
  }
  j["finals"] = std::move(finals);
  j["payment"] = payment_ ? payment_->ToJson() : Json(nullptr);
  j["events"] = events_.size();
  return j;
}

}  // namespace marbledrop
