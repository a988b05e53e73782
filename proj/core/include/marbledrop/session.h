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


#ifndef MARBLEDROP_SESSION_H_
#define MARBLEDROP_SESSION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "marbledrop/catalog.h"
#include "marbledrop/event_log.h"
#include "marbledrop/game_tree.h"
#include "marbledrop/opponent.h"
#include "marbledrop/practice.h"
#include "marbledrop/presentation.h"

namespace marbledrop {

inline constexpr int kGamesPerRound = 6;
inline constexpr int kNumExperimentGames = kRoundsPerSession * kGamesPerRound;
inline constexpr int kNumSessionGames = kNumPracticeGames + kNumExperimentGames;
inline constexpr int kBreakAfterExperimentGame = 24;
inline constexpr int kCentsPerMarble = 375;
inline constexpr int kNumQuestionnaires = 2;
inline constexpr int kQuestionnairePositions = 4;  // directions A..D

enum class Group { kA, kB };
std::string_view GroupName(Group g);  // "A" or "B"
std::optional<Group> ParseGroup(std::string_view s);

// Balanced block randomization: participants 2b and 2b+1 get one A and
// one B, in an order drawn from (seed, b).
Group AssignGroup(std::uint64_t seed, int participant_index);

enum class Phase {
  kPractice,
  kExperiment,
  kBreak,
  kFinalQuestions,
  kPayment,
  kDone
};
std::string_view PhaseName(Phase p);

struct SessionConfig {
  std::uint64_t seed = 1;
  std::vector<int> question_rounds = {2, 5, 7};
  OpponentConfig opponent;
  std::uint64_t practice_seed = kDefaultPracticeSeed;

  void Validate() const;  // throws InvalidArgument
  Json ToJson() const;
  static SessionConfig FromJson(const Json& j);  // throws ParseError
  friend bool operator==(const SessionConfig&, const SessionConfig&) = default;
};

// Everything about one of the 62 games that is fixed at session creation.
struct GameSlot {
  int index = 0;              // 0-based position in the session
  bool practice = false;
  int round = 0;              // 1..8, 0 for practice
  int experiment_number = 0;  // 1..48, 0 for practice
  std::optional<GameId> game;
  GameTree tree;
  PresentationMap map;
  OpponentDraw draw;
};

// Round-by-round order of the six games: row r is a permutation of
// kAllGames.
std::vector<std::vector<GameId>> RoundPlan(std::uint64_t seed);

// Schedule of the computer's outside-option rounds.
RoundSchedule SessionSchedule(const SessionConfig& config);

// The 14 practice slots followed by the 48 experiment slots.
std::vector<GameSlot> BuildSlots(const SessionConfig& config);

enum class QuestionKind { kGroupA, kGroupB };
std::string_view QuestionKindName(QuestionKind k);  // "A-at-node", ...

struct QuestionRecord {
  std::string id;
  QuestionKind kind = QuestionKind::kGroupA;
  int game_index = 0;
  std::string game;
  int round = 0;
  int node = 0;  // the computer node the question is about
  std::string text;
  std::vector<std::string> options;   // as displayed
  std::vector<std::string> meanings;  // action label per option, or
                                      // "undecided"
  std::optional<int> answer;

  Json ToJson() const;
  friend bool operator==(const QuestionRecord&,
                         const QuestionRecord&) = default;
};

// Option texts of the in-game questions.
const std::vector<std::string>& QuestionOptions();

struct GameRecord {
  bool started = false;
  bool ended = false;
  std::vector<Move> moves;  // along the spine from the root
  int participant_choices = 0;

  friend bool operator==(const GameRecord&, const GameRecord&) = default;
};

struct FinalAnswer {
  char position = 'A';  // 'A'..'D'
  Side direction = Side::kLeft;
  std::string motivation;
  friend bool operator==(const FinalAnswer&, const FinalAnswer&) = default;
};

struct PaymentRecord {
  std::uint64_t seed = 0;
  int eligible = 0;                // experiment games with a choice
  std::optional<int> game_index;   // nullopt when nothing is eligible
  int experiment_number = 0;
  int marbles = 0;
  int cents = 0;                   // marbles * 375
  Json ToJson() const;
  friend bool operator==(const PaymentRecord&, const PaymentRecord&) = default;
};

// What the session waits for next.
enum class Awaiting { kNext, kChoice, kAnswer, kFinal, kPayment, kNothing };
std::string_view AwaitingName(Awaiting a);

// One participant's run through the protocol. Event sourced: every command
// validates, then emits events; all state changes happen in Apply, which
// also checks each event against the protocol so a replayed log is verified
// as it is rebuilt. Not thread safe; SessionStore serializes access.
class Session {
 public:
  static Session Create(std::string id, std::string label, Group group,
                        const SessionConfig& config, Clock& clock);
  // Throws ProtocolError (or ParseError for malformed payloads) when the
  // events do not form a valid prefix of a session.
  static Session Replay(const std::vector<Event>& events);

  // Starts the next game and plays the computer up to the participant's
  // first turn. Also resumes after the break.
  void Next(Clock& clock);
  // `action` is the canonical action label (e.g. "d"), never a side.
  void Choose(int node, std::string_view action, Clock& clock);
  void Answer(std::string_view question_id, int option, Clock& clock);
  void SubmitFinal(int questionnaire, std::vector<FinalAnswer> answers,
                   Clock& clock);
  const PaymentRecord& DrawPayment(std::optional<std::uint64_t> seed,
                                   Clock& clock);

  const std::string& id() const { return id_; }
  const std::string& label() const { return label_; }
  Group group() const { return group_; }
  const SessionConfig& config() const { return config_; }
  const std::vector<GameSlot>& slots() const { return slots_; }
  const std::vector<GameRecord>& records() const { return records_; }
  const std::vector<QuestionRecord>& questions() const { return questions_; }
  const std::vector<std::vector<FinalAnswer>>& finals() const {
    return finals_;
  }
  const std::optional<PaymentRecord>& payment() const { return payment_; }
  const std::vector<Event>& events() const { return events_; }

  Phase phase() const;
  Awaiting awaiting() const;
  // Index of the game in play (started and not ended), if any.
  std::optional<int> active_game() const;
  int games_started() const { return started_; }
  int games_ended() const { return ended_; }
  const QuestionRecord* pending_question() const;
  // Node where the participant must move next in the active game.
  std::optional<int> participant_node() const;

  // Client view: no computer plan or belief, no game names.
  Json PublicState() const;
  // Complete state; equal snapshots mean equal sessions.
  Json Snapshot() const;

 private:
  Session() = default;
  void Emit(EventKind kind, Json payload, Clock& clock);
  void Apply(const Event& e);
  void ApplyCreated(const Json& p);
  void ApplyGameStarted(const Json& p);
  void ApplyMove(const Json& p, Player mover);
  void ApplyQuestionShown(const Json& p);
  void ApplyQuestionAnswered(const Json& p);
  void ApplyGameEnded(const Json& p);
  void ApplyFinalAnswer(const Json& p);
  void ApplyPayment(const Json& p);

  // Plays the computer's moves, ends the game at a leaf, and raises any
  // question due at this point.
  void Advance(Clock& clock);
  bool LeafReached(int game) const;
  int CurrentNode(int game) const;
  int FirstParticipantNode(int game) const;
  bool QuestionRound(int game) const;
  QuestionRecord BuildQuestion(QuestionKind kind, int game) const;
  PaymentRecord ComputePayment(std::uint64_t seed) const;
  Json GameEndedPayload(int game) const;

  std::string id_;
  std::string label_;
  Group group_ = Group::kA;
  SessionConfig config_;
  std::vector<GameSlot> slots_;
  std::vector<GameRecord> records_;
  int started_ = 0;
  int ended_ = 0;
  std::vector<QuestionRecord> questions_;
  std::vector<std::vector<FinalAnswer>> finals_;
  std::optional<PaymentRecord> payment_;
  std::vector<Event> events_;
};

}  // namespace marbledrop

#endif  // MARBLEDROP_SESSION_H_
