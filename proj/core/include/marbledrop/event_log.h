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


#ifndef MARBLEDROP_EVENT_LOG_H_
#define MARBLEDROP_EVENT_LOG_H_

#include <cstdint>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

namespace marbledrop {

using Json = nlohmann::ordered_json;

inline constexpr std::string_view kEventLogFormat = "marbledrop-eventlog";
inline constexpr int kEventLogVersion = 1;

enum class EventKind {
  kSessionCreated,
  kGameStarted,
  kComputerMove,
  kParticipantMove,
  kQuestionShown,
  kQuestionAnswered,
  kGameEnded,
  kFinalAnswer,
  kPaymentDrawn,
};

std::string_view EventKindName(EventKind kind);  // "session_created", ...
std::optional<EventKind> ParseEventKind(std::string_view s);

struct Event {
  std::int64_t seq = 0;  // 1-based position within the session
  std::int64_t ts = 0;   // milliseconds; recorded, never used for control
  std::string session;
  EventKind kind = EventKind::kSessionCreated;
  Json payload = Json::object();

  friend bool operator==(const Event&, const Event&) = default;
};

Json EventToJson(const Event& e);
Event EventFromJson(const Json& j);  // throws ParseError(line 0)

// One JSON object per line with a stable key order, preceded by a header
// record carrying the format name and version.
std::string HeaderLine();
std::string EventLine(const Event& e);
std::string SerializeEventLog(const std::vector<Event>& events);

// Parses a whole log file. Throws ParseError (with the 1-based line) on a
// missing or mismatched header, malformed records, non-consecutive seq,
// decreasing timestamps or records from more than one session.
std::vector<Event> ParseEventLog(std::string_view text);

// Time source for event stamps.
class Clock {
 public:
  virtual ~Clock() = default;
  virtual std::int64_t NowMillis() = 0;
};

// Deterministic clock for simulations and tests: start, start+step, ...
class LogicalClock : public Clock {
 public:
  explicit LogicalClock(std::int64_t start = 0, std::int64_t step = 1000)
      : next_(start), step_(step) {}
  std::int64_t NowMillis() override;

 private:
  std::mutex mu_;
  std::int64_t next_;
  std::int64_t step_;
};

class SystemClock : public Clock {
 public:
  std::int64_t NowMillis() override;
};

}  // namespace marbledrop

#endif  // MARBLEDROP_EVENT_LOG_H_
