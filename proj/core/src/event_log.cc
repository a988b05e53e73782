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


#include "marbledrop/event_log.h"

#include <array>
#include <chrono>
#include <sstream>

#include "marbledrop/errors.h"

namespace marbledrop {
namespace {

constexpr std::array<std::string_view, 9> kKindNames = {
    "session_created",  "game_started",      "computer_move",
    "participant_move", "question_shown",    "question_answered",
    "game_ended",       "final_answer",      "payment_drawn"};

}  // namespace

std::string_view EventKindName(EventKind kind) {
  return kKindNames[static_cast<int>(kind)];
}

std::optional<EventKind> ParseEventKind(std::string_view s) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i) {
    if (kKindNames[i] == s) return static_cast<EventKind>(i);
  }
  return std::nullopt;
}

Json EventToJson(const Event& e) {
  Json j;
  j["seq"] = e.seq;
  j["ts"] = e.ts;
  j["session"] = e.session;
  j["kind"] = EventKindName(e.kind);
  j["payload"] = e.payload;
  return j;
}

Event EventFromJson(const Json& j) {
  if (!j.is_object() || j.size() != 5 || !j.contains("seq") ||
      !j.contains("ts") || !j.contains("session") || !j.contains("kind") ||
      !j.contains("payload")) {
    throw ParseError("event needs exactly seq, ts, session, kind, payload", 0);
  }
  if (!j["seq"].is_number_integer() || !j["ts"].is_number_integer() ||
      !j["session"].is_string() || !j["kind"].is_string() ||
      !j["payload"].is_object()) {
    throw ParseError("event field has the wrong type", 0);
  }
  Event e;
  e.seq = j["seq"].get<std::int64_t>();
  e.ts = j["ts"].get<std::int64_t>();
  e.session = j["session"].get<std::string>();
  const std::optional<EventKind> kind =
      ParseEventKind(j["kind"].get<std::string>());
  if (!kind) {
    throw ParseError("unknown event kind '" + j["kind"].get<std::string>() +
                         "'",
                     0);
  }
  e.kind = *kind;
  e.payload = j["payload"];
  return e;
}

std::string HeaderLine() {
  Json h;
  h["format"] = kEventLogFormat;
  h["version"] = kEventLogVersion;
  return h.dump();
}

std::string EventLine(const Event& e) { return EventToJson(e).dump(); }

std::string SerializeEventLog(const std::vector<Event>& events) {
  std::string out = HeaderLine() + "\n";
  for (const Event& e : events) out += EventLine(e) + "\n";
  return out;
}

std::vector<Event> ParseEventLog(std::string_view text) {
  std::vector<Event> events;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& err) {
      throw ParseError(std::string("malformed JSON: ") + err.what(), line_no);
    }
    if (!have_header) {
      if (!j.is_object() || j.value("format", "") != kEventLogFormat) {
        throw ParseError("missing event log header", line_no);
      }
      if (!j.contains("version") || !j["version"].is_number_integer() ||
          j["version"].get<int>() != kEventLogVersion) {
        throw ParseError("unsupported event log version", line_no);
      }
      have_header = true;
      continue;
    }
    Event e;
    try {
      e = EventFromJson(j);
    } catch (const ParseError& err) {
      throw ParseError(err.what(), line_no);
    }
    const std::int64_t expected_seq = static_cast<std::int64_t>(events.size()) + 1;
    if (e.seq != expected_seq) {
      throw ParseError("expected seq " + std::to_string(expected_seq) +
                           ", found " + std::to_string(e.seq),
                       line_no);
    }
    if (!events.empty()) {
      if (e.session != events.front().session) {
        throw ParseError("record belongs to another session", line_no);
      }
      if (e.ts < events.back().ts) {
        throw ParseError("timestamp goes backwards", line_no);
      }
    }
    events.push_back(std::move(e));
  }
  if (!have_header) throw ParseError("empty event log", 0);
  return events;
}

std::int64_t LogicalClock::NowMillis() {
  std::lock_guard<std::mutex> lock(mu_);
  const std::int64_t now = next_;
  next_ += step_;
  return now;
}

std::int64_t SystemClock::NowMillis() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

}  // namespace marbledrop
