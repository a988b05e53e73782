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


#ifndef MARBLEDROP_SESSION_STORE_H_
#define MARBLEDROP_SESSION_STORE_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "marbledrop/event_log.h"
#include "marbledrop/session.h"

namespace marbledrop {

struct StoreOptions {
  // One "<id>.jsonl" file per session; nullopt keeps logs in memory only.
  std::optional<std::filesystem::path> log_dir;
  std::uint64_t seed = 1;  // group assignment and per-session seeds
  SessionConfig defaults;
};

struct CreateRequest {
  std::string label;
  std::optional<Group> group;           // default: balanced assignment
  std::optional<std::uint64_t> seed;    // default: derived from the store
  std::optional<std::vector<int>> question_rounds;
};

// Thread-safe collection of live sessions. Commands on one session are
// serialized by a per-session lock; new events are appended to the
// session's file before the command returns.
class SessionStore {
 public:
  // Replays any logs already present in `log_dir`.
  SessionStore(StoreOptions options, Clock& clock);

  std::string Create(const CreateRequest& request);
  void Next(const std::string& id);
  void Choose(const std::string& id, int node, const std::string& action);
  void Answer(const std::string& id, const std::string& question_id,
              int option);
  void SubmitFinal(const std::string& id, int questionnaire,
                   std::vector<FinalAnswer> answers);
  PaymentRecord DrawPayment(const std::string& id,
                            std::optional<std::uint64_t> seed);

  Json State(const std::string& id) const;
  Json Snapshot(const std::string& id) const;
  std::string Log(const std::string& id) const;
  std::vector<std::string> Ids() const;
  std::size_t size() const;

 private:
  struct Entry {
    Entry(Session s, std::optional<std::filesystem::path> f)
        : session(std::move(s)), file(std::move(f)) {}
    mutable std::mutex mu;
    Session session;
    std::optional<std::filesystem::path> file;
  };

  Entry& Find(const std::string& id) const;  // throws NotFound
  template <typename F>
  void Mutate(const std::string& id, F&& f);
  static void Persist(const Entry& entry, std::size_t from);

  StoreOptions options_;
  Clock& clock_;
  mutable std::shared_mutex mu_;
  std::map<std::string, std::unique_ptr<Entry>> sessions_;
  int created_ = 0;
};

}  // namespace marbledrop

#endif  // MARBLEDROP_SESSION_STORE_H_
