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


#include "marbledrop/session_store.h"

#include <fmt/format.h>

#include <algorithm>
#include <fstream>
#include <sstream>

#include "marbledrop/errors.h"
#include "marbledrop/rng.h"

namespace marbledrop {

namespace fs = std::filesystem;

SessionStore::SessionStore(StoreOptions options, Clock& clock)
    : options_(std::move(options)), clock_(clock) {
  options_.defaults.Validate();
  if (!options_.log_dir) return;
  fs::create_directories(*options_.log_dir);
  std::vector<fs::path> files;
  for (const fs::directory_entry& e : fs::directory_iterator(*options_.log_dir)) {
    if (e.is_regular_file() && e.path().extension() == ".jsonl") {
      files.push_back(e.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const fs::path& f : files) {
    std::ifstream in(f, std::ios::binary);
    std::stringstream buf;
    buf << in.rdbuf();
    Session s = Session::Replay(ParseEventLog(buf.str()));
    const std::string id = s.id();
    sessions_.emplace(id, std::make_unique<Entry>(std::move(s), f));
    ++created_;
  }
}

SessionStore::Entry& SessionStore::Find(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw NotFound("unknown session '" + id + "'");
  return *it->second;
}

void SessionStore::Persist(const Entry& entry, std::size_t from) {
  if (!entry.file) return;
  const std::vector<Event>& events = entry.session.events();
  if (from >= events.size()) return;
  std::ofstream out(*entry.file, std::ios::binary | std::ios::app);
  if (from == 0) out << HeaderLine() << '\n';
  for (std::size_t i = from; i < events.size(); ++i) {
    out << EventLine(events[i]) << '\n';
  }
  out.flush();
  if (!out) throw Error("cannot write " + entry.file->string());
}

template <typename F>
void SessionStore::Mutate(const std::string& id, F&& f) {
  Entry& entry = Find(id);
  std::lock_guard<std::mutex> lock(entry.mu);
  const std::size_t before = entry.session.events().size();
  try {
    f(entry.session);
  } catch (...) {
    Persist(entry, before);
    throw;
  }
  Persist(entry, before);
}

std::string SessionStore::Create(const CreateRequest& request) {
  std::unique_lock lock(mu_);
  const int index = created_;
  std::string id;
  do {
    id = fmt::format("s{:04d}", ++created_);
  } while (sessions_.count(id));
  SessionConfig config = options_.defaults;
  config.seed = request.seed.value_or(DeriveSeed(options_.seed, "session", index));
  if (request.question_rounds) config.question_rounds = *request.question_rounds;
  const Group group = request.group.value_or(AssignGroup(options_.seed, index));
  Session s = Session::Create(id, request.label, group, config, clock_);
  std::optional<fs::path> file;
  if (options_.log_dir) file = *options_.log_dir / (id + ".jsonl");
  auto entry = std::make_unique<Entry>(std::move(s), std::move(file));
  Persist(*entry, 0);
  sessions_.emplace(id, std::move(entry));
  return id;
}

void SessionStore::Next(const std::string& id) {
  Mutate(id, [&](Session& s) { s.Next(clock_); });
}

void SessionStore::Choose(const std::string& id, int node,
                          const std::string& action) {
  Mutate(id, [&](Session& s) { s.Choose(node, action, clock_); });
}

void SessionStore::Answer(const std::string& id,
                          const std::string& question_id, int option) {
  Mutate(id, [&](Session& s) { s.Answer(question_id, option, clock_); });
}

void SessionStore::SubmitFinal(const std::string& id, int questionnaire,
                               std::vector<FinalAnswer> answers) {
  Mutate(id, [&](Session& s) {
    s.SubmitFinal(questionnaire, std::move(answers), clock_);
  });
}

PaymentRecord SessionStore::DrawPayment(const std::string& id,
                                        std::optional<std::uint64_t> seed) {
  PaymentRecord r;
  Mutate(id, [&](Session& s) { r = s.DrawPayment(seed, clock_); });
  return r;
}

Json SessionStore::State(const std::string& id) const {
  const Entry& e = Find(id);
  std::lock_guard<std::mutex> lock(e.mu);
  return e.session.PublicState();
}

Json SessionStore::Snapshot(const std::string& id) const {
  const Entry& e = Find(id);
  std::lock_guard<std::mutex> lock(e.mu);
  return e.session.Snapshot();
}

std::string SessionStore::Log(const std::string& id) const {
  const Entry& e = Find(id);
  std::lock_guard<std::mutex> lock(e.mu);
  return SerializeEventLog(e.session.events());
}

std::vector<std::string> SessionStore::Ids() const {
  std::shared_lock lock(mu_);
  std::vector<std::string> ids;
  for (const auto& [id, entry] : sessions_) ids.push_back(id);
  return ids;
}

std::size_t SessionStore::size() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

}  // namespace marbledrop
