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


#include "marbledrop/cohort.h"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "marbledrop/catalog.h"
#include "marbledrop/errors.h"
#include "marbledrop/rng.h"

namespace marbledrop {
namespace {

// Questionnaire answers for the four doors of Game 4: the agent's own move
// at B and D, its prediction of the computer at A and C.
std::vector<FinalAnswer> Questionnaire(const Agent& agent, std::uint64_t seed) {
  const GameTree& tree = CatalogGame(GameId::kG4);
  std::vector<FinalAnswer> answers;
  std::vector<Move> history;
  for (int node = 0; node < tree.num_nodes(); ++node) {
    Move m;
    std::string why;
    if (tree.mover(node) == Player::kParticipant) {
      m = agent.Decide(tree, node, history, DeriveSeed(seed, node));
      why = "my own choice";
    } else {
      const std::optional<Move> guess = agent.PredictOpponent(tree, node);
      m = guess.value_or(Move::kContinue);
      why = guess ? "what I expect the computer to do" : "no clear guess";
    }
    answers.push_back(FinalAnswer{
        static_cast<char>('A' + node), m == Move::kExit ? Side::kLeft
                                                        : Side::kRight,
        fmt::format("{} agent: {} ({})", AgentKindName(agent.profile().kind),
                    tree.ActionLabel(node, m), why)});
    history.push_back(Move::kContinue);
  }
  return answers;
}

}  // namespace

SimulatedParticipant SimulateParticipant(const AgentProfile& profile,
                                         int index,
                                         const CohortConfig& config) {
  SimulatedParticipant out;
  out.index = index;
  out.session_id = fmt::format("sim{:04d}", index + 1);
  out.profile = profile;
  out.group = AssignGroup(config.seed, index);
  out.seed = DeriveSeed(config.seed, "participant", index);

  SessionConfig session_config = config.session;
  session_config.seed = DeriveSeed(out.seed, "session");
  const Agent agent(profile, DeriveSeed(out.seed, "agent"));
  const std::uint64_t decision_seed = DeriveSeed(out.seed, "decisions");

  LogicalClock clock;
  Session s = Session::Create(
      out.session_id,
      fmt::format("{}-{}", AgentKindName(profile.kind), index + 1), out.group,
      session_config, clock);
  for (bool done = false; !done;) {
    switch (s.awaiting()) {
      case Awaiting::kNext:
        s.Next(clock);
        break;
      case Awaiting::kChoice: {
        const int g = *s.active_game();
        const int node = *s.participant_node();
        const GameTree& tree = s.slots()[g].tree;
        const Move m =
            agent.Decide(tree, node, s.records()[g].moves,
                         DeriveSeed(decision_seed, tree.name(),
                                    static_cast<std::uint64_t>(g) * 64 + node));
        s.Choose(node, tree.ActionLabel(node, m), clock);
        break;
      }
      case Awaiting::kAnswer: {
        const QuestionRecord& q = *s.pending_question();
        const GameTree& tree = s.slots()[q.game_index].tree;
        const std::optional<Move> guess = agent.PredictOpponent(tree, q.node);
        int option = 2;
        if (guess) {
          const std::string& label = tree.ActionLabel(q.node, *guess);
          option = static_cast<int>(
              std::find(q.meanings.begin(), q.meanings.end(), label) -
              q.meanings.begin());
        }
        s.Answer(q.id, option, clock);
        break;
      }
      case Awaiting::kFinal: {
        const int n = static_cast<int>(s.finals().size()) + 1;
        s.SubmitFinal(n, Questionnaire(agent, DeriveSeed(out.seed, "final", n)),
                      clock);
        break;
      }
      case Awaiting::kPayment:
        s.DrawPayment(std::nullopt, clock);
        break;
      case Awaiting::kNothing:
        done = true;
        break;
    }
  }
  out.events = s.events();
  return out;
}

std::vector<SimulatedParticipant> SimulateCohort(
    const std::vector<AgentProfile>& profiles, const CohortConfig& config) {
  if (profiles.empty()) throw InvalidArgument("cohort needs a profile");
  config.session.Validate();
  std::vector<SimulatedParticipant> out(profiles.size());
  int threads = config.threads > 0
                    ? config.threads
                    : static_cast<int>(std::thread::hardware_concurrency());
  threads = std::clamp(threads, 1, static_cast<int>(profiles.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto work = [&] {
    for (std::size_t i; (i = next++) < profiles.size();) {
      try {
        out[i] = SimulateParticipant(profiles[i], static_cast<int>(i), config);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mu);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

}  // namespace marbledrop
