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


#include "marbledrop/agents.h"

#include <gtest/gtest.h>

#include <algorithm>

#include "marbledrop/catalog.h"
#include "marbledrop/errors.h"
#include "marbledrop/rng.h"
#include "oracles.h"

namespace marbledrop {
namespace {

using P = Player;

const std::vector<Move> kNoHistory;

std::vector<Move> Continues(int n) {
  return std::vector<Move>(n, Move::kContinue);
}

AgentProfile Profile(AgentKind kind) {
  AgentProfile p;
  p.kind = kind;
  return p;
}

AgentProfile RiskTom(double rho, int tom, double omega = 0.0) {
  AgentProfile p;
  p.kind = AgentKind::kRiskTom;
  p.rho = rho;
  p.tom_level = tom;
  p.omega = omega;
  return p;
}

Lottery Fifty(double x, double y) {
  return Lottery({{x, Rational(1, 2)}, {y, Rational(1, 2)}});
}

TEST(UtilityTest, HandExamples) {
  AgentProfile p;
  EXPECT_DOUBLE_EQ(Utility(4, 1, p), 4.0);
  p.omega = 1.0;
  EXPECT_DOUBLE_EQ(Utility(1, 6, p), 7.0);
  p.omega = -1.0;
  EXPECT_DOUBLE_EQ(Utility(1, 6, p), -5.0);
  for (double rho : {-0.5, 0.3, 1.0}) {
    EXPECT_NEAR(InverseRiskUtility(RiskUtility(3.7, rho), rho), 3.7, 1e-12);
  }
}

TEST(CertaintyEquivalentTest, HandExamples) {
  EXPECT_DOUBLE_EQ(CertaintyEquivalent(Fifty(1, 6), 0.0), 3.5);
  EXPECT_DOUBLE_EQ(CertaintyEquivalent(Fifty(1, 4), 0.0), 2.5);
  const Lottery sure({{3.0, Rational(1)}});
  for (double rho : {-2.0, -0.1, 0.0, 0.4, 3.0}) {
    EXPECT_NEAR(CertaintyEquivalent(sure, rho), 3.0, 1e-12);
  }
}

TEST(CertaintyEquivalentTest, StrictlyDecreasingInRho) {
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const double lo = rng.UniformInt(1, 3);
    const double hi = lo + rng.UniformInt(1, 3);
    const Lottery l({{lo, Rational(1, 3)}, {hi, Rational(2, 3)}});
    EXPECT_DOUBLE_EQ(CertaintyEquivalent(l, 0.0), l.ExpectedValue());
    double prev = CertaintyEquivalent(l, -2.0);
    for (double rho = -1.75; rho <= 2.0; rho += 0.25) {
      const double ce = CertaintyEquivalent(l, rho);
      EXPECT_LT(ce, prev) << rho;
      EXPECT_GE(ce, lo - 1e-12);
      EXPECT_LE(ce, hi + 1e-12);
      prev = ce;
    }
  }
}

TEST(LotteryTest, Validation) {
  EXPECT_THROW(Lottery({}), InvalidArgument);
  EXPECT_THROW(Lottery({{1.0, Rational(1, 2)}}), InvalidArgument);
  EXPECT_THROW(Lottery({{1.0, Rational(3, 2)}, {2.0, Rational(-1, 2)}}),
               InvalidArgument);
}

TEST(TomPredictTest, HandExamples) {
  const GameTree& g1 = CatalogGame(GameId::kG1);
  const AgentProfile neutral = RiskTom(0.0, 1);
  EXPECT_TRUE(ZeroOrderContinues(g1, 2));
  EXPECT_EQ(TomPredict(g1, 2, 1, neutral, P::kParticipant),
            MoveDistribution::Point(Move::kContinue));
  EXPECT_EQ(TomPredict(CatalogGame(GameId::kG1t), 1, 0, neutral,
                       P::kParticipant),
            MoveDistribution::Uniform());
  EXPECT_THROW(TomPredict(g1, 1, 1, neutral, P::kParticipant),
               InvalidArgument);
  EXPECT_THROW(TomPredict(g1, 2, 3, neutral, P::kParticipant),
               InvalidArgument);
}

// Level 2 in G2 at C's second node, worked by hand: the modeled C predicts
// P at the last node with the zero-order rule (best future 3 does not beat
// g's 4, so g), so continuing pays C 1 against e's 3; the prediction is e.
TEST(TomPredictTest, SecondOrderInG2) {
  const GameTree& g2 = CatalogGame(GameId::kG2);
  EXPECT_EQ(TomPredict(g2, 2, 2, RiskTom(0.0, 2), P::kParticipant),
            MoveDistribution::Point(Move::kExit));
  // Level 1 only looks at the best reachable payoff (6 > 3).
  EXPECT_EQ(TomPredict(g2, 2, 1, RiskTom(0.0, 1), P::kParticipant),
            MoveDistribution::Point(Move::kContinue));
}

TEST(DecideTest, HandExamples) {
  const GameTree& g1 = CatalogGame(GameId::kG1);
  const GameTree& g1t = CatalogGame(GameId::kG1t);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const Agent efr(Profile(AgentKind::kEfr), seed);
    EXPECT_EQ(efr.Decide(g1, 1, Continues(1), seed), Move::kContinue);
    const Agent bi(Profile(AgentKind::kBi), seed);
    EXPECT_EQ(bi.Decide(g1t, 0, kNoHistory, seed), Move::kExit);
  }
  // Predicted f then own g (4) beats c's 2.
  const Agent tom(RiskTom(0.0, 1), 1);
  EXPECT_EQ(tom.Decide(g1, 1, Continues(1), 0), Move::kContinue);
}

TEST(DecideTest, RejectsBadHistories) {
  const Agent a(Profile(AgentKind::kRandom), 1);
  const GameTree& g1 = CatalogGame(GameId::kG1);
  EXPECT_THROW(a.Decide(g1, 1, kNoHistory, 0), InvalidArgument);
  EXPECT_THROW(a.Decide(g1, 3, std::vector<Move>{Move::kContinue, Move::kExit,
                                                 Move::kContinue},
                        0),
               InvalidArgument);
  EXPECT_THROW(a.Decide(g1, 4, Continues(4), 0), InvalidArgument);
}

TEST(DecideTest, DeterministicWithoutTremble) {
  Rng rng(5);
  const std::vector<AgentProfile> profiles = {
      Profile(AgentKind::kBi),     Profile(AgentKind::kEfr),
      RiskTom(0.5, 2, 0.3),        RiskTom(-0.4, 1, -0.5),
      Profile(AgentKind::kRandom), [] {
        AgentProfile p;
        p.kind = AgentKind::kLevelK;
        p.k = 3;
        return p;
      }()};
  for (int i = 0; i < 100; ++i) {
    const GameTree t = testing::RandomSpineTree(rng, 5, false);
    for (const AgentProfile& prof : profiles) {
      const Agent a(prof, 42);
      const Agent b(prof, 42);
      for (int node = 0; node < t.num_nodes(); ++node) {
        EXPECT_EQ(a.Decide(t, node, Continues(node), 7),
                  b.Decide(t, node, Continues(node), 7));
      }
    }
  }
}

TEST(DecideTest, TrembleRate) {
  AgentProfile p = Profile(AgentKind::kBi);
  p.epsilon = 0.2;
  const GameTree& g1t = CatalogGame(GameId::kG1t);
  const Agent a(p, 3);
  int flips = 0;
  for (std::uint64_t s = 0; s < 2000; ++s) {
    flips += a.Decide(g1t, 0, kNoHistory, s) == Move::kContinue;
  }
  EXPECT_NEAR(flips / 2000.0, 0.2, 0.03);
}

TEST(DecideTest, RandomIsUniform) {
  const Agent a(Profile(AgentKind::kRandom), 3);
  int cont = 0;
  for (std::uint64_t s = 0; s < 4000; ++s) {
    cont += a.Decide(CatalogGame(GameId::kG1), 0, kNoHistory, s) ==
            Move::kContinue;
  }
  EXPECT_NEAR(cont / 4000.0, 0.5, 0.03);
}

// Positive affine rescaling of every payoff leaves risk-neutral choices
// unchanged, social weight included.
TEST(DecideTest, AffineRescalingKeepsTheArgmax) {
  Rng rng(17);
  for (int i = 0; i < 200; ++i) {
    const GameTree t = testing::RandomSpineTree(rng, 5, false);
    std::vector<DecisionNode> nodes(t.nodes().begin(), t.nodes().end());
    auto scale = [](Payoff p) {
      return Payoff{3 * p.computer + 2, 3 * p.participant + 2};
    };
    for (DecisionNode& n : nodes) n.exit_payoff = scale(n.exit_payoff);
    const GameTree u("scaled", nodes, scale(t.final_payoff()));
    AgentProfile lk;
    lk.kind = AgentKind::kLevelK;
    lk.k = 1 + i % 3;
    lk.omega = 0.5;
    for (const AgentProfile& prof :
         {RiskTom(0.0, 0, 0.25), RiskTom(0.0, 1, -0.5), RiskTom(0.0, 2), lk}) {
      const Agent a(prof, 1);
      for (int node = 0; node < t.num_nodes(); ++node) {
        EXPECT_EQ(a.Decide(t, node, Continues(node), 0),
                  a.Decide(u, node, Continues(node), 0))
            << SerializeTree(t) << node;
      }
    }
  }
}

TEST(DecideTest, LevelOneMatchesUniformRiskNeutralTom) {
  Rng rng(23);
  AgentProfile lk;
  lk.kind = AgentKind::kLevelK;
  lk.k = 1;
  const Agent level_one(lk, 1);
  const Agent tom(RiskTom(0.0, 0), 1);
  for (int i = 0; i < 300; ++i) {
    const GameTree t = testing::RandomSpineTree(rng, 5, false);
    for (int node = 0; node < t.num_nodes(); ++node) {
      EXPECT_EQ(level_one.Decide(t, node, Continues(node), 0),
                tom.Decide(t, node, Continues(node), 0));
    }
  }
}

TEST(AgentTest, FixedPlansComeFromTheSolver) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    const Agent efr(Profile(AgentKind::kEfr), seed);
    const GameTree& g3 = CatalogGame(GameId::kG3);
    const Plan p = efr.FixedPlan(g3, P::kParticipant);
    const std::string s = RenderPlan(g3, p);
    EXPECT_TRUE(s == "d;g" || s == "d;h") << s;
    EXPECT_EQ(p, efr.FixedPlan(g3, P::kParticipant));
  }
  EXPECT_THROW(Agent(Profile(AgentKind::kRandom), 1)
                   .FixedPlan(CatalogGame(GameId::kG1), P::kParticipant),
               InvalidArgument);
}

TEST(AgentTest, PredictOpponent) {
  const GameTree& g1 = CatalogGame(GameId::kG1);
  EXPECT_EQ(Agent(Profile(AgentKind::kEfr), 1).PredictOpponent(g1, 2),
            std::nullopt);  // no EFR plan of C reaches its second node
  EXPECT_EQ(Agent(Profile(AgentKind::kBi), 1).PredictOpponent(g1, 0),
            Move::kExit);
  EXPECT_EQ(Agent(RiskTom(0.0, 1), 1).PredictOpponent(g1, 2), Move::kContinue);
  EXPECT_EQ(Agent(RiskTom(0.0, 2), 1).PredictOpponent(g1, 2), Move::kExit);
  EXPECT_EQ(Agent(RiskTom(0.0, 0), 1).PredictOpponent(g1, 2), std::nullopt);
  EXPECT_EQ(Agent(Profile(AgentKind::kRandom), 1).PredictOpponent(g1, 2),
            std::nullopt);
}

TEST(ProfileTest, ValidationAndParsing) {
  AgentProfile p;
  p.omega = 1.5;
  EXPECT_THROW(p.Validate(), InvalidArgument);
  p = AgentProfile{};
  p.epsilon = 1.0;
  EXPECT_THROW(p.Validate(), InvalidArgument);
  p = AgentProfile{};
  p.tom_level = 3;
  EXPECT_THROW(p.Validate(), InvalidArgument);

  const auto profiles = ParseProfiles(
      "# kind rho tom omega epsilon k count\n"
      "EFR 0 0 0 0 0 2\n"
      "RISK_TOM 0.5 2 -0.25 0.05 0 1\n");
  ASSERT_EQ(profiles.size(), 3u);
  EXPECT_EQ(profiles[0].kind, AgentKind::kEfr);
  EXPECT_EQ(profiles[2].tom_level, 2);
  EXPECT_DOUBLE_EQ(profiles[2].omega, -0.25);
  EXPECT_EQ(ParseProfiles(FormatProfile(profiles[2], 4)).size(), 4u);
  try {
    ParseProfiles("EFR 0 0 0 0 0 1\nWIZARD 0 0 0 0 0 1\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
  }
  EXPECT_THROW(ParseProfiles("EFR 0 0 0 0 0\n"), ParseError);
  EXPECT_THROW(ParseProfiles("EFR 0 0 2 0 0 1\n"), ParseError);
  EXPECT_THROW(ParseProfiles("# nothing\n"), ParseError);
}

}  // namespace
}  // namespace marbledrop
