// Copyright 2026 The CoordLearn Authors
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

#include "coordlearn/learners.h"

#include <cmath>
#include <numeric>

#include <gtest/gtest.h>

#include "coordlearn/synthgen.h"

namespace coordlearn {
namespace {

Symbol S(std::string_view name) { return Symbol::Intern(name); }

constexpr std::size_t kLW = 0;
constexpr std::size_t kWL = 1;

JalParams Greedy(double alpha = 0.5) { return {alpha, 0.0, 0.0, JalRule::kOpponentModel}; }

// Wife's view of the worked example: husband seen LW 3 times, WL once.
JalAgent WorkedExample(JalRule rule = JalRule::kOpponentModel) {
  JalAgent wife(0, {2, 2}, {0.5, 0.0, 0.0, rule});
  wife.AddObservation(0, {kLW, kLW}, 3);
  wife.AddObservation(0, {kLW, kWL}, 1);
  wife.SetQ(0, {kLW, kLW}, 2);
  wife.SetQ(0, {kLW, kWL}, 0);
  wife.SetQ(0, {kWL, kLW}, 0);
  wife.SetQ(0, {kWL, kWL}, 1);
  return wife;
}

TEST(JalAgentTest, ExpectedValueWorkedExample) {
  const JalAgent wife = WorkedExample();
  EXPECT_DOUBLE_EQ(wife.ExpectedValue(0, kLW), 1.5);
  EXPECT_DOUBLE_EQ(wife.ExpectedValue(0, kWL), 0.25);
  EXPECT_DOUBLE_EQ(wife.Value(0), 1.5);
  Rng rng(1);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(wife.SelectAction(0, rng), kLW);
}

TEST(JalAgentTest, LiteralRuleUsesOwnCounts) {
  const JalAgent wife = WorkedExample(JalRule::kLiteral);
  // Own action LW was played 4 times out of 4: 4/4 * (2 + 0); WL never.
  EXPECT_DOUBLE_EQ(wife.ExpectedValue(0, kLW), 2.0);
  EXPECT_DOUBLE_EQ(wife.ExpectedValue(0, kWL), 0.0);
}

TEST(JalAgentTest, UniformBeliefWhenUnvisited) {
  JalAgent a(0, {2, 2}, Greedy());
  a.SetQ(7, {kLW, kLW}, 2);
  a.SetQ(7, {kLW, kWL}, 0);
  EXPECT_EQ(a.Visits(7), 0u);
  EXPECT_DOUBLE_EQ(a.ExpectedValue(7, kLW), 1.0);
  EXPECT_DOUBLE_EQ(a.Value(99), 0.0);
}

TEST(JalAgentTest, SingleActionAlwaysChosen) {
  JalAgent a(0, {1, 3}, {0.5, 0.0, 1.0, JalRule::kOpponentModel});
  Rng rng(3);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(a.SelectAction(0, rng), 0u);
}

TEST(JalAgentTest, TiesBrokenUniformly) {
  constexpr std::size_t kActions = 4;
  constexpr int kDraws = 10000;
  JalAgent a(0, {kActions, 2}, Greedy());
  Rng rng(2024);
  std::vector<int> hits(kActions, 0);
  for (int i = 0; i < kDraws; ++i) ++hits[a.SelectAction(0, rng)];
  const double p = 1.0 / kActions;
  const double mean = kDraws * p;
  const double sigma = std::sqrt(kDraws * p * (1 - p));
  for (int h : hits) EXPECT_NEAR(h, mean, 3 * sigma);
}

TEST(JalAgentTest, EpsilonOneIsUniform) {
  const JalAgent base = WorkedExample();
  JalAgent a = base;
  a.set_epsilon(1.0);
  Rng rng(5);
  int lw = 0;
  constexpr int kDraws = 10000;
  for (int i = 0; i < kDraws; ++i) lw += a.SelectAction(0, rng) == kLW;
  EXPECT_NEAR(lw, kDraws / 2, 3 * std::sqrt(kDraws * 0.25));
}

TEST(JalAgentTest, UpdateRule) {
  JalAgent a(0, {2, 2}, Greedy(0.5));
  a.Update(0, {kLW, kLW}, 42, 0);
  EXPECT_DOUBLE_EQ(a.Q(0, {kLW, kLW}), 21);
  a.Update(0, {kWL, kWL}, 0, 0);
  EXPECT_DOUBLE_EQ(a.Q(0, {kWL, kWL}), 0);
  JalAgent full(0, {2, 2}, Greedy(1.0));
  full.SetQ(0, {kLW, kWL}, 3);
  full.Update(0, {kLW, kWL}, 7, 0);
  EXPECT_DOUBLE_EQ(full.Q(0, {kLW, kWL}), 7);
  EXPECT_EQ(full.Count(0, {kWL}), 1u);
  EXPECT_EQ(full.OwnCount(0, kLW), 1u);
  EXPECT_EQ(full.Visits(0), 1u);
}

TEST(JalAgentTest, DiscountedUpdateUsesNextValue) {
  JalAgent a(0, {2, 2}, {0.5, 0.5, 0.0, JalRule::kOpponentModel});
  a.AddObservation(1, {kLW, kLW}, 1);
  a.SetQ(1, {kLW, kLW}, 10);
  a.Update(0, {kLW, kLW}, 2, 1);
  // 0.5 * 0 + 0.5 * (2 + 0.5 * 10)
  EXPECT_DOUBLE_EQ(a.Q(0, {kLW, kLW}), 3.5);
}

TEST(JalAgentTest, InvariantsUnderRandomPlay) {
  Rng rng(17);
  JalAgent a(1, {3, 2, 2}, {0.5, 0.0, 0.2, JalRule::kOpponentModel});
  constexpr double kMaxReward = 9;
  for (int i = 0; i < 2000; ++i) {
    const StateId s = rng() % 3;
    Profile joint{rng() % 3, a.SelectAction(s, rng), rng() % 2};
    a.Update(s, joint, std::uniform_real_distribution<double>(0, kMaxReward)(rng), s);
  }
  for (StateId s = 0; s < 3; ++s) {
    std::uint64_t total = 0;
    double belief = 0;
    for (const auto& [others, c] : a.Counts(s)) {
      total += c;
      belief += static_cast<double>(c) / static_cast<double>(a.Visits(s));
      for (std::size_t own = 0; own < 2; ++own) {
        Profile joint{others[0], own, others[1]};
        EXPECT_GE(a.Q(s, joint), 0);
        EXPECT_LE(a.Q(s, joint), kMaxReward);
      }
    }
    EXPECT_EQ(total, a.Visits(s));
    EXPECT_NEAR(belief, 1.0, 1e-12);
  }
}

PayoffMatrix Scaled(const PayoffMatrix& m, double k) {
  PayoffMatrix out = m;
  for (auto& [joint, u] : out.payoffs)
    for (double& v : u) v *= k;
  return out;
}

TEST(JalAgentTest, ArgmaxScaleInvariance) {
  const auto bos = PayoffMatrix::BattleOfSexes();
  const JalParams params{0.5, 0.0, 0.05, JalRule::kOpponentModel};
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto ref = SelfPlay(MatrixGame(bos), params, 300, seed).history;
    for (double k : {0.25, 3.0, 1000.0})
      EXPECT_EQ(SelfPlay(MatrixGame(Scaled(bos, k)), params, 300, seed).history, ref) << k;
  }
}

TEST(JalAgentTest, Deterministic) {
  const MatrixGame game(PayoffMatrix::BattleOfSexes());
  const JalParams params{0.5, 0.0, 0.05, JalRule::kOpponentModel};
  EXPECT_EQ(SelfPlay(game, params, 500, 9).history, SelfPlay(game, params, 500, 9).history);
  EXPECT_NE(SelfPlay(game, params, 500, 9).history, SelfPlay(game, params, 500, 10).history);
}

TEST(SelfPlayTest, SharedRewardCoordinationConverges) {
  const MatrixGame game(PayoffMatrix::BattleOfSexes().SharedReduction());
  const JalParams params{0.5, 0.0, 0.05, JalRule::kOpponentModel};
  const auto nash = PureNashEquilibria(game.matrix());
  int converged = 0;
  for (std::uint64_t seed = 1; seed <= 20; ++seed) {
    const auto h = SelfPlay(game, params, 2000, seed, true).history;
    converged += MostFrequentInTail(h, 200, nash).fraction >= 0.85;
  }
  EXPECT_GE(converged, 16);
}

TEST(NashTest, BattleOfSexes) {
  EXPECT_EQ(PureNashEquilibria(PayoffMatrix::BattleOfSexes()),
            (std::vector<Profile>{{kLW, kLW}, {kWL, kWL}}));
}

TEST(TailTest, MostFrequent) {
  std::vector<Profile> h{{0, 1}, {0, 0}, {1, 1}, {1, 1}, {0, 0}, {1, 1}};
  const std::vector<Profile> nash{{0, 0}, {1, 1}};
  auto t = MostFrequentInTail(h, 4, nash);
  EXPECT_EQ(t.profile, (Profile{1, 1}));
  EXPECT_DOUBLE_EQ(t.fraction, 0.75);
  EXPECT_DOUBLE_EQ(MostFrequentInTail(h, 100, nash).fraction, 0.5);
}

TEST(EpsilonScheduleTest, ConstantAndLinear) {
  EXPECT_DOUBLE_EQ((EpsilonSchedule{0.05, 0.0, false}.At(400, 500)), 0.05);
  const EpsilonSchedule lin{0.2, 0.0, true};
  EXPECT_DOUBLE_EQ(lin.At(0, 5), 0.2);
  EXPECT_DOUBLE_EQ(lin.At(2, 5), 0.1);
  EXPECT_DOUBLE_EQ(lin.At(4, 5), 0.0);
}

LearningRequest R(std::string_view c) { return {S("p"), S(c), S(c)}; }

TEST(BaselineLearnerTest, PicksHighestYield) {
  BaselineLearner b(0.0);
  b.Update(R("A"), 100);
  b.Update(R("B"), 5);
  const std::vector<LearningRequest> cands{R("B"), R("A"), R("C")};
  Rng rng(1);
  for (int i = 0; i < 20; ++i) EXPECT_EQ(b.Select(cands, rng), R("A"));
  b.Update(R("A"), 0);
  EXPECT_EQ(b.Greedy(cands, rng), R("A"));
}

TEST(BaselineLearnerTest, UniformWhenTiedOrExploring) {
  const std::vector<LearningRequest> cands{R("A"), R("B")};
  constexpr int kDraws = 10000;
  const double tol = 3 * std::sqrt(kDraws * 0.25);
  BaselineLearner fresh(0.0);
  BaselineLearner explore(1.0);
  explore.Update(R("A"), 1000);
  Rng rng(8);
  int fresh_a = 0, explore_a = 0;
  for (int i = 0; i < kDraws; ++i) {
    fresh_a += fresh.Select(cands, rng) == R("A");
    explore_a += explore.Select(cands, rng) == R("A");
  }
  EXPECT_NEAR(fresh_a, kDraws / 2, tol);
  EXPECT_NEAR(explore_a, kDraws / 2, tol);
}

TEST(BaselineLearnerTest, YieldAccumulates) {
  BaselineLearner b(0.05);
  EXPECT_EQ(b.Yield(R("A")), 0u);
  b.Update(R("A"), 10);
  EXPECT_EQ(b.history().at(R("A")), 10u);
  b.Update(R("A"), 5);
  EXPECT_EQ(b.Yield(R("A")), 15u);
}

TEST(BaselinePolicyTest, PicksPerPredicate) {
  const auto fixture = BirthplaceFixture();
  const auto g = BuildAgents(fixture.kb, fixture.axioms, fixture.templates, kBirthplaceThreshold);
  BaselinePolicy policy(g, 0.0);
  Rng rng(4);
  const Profile first = policy.Act(0, rng);
  ASSERT_EQ(first.size(), g.size());
  Feedback fb;
  fb.joint = first;
  fb.rewards = {0};
  fb.facts_per_request = {7, 0};
  policy.Observe(fb);
  const auto reqs = ProfileToRequests(g, first);
  EXPECT_EQ(policy.learner().Yield(reqs[0]), 7u);
  // Only the bornIn request has yield, so its pair is kept.
  for (int i = 0; i < 10; ++i) {
    const Profile p = policy.Greedy(0, rng);
    EXPECT_EQ(p[0], first[0]);
    EXPECT_EQ(p[1], first[1]);
  }
}

TEST(BaselinePolicyTest, RejectsUnpairedRoster) {
  GameStructure g;
  g.agents.push_back({{S("p"), 1}, {S("A")}});
  EXPECT_THROW(BaselinePolicy(g, 0.05), GameError);
}

}  // namespace
}  // namespace coordlearn
