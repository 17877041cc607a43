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

#include "coordlearn/game.h"

#include <set>

#include <gtest/gtest.h>

#include "coordlearn/kbformat.h"
#include "coordlearn/scenario.h"
#include "coordlearn/synthgen.h"

namespace coordlearn {
namespace {

Symbol S(std::string_view name) { return Symbol::Intern(name); }

Scenario Parse(std::string_view text) { return Scenario::FromStatements(ParseKb(text)); }

// Person/location roster with two leaf predicates.
const char* const kRoster =
    "(<= (bornInCountry ?person ?country) (objectFoundInLocation ?person ?city)"
    " (cityInCountry ?city ?country))\n"
    "(template whereFrom (bornInCountry ?P ?ans) Person ?ans)\n"
    "(isa Feynman Person) (isa Curie Person) (isa NYC City) (isa Paris City)\n"
    "(isa USA Country) (isa France Country)\n"
    "(genls Person Thing) (genls City Thing) (genls Country Thing)\n";

TEST(BuildAgentsTest, OneAgentPerArgumentPosition) {
  const auto sc = Parse(kRoster);
  const auto g = BuildAgents(sc.kb, sc.axioms, sc.templates, 5);
  ASSERT_EQ(g.size(), 4u);
  std::set<AgentId> ids;
  for (const auto& a : g.agents) ids.insert(a.agent);
  EXPECT_EQ(ids, (std::set<AgentId>{{S("objectFoundInLocation"), 1},
                                    {S("objectFoundInLocation"), 2},
                                    {S("cityInCountry"), 1},
                                    {S("cityInCountry"), 2}}));
  for (const auto& a : g.agents) {
    EXPECT_FALSE(a.actions.empty());
    for (Symbol c : a.actions) EXPECT_TRUE(sc.kb.IsSpecific(c, 5));
    EXPECT_TRUE(std::is_sorted(a.actions.begin(), a.actions.end(), ByName{}));
    // Thing has 6 instances and is filtered out.
    EXPECT_EQ(std::count(a.actions.begin(), a.actions.end(), S("Thing")), 0);
  }
}

TEST(BuildAgentsTest, RootIsLeafWithoutAxioms) {
  const auto sc = Parse(
      "(template whereBorn (bornIn ?P ?ans) Person ?ans) (isa Feynman Person) (isa NYC City)");
  const auto g = BuildAgents(sc.kb, sc.axioms, sc.templates, 5);
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g.agents[0].agent, (AgentId{S("bornIn"), 1}));
  EXPECT_EQ(g.agents[1].agent, (AgentId{S("bornIn"), 2}));
}

TEST(BuildAgentsTest, ThresholdOneEmptiesActionSets) {
  const auto sc = Parse(kRoster);
  try {
    BuildAgents(sc.kb, sc.axioms, sc.templates, 1);
    FAIL();
  } catch (const GameError& e) {
    EXPECT_NE(std::string(e.what()).find("(cityInCountry,1)"), std::string::npos) << e.what();
  }
}

TEST(BuildAgentsTest, EmptyRoster) {
  const auto sc = Parse(
      "(<= (likes ?x ?y) (u ?x) (v ?y))\n(template t (likes ?P ?ans) Person ?ans) (isa A Person)");
  EXPECT_THROW(BuildAgents(sc.kb, sc.axioms, sc.templates, 5), GameError);
}

TEST(BuildAgentsTest, NonBinaryLeavesSkipped) {
  const auto sc = Parse(
      "(<= (q ?x ?y) (r ?x ?y) (u ?x))\n(template t (q ?P ?ans) Person ?ans) (isa A Person)");
  const auto g = BuildAgents(sc.kb, sc.axioms, sc.templates, 5);
  EXPECT_EQ(g.size(), 2u);
  EXPECT_EQ(g.skipped_leaves, (std::vector<LeafPredicate>{{S("u"), 1}}));
}

TEST(BuildAgentsTest, ArgIsaFilters) {
  const auto fixture = BirthplaceFixture();
  const auto g = BuildAgents(fixture.kb, fixture.axioms, fixture.templates, kBirthplaceThreshold);
  ASSERT_EQ(g.size(), 4u);
  const SymbolSet& cities = fixture.kb.InstancesOf(S("City"));
  for (const auto& a : g.agents) {
    if (a.agent == AgentId{S("bornIn"), 2}) {
      for (Symbol c : a.actions) {
        const auto& m = fixture.kb.InstancesOf(c);
        EXPECT_TRUE(std::includes(cities.begin(), cities.end(), m.begin(), m.end())) << c.name();
      }
      EXPECT_NE(std::find(a.actions.begin(), a.actions.end(), S("USCity")), a.actions.end());
      EXPECT_EQ(std::find(a.actions.begin(), a.actions.end(), S("USPhysicist")), a.actions.end());
    }
  }
}

TEST(GameStructureTest, JointActionCountIsProduct) {
  const auto fixture = BirthplaceFixture();
  const auto g = BuildAgents(fixture.kb, fixture.axioms, fixture.templates, kBirthplaceThreshold);
  std::uint64_t enumerated = 0;
  std::set<std::vector<LearningRequest>> distinct;
  Profile p(g.size(), 0);
  const auto counts = g.ActionCounts();
  while (true) {
    ++enumerated;
    distinct.insert(ProfileToRequests(g, p));
    EXPECT_EQ(g.ToProfile(g.ToJointAction(p)), p);
    std::size_t k = 0;
    while (k < p.size() && ++p[k] == counts[k]) p[k++] = 0;
    if (k == p.size()) break;
  }
  EXPECT_EQ(enumerated, g.JointActionCount());
  EXPECT_EQ(distinct.size(), enumerated);
}

TEST(RequestsTest, Pairing) {
  const auto fixture = BirthplaceFixture();
  const auto g = BuildAgents(fixture.kb, fixture.axioms, fixture.templates, kBirthplaceThreshold);
  JointAction joint{{{S("bornIn"), 1}, S("USPhysicist")},
                    {{S("bornIn"), 2}, S("USCity")},
                    {{S("cityInRegion"), 1}, S("USCity")},
                    {{S("cityInRegion"), 2}, S("US-State")}};
  const auto reqs = JointActionToRequests(g, joint);
  ASSERT_EQ(reqs.size(), 2u);
  EXPECT_EQ(reqs[0], (LearningRequest{S("bornIn"), S("USPhysicist"), S("USCity")}));
  EXPECT_EQ(reqs[1], (LearningRequest{S("cityInRegion"), S("USCity"), S("US-State")}));

  // argIsa forbids a city as the person argument.
  joint[{S("bornIn"), 1}] = S("USCity");
  EXPECT_THROW(JointActionToRequests(g, joint), GameError);
  joint[{S("bornIn"), 1}] = S("USPhysicist");

  joint.erase({S("bornIn"), 1});
  EXPECT_THROW(JointActionToRequests(g, joint), GameError);
}

TEST(RequestsTest, SameCollectionOnBothSides) {
  const auto sc = Parse(kRoster);
  const auto g = BuildAgents(sc.kb, sc.axioms, sc.templates, 5);
  JointAction joint;
  for (const auto& a : g.agents) joint[a.agent] = S("City");
  const auto reqs = JointActionToRequests(g, joint);
  ASSERT_EQ(reqs.size(), 2u);
  EXPECT_EQ(reqs[0], (LearningRequest{S("cityInCountry"), S("City"), S("City")}));
}

TEST(RequestsTest, ThreePredicatesThreeRequests) {
  const auto sc = Parse(
      "(<= (q ?a ?d) (r1 ?a ?b) (r2 ?b ?c) (r3 ?c ?d))\n(template t (q ?P ?ans) A ?ans)\n"
      "(isa x A) (isa y B)");
  const auto g = BuildAgents(sc.kb, sc.axioms, sc.templates, 5);
  EXPECT_EQ(g.size(), 6u);
  EXPECT_EQ(ProfileToRequests(g, Profile(6, 0)).size(), 3u);
}

TEST(PayoffMatrixTest, BattleOfSexes) {
  const MatrixGame game(PayoffMatrix::BattleOfSexes());
  EXPECT_EQ(game.Payoffs({0, 0}), (std::vector<double>{2, 1}));
  EXPECT_EQ(game.Payoffs({1, 1}), (std::vector<double>{1, 2}));
  EXPECT_EQ(game.Payoffs({0, 1}), (std::vector<double>{0, 0}));
  EXPECT_EQ(game.Payoffs({1, 0}), (std::vector<double>{0, 0}));
  const MatrixGame shared(game.matrix().SharedReduction());
  EXPECT_EQ(shared.SharedPayoff({0, 0}), 2);
  EXPECT_EQ(shared.SharedPayoff({1, 1}), 1);
  EXPECT_EQ(shared.SharedPayoff({0, 1}), 0);
  EXPECT_TRUE(shared.matrix().IsCoordinationGame());
  EXPECT_FALSE(game.matrix().IsCoordinationGame());
  EXPECT_THROW(game.Payoffs({2, 0}), GameError);
  EXPECT_THROW(game.Payoffs({0}), GameError);
}

TEST(PayoffMatrixTest, TextRoundTrip) {
  const auto bos = PayoffMatrix::BattleOfSexes();
  const auto parsed = PayoffMatrix::Parse(bos.ToText());
  EXPECT_EQ(parsed.agents, bos.agents);
  EXPECT_EQ(parsed.actions, bos.actions);
  EXPECT_EQ(parsed.payoffs, bos.payoffs);
}

TEST(PayoffMatrixTest, ShippedFixtureMatchesBuiltIn) {
  const auto loaded =
      PayoffMatrix::Load(std::filesystem::path(COORDLEARN_SOURCE_DIR) / "fixtures/battle_of_sexes.payoff");
  EXPECT_EQ(loaded.payoffs, PayoffMatrix::BattleOfSexes().payoffs);
  EXPECT_EQ(loaded.actions, PayoffMatrix::BattleOfSexes().actions);
}

TEST(PayoffMatrixTest, SingleActionGame) {
  const MatrixGame g(PayoffMatrix::Parse("agents = a b\nactions = X\nactions = Y\npayoff = X Y : 3 3\n"));
  EXPECT_EQ(g.SharedPayoff({0, 0}), 3);
}

TEST(PayoffMatrixTest, ParseErrorsNameKeys) {
  auto key_of = [](std::string_view text) {
    try {
      PayoffMatrix::Parse(text);
    } catch (const ConfigError& e) {
      return e.key();
    }
    return std::string("none");
  };
  EXPECT_EQ(key_of("actions = A\n"), "agents");
  EXPECT_EQ(key_of("agents = a b\nactions = A\n"), "actions");
  EXPECT_EQ(key_of("agents = a\nactions = A B\npayoff = A : 1\n"), "payoff");
  EXPECT_EQ(key_of("agents = a\nactions = A\npayoff = C : 1\n"), "payoff");
  EXPECT_EQ(key_of("agents = a\nactions = A\npayoff = A : x\n"), "payoff");
}

}  // namespace
}  // namespace coordlearn
