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

#ifndef COORDLEARN_GAME_H_
#define COORDLEARN_GAME_H_

#include <compare>
#include <cstdint>
#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "coordlearn/errors.h"
#include "coordlearn/kbstore.h"
#include "coordlearn/reasoner.h"
#include "coordlearn/types.h"

namespace coordlearn {

class GameError : public Error {
 public:
  using Error::Error;
};

// One player per argument position of a binary leaf predicate.
struct AgentId {
  Symbol predicate;
  int position = 1;  // 1 or 2

  std::string ToString() const;
  friend auto operator<=>(const AgentId&, const AgentId&) = default;
};

struct ActionSet {
  AgentId agent;
  std::vector<Symbol> actions;  // sorted by name
};

// (pred C1 C2): fetch every pred fact whose arguments are instances of C1
// and C2.
struct LearningRequest {
  Symbol predicate;
  Symbol c1;
  Symbol c2;

  std::string ToString() const;
  friend auto operator<=>(const LearningRequest&, const LearningRequest&) = default;
};

using JointAction = std::map<AgentId, Symbol>;

// Action indices, one per agent in roster order.
using Profile = std::vector<std::size_t>;

struct GameStructure {
  std::vector<ActionSet> agents;
  std::vector<LeafPredicate> skipped_leaves;  // non-binary leaves

  std::size_t size() const { return agents.size(); }
  std::vector<std::size_t> ActionCounts() const;
  // Product of the action-set sizes, saturating at UINT64_MAX.
  std::uint64_t JointActionCount() const;

  JointAction ToJointAction(const Profile& profile) const;
  // Throws GameError unless `joint` chooses a legal action for every agent.
  Profile ToProfile(const JointAction& joint) const;
};

// Roster: both positions of every binary predicate returned by
// ExtractLeafPredicates for any template, ordered by predicate name. Each
// action set holds every collection that is specific under `threshold` and
// whose instances fall inside every argIsa collection for that position.
GameStructure BuildAgents(const KnowledgeBase& kb, std::span<const HornClause> axioms,
                          std::span<const QuestionTemplate> templates,
                          std::size_t specificity_threshold, int max_depth = 5);

// One request per predicate, pairing its position-1 and position-2 choices.
std::vector<LearningRequest> JointActionToRequests(const GameStructure& game,
                                                   const JointAction& joint);
std::vector<LearningRequest> ProfileToRequests(const GameStructure& game,
                                               const Profile& profile);

// Explicit normal-form game with per-agent utilities.
struct PayoffMatrix {
  std::vector<std::string> agents;
  std::vector<std::vector<std::string>> actions;     // per agent
  std::map<Profile, std::vector<double>> payoffs;    // per-agent utilities

  std::vector<std::size_t> ActionCounts() const;
  bool IsTotal() const;
  // u_i(a) == u_j(a) for every joint action.
  bool IsCoordinationGame() const;
  // Every agent receives the first agent's utility.
  PayoffMatrix SharedReduction() const;

  // Line format (key = value, '#' comments):
  //   agents = wife husband
  //   actions = LW WL          one line per agent, in agent order
  //   payoff = LW LW : 2 1     one line per joint action
  static PayoffMatrix Parse(std::string_view text);
  static PayoffMatrix Load(const std::filesystem::path& path);
  std::string ToText() const;

  static PayoffMatrix BattleOfSexes();
};

// Stage-game environment over a total PayoffMatrix.
class MatrixGame {
 public:
  explicit MatrixGame(PayoffMatrix payoffs);

  const PayoffMatrix& matrix() const { return payoffs_; }
  std::size_t num_agents() const { return payoffs_.agents.size(); }
  std::vector<std::size_t> ActionCounts() const { return payoffs_.ActionCounts(); }

  // Per-agent utilities. Throws GameError for an unknown joint action.
  const std::vector<double>& Payoffs(const Profile& joint) const;
  double SharedPayoff(const Profile& joint) const { return Payoffs(joint).front(); }

 private:
  PayoffMatrix payoffs_;
};

}  // namespace coordlearn

#endif  // COORDLEARN_GAME_H_
