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

#include <algorithm>
#include <limits>
#include <set>

#include "coordlearn/config.h"
#include "coordlearn/kbformat.h"

namespace coordlearn {

std::string AgentId::ToString() const {
  return "(" + predicate.str() + "," + std::to_string(position) + ")";
}

std::string LearningRequest::ToString() const {
  return "(" + predicate.str() + " " + c1.str() + " " + c2.str() + ")";
}

std::vector<std::size_t> GameStructure::ActionCounts() const {
  std::vector<std::size_t> out;
  for (const ActionSet& a : agents) out.push_back(a.actions.size());
  return out;
}

std::uint64_t GameStructure::JointActionCount() const {
  std::uint64_t m = 1;
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  for (const ActionSet& a : agents) {
    const std::uint64_t n = a.actions.size();
    if (n != 0 && m > kMax / n) return kMax;
    m *= n;
  }
  return m;
}

JointAction GameStructure::ToJointAction(const Profile& profile) const {
  if (profile.size() != agents.size()) {
    throw GameError("profile has " + std::to_string(profile.size()) + " entries, roster has " +
                    std::to_string(agents.size()));
  }
  JointAction out;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    if (profile[i] >= agents[i].actions.size()) {
      throw GameError("action index out of range for agent " + agents[i].agent.ToString());
    }
    out.emplace(agents[i].agent, agents[i].actions[profile[i]]);
  }
  return out;
}

Profile GameStructure::ToProfile(const JointAction& joint) const {
  Profile out;
  out.reserve(agents.size());
  for (const ActionSet& a : agents) {
    auto it = joint.find(a.agent);
    if (it == joint.end()) {
      throw GameError("partial joint action: no choice for agent " + a.agent.ToString());
    }
    auto pos = std::find(a.actions.begin(), a.actions.end(), it->second);
    if (pos == a.actions.end()) {
      throw GameError("agent " + a.agent.ToString() + " cannot choose " + it->second.str());
    }
    out.push_back(static_cast<std::size_t>(pos - a.actions.begin()));
  }
  if (joint.size() != agents.size()) throw GameError("joint action names agents outside the roster");
  return out;
}

GameStructure BuildAgents(const KnowledgeBase& kb, std::span<const HornClause> axioms,
                          std::span<const QuestionTemplate> templates,
                          std::size_t specificity_threshold, int max_depth) {
  std::set<LeafPredicate> leaves;
  for (const QuestionTemplate& t : templates) {
    leaves.merge(ExtractLeafPredicates(axioms, t.pattern, max_depth, &kb));
  }
  std::vector<LeafPredicate> ordered(leaves.begin(), leaves.end());
  std::sort(ordered.begin(), ordered.end(), [](const LeafPredicate& a, const LeafPredicate& b) {
    return a.predicate.name() < b.predicate.name();
  });

  GameStructure game;
  const std::vector<Symbol> collections = kb.Collections();
  for (const LeafPredicate& leaf : ordered) {
    if (leaf.arity != 2) {
      game.skipped_leaves.push_back(leaf);
      continue;
    }
    for (int position : {1, 2}) {
      ActionSet set{{leaf.predicate, position}, {}};
      const std::vector<Symbol> constraints = kb.ArgIsa(leaf.predicate, position);
      for (Symbol c : collections) {
        if (!kb.IsSpecific(c, specificity_threshold)) continue;
        const SymbolSet& members = kb.InstancesOf(c);
        const bool fits = std::all_of(constraints.begin(), constraints.end(), [&](Symbol bound) {
          const SymbolSet& allowed = kb.InstancesOf(bound);
          return std::includes(allowed.begin(), allowed.end(), members.begin(), members.end());
        });
        if (fits) set.actions.push_back(c);
      }
      if (set.actions.empty()) {
        throw GameError("agent " + set.agent.ToString() +
                        " has no specific collection under threshold " +
                        std::to_string(specificity_threshold));
      }
      game.agents.push_back(std::move(set));
    }
  }
  if (game.agents.empty()) {
    throw GameError("empty roster: no binary leaf predicate is reachable from the templates");
  }
  return game;
}

std::vector<LearningRequest> JointActionToRequests(const GameStructure& game,
                                                   const JointAction& joint) {
  return ProfileToRequests(game, game.ToProfile(joint));
}

std::vector<LearningRequest> ProfileToRequests(const GameStructure& game, const Profile& profile) {
  const JointAction joint = game.ToJointAction(profile);
  std::vector<LearningRequest> out;
  for (const ActionSet& a : game.agents) {
    if (a.agent.position != 1) continue;
    out.push_back({a.agent.predicate, joint.at(a.agent), joint.at({a.agent.predicate, 2})});
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::size_t> PayoffMatrix::ActionCounts() const {
  std::vector<std::size_t> out;
  for (const auto& a : actions) out.push_back(a.size());
  return out;
}

bool PayoffMatrix::IsTotal() const {
  std::uint64_t m = 1;
  for (const auto& a : actions) m *= a.size();
  return payoffs.size() == m && !actions.empty();
}

bool PayoffMatrix::IsCoordinationGame() const {
  return std::all_of(payoffs.begin(), payoffs.end(), [](const auto& entry) {
    const auto& u = entry.second;
    return std::all_of(u.begin(), u.end(), [&](double x) { return x == u.front(); });
  });
}

PayoffMatrix PayoffMatrix::SharedReduction() const {
  PayoffMatrix out = *this;
  for (auto& [joint, u] : out.payoffs) std::fill(u.begin(), u.end(), u.front());
  return out;
}

PayoffMatrix PayoffMatrix::Parse(std::string_view text) {
  const ConfigFile cfg = ConfigFile::Parse(text);
  static constexpr std::string_view kKnown[] = {"agents", "actions", "payoff"};
  cfg.RequireKnown(kKnown);

  PayoffMatrix m;
  m.agents = SplitWords(cfg.GetString("agents", ""));
  if (m.agents.empty()) throw ConfigError("agents", "no agents listed");
  for (const std::string& line : cfg.GetAll("actions")) m.actions.push_back(SplitWords(line));
  if (m.actions.size() != m.agents.size()) {
    throw ConfigError("actions", "expected one line per agent (" + std::to_string(m.agents.size()) + ")");
  }
  for (const std::string& line : cfg.GetAll("payoff")) {
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ConfigError("payoff", "missing ':' in '" + line + "'");
    const auto names = SplitWords(line.substr(0, colon));
    const auto values = SplitWords(line.substr(colon + 1));
    if (names.size() != m.agents.size() || values.size() != m.agents.size()) {
      throw ConfigError("payoff", "wrong number of entries in '" + line + "'");
    }
    Profile joint;
    for (std::size_t i = 0; i < names.size(); ++i) {
      auto pos = std::find(m.actions[i].begin(), m.actions[i].end(), names[i]);
      if (pos == m.actions[i].end()) throw ConfigError("payoff", "unknown action '" + names[i] + "'");
      joint.push_back(static_cast<std::size_t>(pos - m.actions[i].begin()));
    }
    std::vector<double> u;
    for (const std::string& v : values) {
      try {
        u.push_back(std::stod(v));
      } catch (const std::exception&) {
        throw ConfigError("payoff", "not a number: '" + v + "'");
      }
    }
    if (!m.payoffs.emplace(joint, u).second) {
      throw ConfigError("payoff", "duplicate joint action in '" + line + "'");
    }
  }
  if (!m.IsTotal()) throw ConfigError("payoff", "payoffs do not cover every joint action");
  return m;
}

PayoffMatrix PayoffMatrix::Load(const std::filesystem::path& path) {
  try {
    return Parse(ReadTextFile(path));
  } catch (const ConfigError& e) {
    throw ConfigError(e.key(), path.string() + ": " + e.what());
  }
}

std::string PayoffMatrix::ToText() const {
  auto join = [](const std::vector<std::string>& words) {
    std::string out;
    for (const auto& w : words) out += (out.empty() ? "" : " ") + w;
    return out;
  };
  std::string out = "agents = " + join(agents) + "\n";
  for (const auto& a : actions) out += "actions = " + join(a) + "\n";
  for (const auto& [joint, u] : payoffs) {
    out += "payoff =";
    for (std::size_t i = 0; i < joint.size(); ++i) out += " " + actions[i][joint[i]];
    out += " :";
    for (double x : u) {
      std::string s = std::to_string(x);
      s.erase(s.find_last_not_of('0') + 1);
      if (!s.empty() && s.back() == '.') s.pop_back();
      out += " " + s;
    }
    out += "\n";
  }
  return out;
}

PayoffMatrix PayoffMatrix::BattleOfSexes() {
  PayoffMatrix m;
  m.agents = {"wife", "husband"};
  m.actions = {{"LW", "WL"}, {"LW", "WL"}};
  m.payoffs = {{{0, 0}, {2, 1}}, {{0, 1}, {0, 0}}, {{1, 0}, {0, 0}}, {{1, 1}, {1, 2}}};
  return m;
}

MatrixGame::MatrixGame(PayoffMatrix payoffs) : payoffs_(std::move(payoffs)) {
  if (!payoffs_.IsTotal()) throw GameError("payoff matrix is not total");
}

const std::vector<double>& MatrixGame::Payoffs(const Profile& joint) const {
  auto it = payoffs_.payoffs.find(joint);
  if (it == payoffs_.payoffs.end()) throw GameError("unknown joint action");
  return it->second;
}

}  // namespace coordlearn
