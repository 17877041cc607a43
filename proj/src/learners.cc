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

#include <algorithm>
#include <cmath>

#include "coordlearn/errors.h"

namespace coordlearn {
namespace {

constexpr double kTieTolerance = 1e-9;

bool Tied(double a, double best) {
  return std::abs(a - best) <= kTieTolerance * std::max(1.0, std::abs(best));
}

// Index of a maximum of `values`, ties broken uniformly.
std::size_t ArgmaxRandomTie(const std::vector<double>& values, Rng& rng) {
  double best = *std::max_element(values.begin(), values.end());
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (Tied(values[i], best)) ties.push_back(i);
  }
  if (ties.size() == 1) return ties.front();
  std::uniform_int_distribution<std::size_t> pick(0, ties.size() - 1);
  return ties[pick(rng)];
}

bool Explore(double epsilon, Rng& rng) {
  if (epsilon <= 0.0) return false;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  return u(rng) < epsilon;
}

std::size_t UniformIndex(std::size_t n, Rng& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, n - 1);
  return pick(rng);
}

}  // namespace

JalAgent::JalAgent(std::size_t self, std::vector<std::size_t> action_counts, JalParams params)
    : self_(self), action_counts_(std::move(action_counts)), params_(params) {
  if (self_ >= action_counts_.size()) throw Error("JalAgent: agent index out of range");
  for (std::size_t i = 0; i < action_counts_.size(); ++i) {
    if (action_counts_[i] == 0) throw Error("JalAgent: empty action set");
    if (i != self_) num_other_profiles_ *= static_cast<double>(action_counts_[i]);
  }
}

Profile JalAgent::OthersOf(const Profile& joint) const {
  if (joint.size() != action_counts_.size()) throw Error("JalAgent: joint action has wrong size");
  Profile others;
  others.reserve(joint.size() - 1);
  for (std::size_t i = 0; i < joint.size(); ++i) {
    if (joint[i] >= action_counts_[i]) throw Error("JalAgent: action index out of range");
    if (i != self_) others.push_back(joint[i]);
  }
  return others;
}

JalAgent::StateTable& JalAgent::Table(StateId s) {
  auto& t = states_[s];
  if (t.own_counts.empty()) t.own_counts.assign(num_actions(), 0);
  return t;
}

const JalAgent::StateTable* JalAgent::FindTable(StateId s) const {
  auto it = states_.find(s);
  return it == states_.end() ? nullptr : &it->second;
}

JalAgent::Entry& JalAgent::EntryFor(StateTable& t, const Profile& others) {
  auto& e = t.by_others[others];
  if (e.q.empty()) e.q.assign(num_actions(), 0.0);
  return e;
}

double JalAgent::ExpectedValue(StateId s, std::size_t action) const {
  const StateTable* t = FindTable(s);
  if (t == nullptr) return 0.0;
  double sum = 0.0;
  if (t->visits == 0) {
    // Unobserved profiles hold Q = 0 and add nothing.
    for (const auto& [others, e] : t->by_others) sum += e.q[action];
    return sum / num_other_profiles_;
  }
  const double n = static_cast<double>(t->visits);
  if (params_.rule == JalRule::kLiteral) {
    for (const auto& [others, e] : t->by_others) sum += e.q[action];
    return static_cast<double>(t->own_counts[action]) / n * sum;
  }
  for (const auto& [others, e] : t->by_others) {
    if (e.count > 0) sum += static_cast<double>(e.count) / n * e.q[action];
  }
  return sum;
}

double JalAgent::Value(StateId s) const {
  if (FindTable(s) == nullptr) return 0.0;
  double best = ExpectedValue(s, 0);
  for (std::size_t a = 1; a < num_actions(); ++a) best = std::max(best, ExpectedValue(s, a));
  return best;
}

std::size_t JalAgent::SelectAction(StateId s, Rng& rng) const {
  if (num_actions() == 1) return 0;
  if (Explore(params_.epsilon, rng)) return UniformIndex(num_actions(), rng);
  return GreedyAction(s, rng);
}

std::size_t JalAgent::GreedyAction(StateId s, Rng& rng) const {
  if (num_actions() == 1) return 0;
  std::vector<double> ev(num_actions());
  for (std::size_t a = 0; a < ev.size(); ++a) ev[a] = ExpectedValue(s, a);
  return ArgmaxRandomTie(ev, rng);
}

void JalAgent::Update(StateId s, const Profile& joint, double reward, StateId next) {
  Profile others = OthersOf(joint);
  double target = reward;
  if (params_.gamma != 0.0) target += params_.gamma * Value(next);
  StateTable& t = Table(s);
  Entry& e = EntryFor(t, others);
  double& q = e.q[joint[self_]];
  q = (1.0 - params_.alpha) * q + params_.alpha * target;
  ++e.count;
  ++t.visits;
  ++t.own_counts[joint[self_]];
}

double JalAgent::Q(StateId s, const Profile& joint) const {
  Profile others = OthersOf(joint);
  const StateTable* t = FindTable(s);
  if (t == nullptr) return 0.0;
  auto it = t->by_others.find(others);
  return it == t->by_others.end() ? 0.0 : it->second.q[joint[self_]];
}

std::uint64_t JalAgent::Count(StateId s, const Profile& others) const {
  const StateTable* t = FindTable(s);
  if (t == nullptr) return 0;
  auto it = t->by_others.find(others);
  return it == t->by_others.end() ? 0 : it->second.count;
}

std::uint64_t JalAgent::OwnCount(StateId s, std::size_t action) const {
  const StateTable* t = FindTable(s);
  return t == nullptr ? 0 : t->own_counts.at(action);
}

std::uint64_t JalAgent::Visits(StateId s) const {
  const StateTable* t = FindTable(s);
  return t == nullptr ? 0 : t->visits;
}

std::vector<std::pair<Profile, std::uint64_t>> JalAgent::Counts(StateId s) const {
  std::vector<std::pair<Profile, std::uint64_t>> out;
  const StateTable* t = FindTable(s);
  if (t == nullptr) return out;
  for (const auto& [others, e] : t->by_others) {
    if (e.count > 0) out.emplace_back(others, e.count);
  }
  return out;
}

void JalAgent::SetQ(StateId s, const Profile& joint, double value) {
  Profile others = OthersOf(joint);
  EntryFor(Table(s), others).q[joint[self_]] = value;
}

void JalAgent::AddObservation(StateId s, const Profile& joint, std::uint64_t times) {
  Profile others = OthersOf(joint);
  StateTable& t = Table(s);
  EntryFor(t, others).count += times;
  t.visits += times;
  t.own_counts[joint[self_]] += times;
}

// --- baseline ---

LearningRequest BaselineLearner::Select(std::span<const LearningRequest> candidates,
                                        Rng& rng) const {
  if (candidates.empty()) throw Error("baseline: no candidate requests");
  if (Explore(epsilon_, rng)) return candidates[UniformIndex(candidates.size(), rng)];
  return Greedy(candidates, rng);
}

LearningRequest BaselineLearner::Greedy(std::span<const LearningRequest> candidates,
                                        Rng& rng) const {
  if (candidates.empty()) throw Error("baseline: no candidate requests");
  std::uint64_t best = 0;
  for (const auto& c : candidates) best = std::max(best, Yield(c));
  std::vector<std::size_t> ties;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (Yield(candidates[i]) == best) ties.push_back(i);
  }
  if (ties.size() == 1) return candidates[ties.front()];
  return candidates[ties[UniformIndex(ties.size(), rng)]];
}

void BaselineLearner::Update(const LearningRequest& request, std::uint64_t facts_gained) {
  yield_[request] += facts_gained;
}

std::uint64_t BaselineLearner::Yield(const LearningRequest& request) const {
  auto it = yield_.find(request);
  return it == yield_.end() ? 0 : it->second;
}

double EpsilonSchedule::At(std::size_t episode, std::size_t episodes) const {
  if (!linear || episodes <= 1) return start;
  double frac = static_cast<double>(episode) / static_cast<double>(episodes - 1);
  return start + (end - start) * std::min(1.0, frac);
}

// --- policies ---

JalTeam::JalTeam(std::vector<std::size_t> action_counts, JalParams params,
                 EpsilonSchedule schedule)
    : schedule_(schedule) {
  params.epsilon = schedule.start;
  agents_.reserve(action_counts.size());
  for (std::size_t i = 0; i < action_counts.size(); ++i) {
    agents_.emplace_back(i, action_counts, params);
  }
}

void JalTeam::BeginEpisode(std::size_t episode, std::size_t episodes) {
  double eps = schedule_.At(episode, episodes);
  for (auto& a : agents_) a.set_epsilon(eps);
}

Profile JalTeam::Act(StateId s, Rng& rng) {
  Profile p(agents_.size());
  for (std::size_t i = 0; i < agents_.size(); ++i) p[i] = agents_[i].SelectAction(s, rng);
  return p;
}

Profile JalTeam::Greedy(StateId s, Rng& rng) const {
  Profile p(agents_.size());
  for (std::size_t i = 0; i < agents_.size(); ++i) p[i] = agents_[i].GreedyAction(s, rng);
  return p;
}

void JalTeam::Observe(const Feedback& fb) {
  if (fb.rewards.size() != 1 && fb.rewards.size() != agents_.size()) {
    throw Error("JalTeam: reward vector size mismatch");
  }
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    double r = fb.rewards.size() == 1 ? fb.rewards.front() : fb.rewards[i];
    agents_[i].Update(fb.state, fb.joint, r, fb.next);
  }
}

BaselinePolicy::BaselinePolicy(const GameStructure& game, double epsilon)
    : game_(&game), learner_(epsilon) {
  for (std::size_t i = 0; i + 1 < game.size(); i += 2) {
    const ActionSet& first = game.agents[i];
    const ActionSet& second = game.agents[i + 1];
    if (first.agent.predicate != second.agent.predicate || first.agent.position != 1 ||
        second.agent.position != 2) {
      throw GameError("baseline: roster is not paired by predicate");
    }
    std::vector<LearningRequest> cands;
    for (Symbol c1 : first.actions) {
      for (Symbol c2 : second.actions) cands.push_back({first.agent.predicate, c1, c2});
    }
    candidates_.push_back(std::move(cands));
  }
  if (game.size() % 2 != 0) throw GameError("baseline: roster is not paired by predicate");
}

Profile BaselinePolicy::ToProfile(const std::vector<LearningRequest>& chosen) const {
  JointAction joint;
  for (std::size_t k = 0; k < chosen.size(); ++k) {
    joint[game_->agents[2 * k].agent] = chosen[k].c1;
    joint[game_->agents[2 * k + 1].agent] = chosen[k].c2;
  }
  return game_->ToProfile(joint);
}

Profile BaselinePolicy::Act(StateId, Rng& rng) {
  std::vector<LearningRequest> chosen;
  for (const auto& cands : candidates_) chosen.push_back(learner_.Select(cands, rng));
  return ToProfile(chosen);
}

Profile BaselinePolicy::Greedy(StateId, Rng& rng) const {
  std::vector<LearningRequest> chosen;
  for (const auto& cands : candidates_) chosen.push_back(learner_.Greedy(cands, rng));
  return ToProfile(chosen);
}

void BaselinePolicy::Observe(const Feedback& fb) {
  std::vector<LearningRequest> requests = ProfileToRequests(*game_, fb.joint);
  if (requests.size() != fb.facts_per_request.size()) {
    throw Error("baseline: facts_per_request does not match the request list");
  }
  for (std::size_t k = 0; k < requests.size(); ++k) {
    learner_.Update(requests[k], fb.facts_per_request[k]);
  }
}

Profile RandomPolicy::Act(StateId, Rng& rng) {
  Profile p(action_counts_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = UniformIndex(action_counts_[i], rng);
  return p;
}

Profile RandomPolicy::Greedy(StateId, Rng& rng) const {
  Profile p(action_counts_.size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = UniformIndex(action_counts_[i], rng);
  return p;
}

std::vector<Profile> PureNashEquilibria(const PayoffMatrix& game) {
  std::vector<Profile> out;
  const std::vector<std::size_t> counts = game.ActionCounts();
  for (const auto& [profile, utilities] : game.payoffs) {
    bool stable = true;
    for (std::size_t i = 0; i < counts.size() && stable; ++i) {
      Profile dev = profile;
      for (std::size_t a = 0; a < counts[i] && stable; ++a) {
        dev[i] = a;
        auto it = game.payoffs.find(dev);
        if (it != game.payoffs.end() && it->second[i] > utilities[i]) stable = false;
      }
    }
    if (stable) out.push_back(profile);
  }
  return out;
}

SelfPlayResult SelfPlay(const MatrixGame& game, const JalParams& params, std::size_t episodes,
                        std::uint64_t seed, bool shared_reward) {
  JalTeam team(game.ActionCounts(), params, EpsilonSchedule{params.epsilon, params.epsilon, false});
  Rng rng(seed);
  SelfPlayResult out;
  out.history.reserve(episodes);
  for (std::size_t e = 0; e < episodes; ++e) {
    team.BeginEpisode(e, episodes);
    Feedback fb;
    fb.joint = team.Act(0, rng);
    const std::vector<double>& u = game.Payoffs(fb.joint);
    fb.rewards = shared_reward ? std::vector<double>{u.front()} : u;
    team.Observe(fb);
    out.history.push_back(std::move(fb.joint));
  }
  return out;
}

TailAgreement MostFrequentInTail(std::span<const Profile> history, std::size_t tail,
                                 std::span<const Profile> candidates) {
  TailAgreement best;
  const std::size_t start = history.size() > tail ? history.size() - tail : 0;
  const std::size_t n = history.size() - start;
  if (n == 0) return best;
  for (const Profile& c : candidates) {
    std::size_t hits = 0;
    for (std::size_t i = start; i < history.size(); ++i) hits += history[i] == c;
    const double frac = static_cast<double>(hits) / static_cast<double>(n);
    if (best.profile.empty() || frac > best.fraction) best = {c, frac};
  }
  return best;
}

}  // namespace coordlearn
