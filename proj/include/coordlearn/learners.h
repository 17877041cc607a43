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

#ifndef COORDLEARN_LEARNERS_H_
#define COORDLEARN_LEARNERS_H_

#include <cstdint>
#include <map>
#include <memory>
#include <random>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "coordlearn/game.h"

namespace coordlearn {

using Rng = std::mt19937_64;
using StateId = std::uint64_t;

// How action selection weighs Q-values.
enum class JalRule {
  // Belief over the other agents' profile: C(s, a_-i) / n(s).
  kOpponentModel,
  // C(s, a_i) / n(s) with the agent's own action count. Kept for
  // comparison runs.
  kLiteral,
};

struct JalParams {
  double alpha = 0.5;
  double gamma = 0.0;
  double epsilon = 0.05;
  JalRule rule = JalRule::kOpponentModel;
};

// Joint-action learner for one agent (Claus & Boutilier). Keeps Q over
// joint actions and empirical counts of the other agents' profiles, both
// per state. Q starts at 0.
class JalAgent {
 public:
  // `action_counts` holds the action-set size of every agent in the roster.
  JalAgent(std::size_t self, std::vector<std::size_t> action_counts, JalParams params);

  std::size_t self() const { return self_; }
  std::size_t num_actions() const { return action_counts_[self_]; }
  const JalParams& params() const { return params_; }
  void set_epsilon(double epsilon) { params_.epsilon = epsilon; }

  // With probability epsilon a uniform action, else a maximizer of
  // ExpectedValue with ties broken uniformly.
  std::size_t SelectAction(StateId s, Rng& rng) const;
  std::size_t GreedyAction(StateId s, Rng& rng) const;

  // Q(s,a) <- (1 - alpha) Q(s,a) + alpha (r + gamma V(s')), then the
  // observed profile count and n(s) are incremented.
  void Update(StateId s, const Profile& joint, double reward, StateId next);

  // Sum over profiles of belief(a_-i) * Q(s, (a_i, a_-i)). The belief is
  // uniform while n(s) = 0.
  double ExpectedValue(StateId s, std::size_t action) const;
  // max over own actions of ExpectedValue; 0 for an unseen state.
  double Value(StateId s) const;

  double Q(StateId s, const Profile& joint) const;
  std::uint64_t Count(StateId s, const Profile& others) const;
  std::uint64_t OwnCount(StateId s, std::size_t action) const;
  std::uint64_t Visits(StateId s) const;
  // Every (profile, count) pair with a count, for invariant checks.
  std::vector<std::pair<Profile, std::uint64_t>> Counts(StateId s) const;

  // Test hooks.
  void SetQ(StateId s, const Profile& joint, double value);
  void AddObservation(StateId s, const Profile& joint, std::uint64_t times);

  Profile OthersOf(const Profile& joint) const;

 private:
  struct Entry {
    std::uint64_t count = 0;
    std::vector<double> q;  // indexed by own action
  };
  struct StateTable {
    std::uint64_t visits = 0;
    std::vector<std::uint64_t> own_counts;
    std::map<Profile, Entry> by_others;
  };

  StateTable& Table(StateId s);
  const StateTable* FindTable(StateId s) const;
  Entry& EntryFor(StateTable& t, const Profile& others);

  std::size_t self_;
  std::vector<std::size_t> action_counts_;
  JalParams params_;
  double num_other_profiles_ = 1.0;
  std::unordered_map<StateId, StateTable> states_;
};

// Greedy fact-count baseline: picks the request with the largest cumulative
// fact yield so far (unseen requests count 0), exploring with epsilon.
class BaselineLearner {
 public:
  explicit BaselineLearner(double epsilon) : epsilon_(epsilon) {}

  double epsilon() const { return epsilon_; }
  void set_epsilon(double epsilon) { epsilon_ = epsilon; }

  LearningRequest Select(std::span<const LearningRequest> candidates, Rng& rng) const;
  LearningRequest Greedy(std::span<const LearningRequest> candidates, Rng& rng) const;
  void Update(const LearningRequest& request, std::uint64_t facts_gained);

  std::uint64_t Yield(const LearningRequest& request) const;
  const std::map<LearningRequest, std::uint64_t>& history() const { return yield_; }

 private:
  double epsilon_;
  std::map<LearningRequest, std::uint64_t> yield_;
};

// Linear or constant exploration schedule over an experiment.
struct EpsilonSchedule {
  double start = 0.05;
  double end = 0.05;
  bool linear = false;

  double At(std::size_t episode, std::size_t episodes) const;
};

// What a policy sees after each round.
struct Feedback {
  StateId state = 0;
  Profile joint;
  // One entry per agent, or a single shared value.
  std::vector<double> rewards;
  // Facts newly acquired by each request, in ProfileToRequests order.
  std::vector<std::uint64_t> facts_per_request;
  StateId next = 0;
};

// A way of choosing joint actions for a whole roster.
class Policy {
 public:
  virtual ~Policy() = default;
  virtual std::string name() const = 0;
  virtual void BeginEpisode(std::size_t /*episode*/, std::size_t /*episodes*/) {}
  virtual Profile Act(StateId s, Rng& rng) = 0;
  virtual Profile Greedy(StateId s, Rng& rng) const = 0;
  virtual void Observe(const Feedback& feedback) = 0;
};

// One JalAgent per roster entry; all see the full joint action.
class JalTeam : public Policy {
 public:
  JalTeam(std::vector<std::size_t> action_counts, JalParams params, EpsilonSchedule schedule);

  std::string name() const override { return "coordination"; }
  void BeginEpisode(std::size_t episode, std::size_t episodes) override;
  Profile Act(StateId s, Rng& rng) override;
  Profile Greedy(StateId s, Rng& rng) const override;
  void Observe(const Feedback& feedback) override;

  const std::vector<JalAgent>& agents() const { return agents_; }

 private:
  std::vector<JalAgent> agents_;
  EpsilonSchedule schedule_;
};

// Per predicate, BaselineLearner over every (pred C1 C2) the two agents
// could form. Oblivious of the other predicates.
class BaselinePolicy : public Policy {
 public:
  BaselinePolicy(const GameStructure& game, double epsilon);

  std::string name() const override { return "baseline"; }
  Profile Act(StateId s, Rng& rng) override;
  Profile Greedy(StateId s, Rng& rng) const override;
  void Observe(const Feedback& feedback) override;

  const BaselineLearner& learner() const { return learner_; }

 private:
  Profile ToProfile(const std::vector<LearningRequest>& chosen) const;

  const GameStructure* game_;
  BaselineLearner learner_;
  std::vector<std::vector<LearningRequest>> candidates_;  // per predicate
};

class RandomPolicy : public Policy {
 public:
  explicit RandomPolicy(std::vector<std::size_t> action_counts)
      : action_counts_(std::move(action_counts)) {}

  std::string name() const override { return "random"; }
  Profile Act(StateId s, Rng& rng) override;
  Profile Greedy(StateId s, Rng& rng) const override;
  void Observe(const Feedback&) override {}

 private:
  std::vector<std::size_t> action_counts_;
};

// Profiles where no agent gains by deviating alone.
std::vector<Profile> PureNashEquilibria(const PayoffMatrix& game);

struct SelfPlayResult {
  std::vector<Profile> history;  // one joint action per episode
};

// JalTeam self-play on a repeated stage game. With `shared_reward` every
// agent is paid the first agent's utility.
SelfPlayResult SelfPlay(const MatrixGame& game, const JalParams& params, std::size_t episodes,
                        std::uint64_t seed, bool shared_reward = false);

struct TailAgreement {
  Profile profile;        // most frequent candidate over the tail
  double fraction = 0.0;  // share of the tail equal to it
};

// Among `candidates`, the one played most often in the last `tail`
// entries of `history`.
TailAgreement MostFrequentInTail(std::span<const Profile> history, std::size_t tail,
                                 std::span<const Profile> candidates);

}  // namespace coordlearn

#endif  // COORDLEARN_LEARNERS_H_
