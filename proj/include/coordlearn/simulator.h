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

#ifndef COORDLEARN_SIMULATOR_H_
#define COORDLEARN_SIMULATOR_H_

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coordlearn/game.h"
#include "coordlearn/kbstore.h"
#include "coordlearn/learners.h"
#include "coordlearn/qa.h"
#include "coordlearn/reasoner.h"
#include "coordlearn/scenario.h"

namespace coordlearn {

// KB(0) and the external source it learns from.
struct AblationSplit {
  KnowledgeBase working;   // ontology + sampled facts
  KnowledgeBase external;  // the other non-ontology facts
  std::uint64_t seed = 0;
  std::size_t sample_size = 0;
};

// Keeps every ontology fact (and argIsa constraint) in `working` and a
// uniform sample of `sample_size` other facts; the rest goes to `external`.
// Throws Error when the sample is larger than the pool.
AblationSplit Ablate(const KnowledgeBase& full, std::size_t sample_size, std::uint64_t seed);

enum class EpisodeMode { kEpisodicReset, kCumulative };

// Where instances_of is judged when filtering request results.
enum class Membership { kUnion, kWorkingOnly };

struct RequestResult {
  std::vector<Fact> matched;  // every external fact satisfying the request
  std::vector<Fact> added;    // those not yet in the working KB
};

// Copies every external (p e1 e2) with e1 in c1 and e2 in c2 into the
// working KB. The source is not consumed.
RequestResult ExecuteRequest(AblationSplit& split, const LearningRequest& request,
                             Membership membership = Membership::kUnion);

struct RequestOutcome {
  LearningRequest request;
  std::size_t matched = 0;
  std::vector<Fact> added;
};

struct StepOutcome {
  std::vector<RequestOutcome> requests;
  std::size_t answered_before = 0;
  std::size_t answered_after = 0;
  std::int64_t reward = 0;

  std::size_t facts_gained() const;
};

struct EnvironmentOptions {
  EpisodeMode mode = EpisodeMode::kEpisodicReset;
  Membership membership = Membership::kUnion;
  InferenceLimits limits;
  // Memoize outcomes per joint action. Only honoured in EpisodicReset mode
  // with a step budget, where an outcome is a pure function of the action.
  bool reward_cache = true;
  bool parallel_qa = false;
};

// The learning problem seen by a policy: a split, a roster and a fixed
// question list.
class Environment {
 public:
  Environment(AblationSplit split, GameStructure game, std::span<const HornClause> axioms,
              std::span<const QuestionTemplate> templates, EnvironmentOptions options);

  const AblationSplit& split() const { return split_; }
  const GameStructure& game() const { return game_; }
  const std::vector<Question>& questions() const { return questions_; }
  const EnvironmentOptions& options() const { return options_; }

  // 0 in EpisodicReset mode; an order-independent hash of the working
  // fact set in Cumulative mode.
  StateId CurrentState() const;
  std::size_t answered_initially() const { return initial_answered_; }

  // Issue the requests for `joint` and score them. In EpisodicReset mode the
  // working KB is rolled back to KB(0) afterwards.
  StepOutcome Step(const Profile& joint);
  // Like Step, but always rolls back.
  StepOutcome Probe(const Profile& joint);

  std::size_t cache_hits() const { return cache_hits_; }

 private:
  StepOutcome Apply(const Profile& joint, bool keep);
  QAResult Score() const;
  bool CacheUsable() const;

  AblationSplit split_;
  GameStructure game_;
  AxiomSet axioms_;
  std::vector<Question> questions_;
  EnvironmentOptions options_;
  std::size_t mark_ = 0;
  std::size_t initial_answered_ = 0;
  std::size_t current_answered_ = 0;
  std::uint64_t state_hash_ = 0;
  std::map<Profile, StepOutcome> cache_;
  std::size_t cache_hits_ = 0;
};

struct EpisodeLog {
  std::string algorithm;
  std::size_t episode = 0;
  StateId state = 0;
  Profile profile;
  JointAction joint;
  StepOutcome outcome;

  std::size_t facts_gained() const { return outcome.facts_gained(); }
  // One JSON object, keys sorted, no trailing newline.
  std::string ToJson() const;
};

// One round: the policy acts, the environment answers, the policy learns
// from the shared reward.
EpisodeLog RunEpisode(Environment& env, Policy& policy, Rng& rng, std::size_t episode,
                      std::size_t episodes);

// Every step of an experiment, read from a flat key = value file.
struct ExperimentConfig {
  std::string scenario = "experiment";
  // Exactly one source: a built-in fixture, a generator config, or files.
  std::string fixture;
  std::filesystem::path generator;
  std::filesystem::path kb;
  std::filesystem::path axioms;
  std::filesystem::path templates;

  std::vector<std::string> algorithms = {"baseline", "coordination"};
  std::size_t episodes = 500;
  std::uint64_t seed = 1;
  double alpha = 0.5;
  double gamma = 0.0;
  double epsilon = 0.05;
  double epsilon_end = 0.05;
  bool epsilon_linear = false;
  double baseline_epsilon = 0.05;
  JalRule jal_rule = JalRule::kOpponentModel;
  std::size_t specificity_threshold = 5000;
  int depth = 5;
  InferenceLimits::Budget budget = StepBudget{};
  EpisodeMode mode = EpisodeMode::kEpisodicReset;
  Membership membership = Membership::kUnion;
  std::size_t sample_size = 0;
  bool reward_cache = true;
  int threads = 1;

  static ExperimentConfig FromFile(const std::filesystem::path& path);
  static ExperimentConfig FromText(std::string_view text,
                                   const std::filesystem::path& base_dir = {});
  // Every effective parameter, one `key = value` per line. Reading it back
  // gives an equal configuration.
  std::string Resolved() const;

  InferenceLimits limits() const { return {depth, budget}; }
};

// "steps:N", "seconds:S" or "unlimited". Throws ConfigError("budget", ...).
InferenceLimits::Budget ParseBudget(const std::string& text);
std::string BudgetToString(const InferenceLimits::Budget& budget);

// Accepted config keys, for --help and validation.
std::span<const std::string_view> ExperimentConfigKeys();

struct AlgorithmResult {
  std::string algorithm;
  std::vector<EpisodeLog> episodes;
  std::size_t n_queries = 0;  // questions asked over all episodes
  std::size_t n_answers = 0;  // questions answered over all episodes
  // Greedy joint action after training and its reward from KB(0).
  Profile final_profile;
  std::vector<LearningRequest> final_requests;
  std::int64_t final_reward = 0;
  std::int64_t best_reward = 0;  // best reward seen during training
};

struct Metrics {
  std::string scenario;
  ExperimentConfig config;
  std::size_t questions = 0;
  std::size_t agents = 0;
  std::uint64_t joint_actions = 0;
  std::size_t answered_initially = 0;
  std::vector<AlgorithmResult> results;

  const AlgorithmResult* Find(std::string_view algorithm) const;
};

// round(100 (x - base) / base); nullopt when base is 0.
std::optional<std::int64_t> ImprovementPercent(std::size_t base, std::size_t x);

Scenario LoadScenario(const ExperimentConfig& config);
std::unique_ptr<Policy> MakePolicy(std::string_view algorithm, const GameStructure& game,
                                   const ExperimentConfig& config);

Metrics RunExperiment(const ExperimentConfig& config);
Metrics RunExperiment(const Scenario& scenario, const ExperimentConfig& config);

// Independent copies of `config` with the given seeds, run concurrently.
std::vector<Metrics> RunReplicas(const Scenario& scenario, const ExperimentConfig& config,
                                 std::span<const std::uint64_t> seeds, int threads);

// summary.csv, episodes.jsonl, final_policy.csv, config.resolved.
std::string SummaryCsv(const Metrics& metrics);
std::string EpisodesJsonl(const Metrics& metrics);
std::string FinalPolicyCsv(const Metrics& metrics);
void EmitResults(const Metrics& metrics, const std::filesystem::path& out_dir);

}  // namespace coordlearn

#endif  // COORDLEARN_SIMULATOR_H_
