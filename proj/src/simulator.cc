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

#include "coordlearn/simulator.h"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>
#include <omp.h>

#include "coordlearn/config.h"
#include "coordlearn/errors.h"
#include "coordlearn/synthgen.h"

namespace coordlearn {
namespace {

std::uint64_t Mix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Separate streams for the split, the policies and the final evaluation.
Rng StreamRng(std::uint64_t seed, std::uint32_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    stream};
  return Rng(seq);
}

std::string FormatDouble(double x) {
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), x);
  return std::string(buf.data(), ptr);
}

}  // namespace

AblationSplit Ablate(const KnowledgeBase& full, std::size_t sample_size, std::uint64_t seed) {
  std::vector<KnowledgeBase::FactId> pool;
  for (KnowledgeBase::FactId id = 0; id < full.size(); ++id) {
    if (!KnowledgeBase::IsOntologyFact(full.fact(id))) pool.push_back(id);
  }
  if (sample_size > pool.size()) {
    throw Error("ablate: sample_size " + std::to_string(sample_size) + " exceeds the " +
                std::to_string(pool.size()) + " non-ontology facts");
  }
  std::vector<KnowledgeBase::FactId> sample;
  sample.reserve(sample_size);
  Rng rng = StreamRng(seed, 0);
  std::sample(pool.begin(), pool.end(), std::back_inserter(sample), sample_size, rng);

  AblationSplit split;
  split.seed = seed;
  split.sample_size = sample_size;
  for (const Fact& f : full.facts()) {
    if (KnowledgeBase::IsOntologyFact(f)) split.working.Assert(f);
  }
  std::size_t next = 0;
  for (KnowledgeBase::FactId id : pool) {
    if (next < sample.size() && sample[next] == id) {
      split.working.Assert(full.fact(id));
      ++next;
    } else {
      split.external.Assert(full.fact(id));
    }
  }
  return split;
}

RequestResult ExecuteRequest(AblationSplit& split, const LearningRequest& request,
                             Membership membership) {
  RequestResult out;
  const KnowledgeBase& w = split.working;
  const KnowledgeBase& x = split.external;
  auto member = [&](Symbol e, Symbol c) {
    if (w.InstancesOf(c).contains(e)) return true;
    return membership == Membership::kUnion && x.InstancesOf(c).contains(e);
  };
  for (KnowledgeBase::FactId id : x.FactsOf(request.predicate)) {
    const Fact& f = x.fact(id);
    if (f.args.size() != 2) continue;
    if (member(f.args[0], request.c1) && member(f.args[1], request.c2)) out.matched.push_back(f);
  }
  // Closures may be rebuilt by the inserts, so filter first.
  for (const Fact& f : out.matched) {
    if (split.working.Assert(f)) out.added.push_back(f);
  }
  return out;
}

std::size_t StepOutcome::facts_gained() const {
  std::size_t n = 0;
  for (const auto& r : requests) n += r.added.size();
  return n;
}

Environment::Environment(AblationSplit split, GameStructure game,
                         std::span<const HornClause> axioms,
                         std::span<const QuestionTemplate> templates, EnvironmentOptions options)
    : split_(std::move(split)),
      game_(std::move(game)),
      axioms_(axioms),
      options_(options) {
  questions_ = ExpandQuestions(split_.working, templates);
  mark_ = split_.working.Mark();
  initial_answered_ = Score().answered;
  current_answered_ = initial_answered_;
  for (const Fact& f : split_.working.facts()) state_hash_ += Mix(HashFact(f));
}

StateId Environment::CurrentState() const {
  return options_.mode == EpisodeMode::kEpisodicReset ? 0 : state_hash_;
}

QAResult Environment::Score() const {
  return options_.parallel_qa
             ? EvaluateParallel(split_.working, axioms_, questions_, options_.limits)
             : EvaluateSerial(split_.working, axioms_, questions_, options_.limits);
}

bool Environment::CacheUsable() const {
  return options_.reward_cache && options_.mode == EpisodeMode::kEpisodicReset &&
         std::holds_alternative<StepBudget>(options_.limits.budget);
}

StepOutcome Environment::Step(const Profile& joint) {
  return Apply(joint, options_.mode == EpisodeMode::kCumulative);
}

StepOutcome Environment::Probe(const Profile& joint) { return Apply(joint, false); }

StepOutcome Environment::Apply(const Profile& joint, bool keep) {
  // Outside cumulative mode the working KB is KB(0) here.
  const bool cacheable = !keep && CacheUsable();
  if (cacheable) {
    auto it = cache_.find(joint);
    if (it != cache_.end()) {
      ++cache_hits_;
      return it->second;
    }
  }
  StepOutcome out;
  out.answered_before = current_answered_;
  const std::size_t mark = split_.working.Mark();
  for (const LearningRequest& req : ProfileToRequests(game_, joint)) {
    RequestResult r = ExecuteRequest(split_, req, options_.membership);
    out.requests.push_back({req, r.matched.size(), std::move(r.added)});
  }
  out.answered_after = out.facts_gained() == 0 ? out.answered_before : Score().answered;
  out.reward = out.answered_after > out.answered_before
                   ? static_cast<std::int64_t>(out.answered_after - out.answered_before)
                   : 0;
  if (keep) {
    current_answered_ = out.answered_after;
    for (const auto& r : out.requests) {
      for (const Fact& f : r.added) state_hash_ += Mix(HashFact(f));
    }
  } else {
    split_.working.RollbackTo(mark);
  }
  if (cacheable) cache_.emplace(joint, out);
  return out;
}

std::string EpisodeLog::ToJson() const {
  nlohmann::json j;
  j["algorithm"] = algorithm;
  j["episode"] = episode;
  j["state"] = state;
  j["profile"] = profile;
  nlohmann::json jj = nlohmann::json::object();
  for (const auto& [agent, action] : joint) jj[agent.ToString()] = action.str();
  j["joint"] = jj;
  nlohmann::json reqs = nlohmann::json::array();
  for (const auto& r : outcome.requests) {
    std::vector<std::string> added;
    for (const Fact& f : r.added) added.push_back(f.ToString());
    reqs.push_back({{"request", r.request.ToString()}, {"matched", r.matched}, {"added", added}});
  }
  j["requests"] = reqs;
  j["facts_gained"] = facts_gained();
  j["answered_before"] = outcome.answered_before;
  j["answered_after"] = outcome.answered_after;
  j["reward"] = outcome.reward;
  return j.dump();
}

EpisodeLog RunEpisode(Environment& env, Policy& policy, Rng& rng, std::size_t episode,
                      std::size_t episodes) {
  policy.BeginEpisode(episode, episodes);
  EpisodeLog log;
  log.algorithm = policy.name();
  log.episode = episode;
  log.state = env.CurrentState();
  log.profile = policy.Act(log.state, rng);
  log.joint = env.game().ToJointAction(log.profile);
  log.outcome = env.Step(log.profile);

  Feedback fb;
  fb.state = log.state;
  fb.joint = log.profile;
  fb.rewards = {static_cast<double>(log.outcome.reward)};
  for (const auto& r : log.outcome.requests) fb.facts_per_request.push_back(r.added.size());
  fb.next = env.CurrentState();
  policy.Observe(fb);
  return log;
}

// --- configuration ---

namespace {

constexpr std::string_view kConfigKeys[] = {
    "scenario", "fixture",   "generator",        "kb",           "axioms",
    "templates", "algorithms", "episodes",        "seed",         "alpha",
    "gamma",    "epsilon",   "epsilon_end",      "epsilon_schedule", "baseline_epsilon",
    "jal_rule", "specificity_threshold", "depth", "budget",       "mode",
    "membership", "sample_size", "reward_cache",  "threads",
};

}  // namespace

InferenceLimits::Budget ParseBudget(const std::string& text) {
  if (text == "unlimited") return StepBudget{};
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    std::string kind = text.substr(0, colon);
    std::string value = text.substr(colon + 1);
    try {
      std::size_t used = 0;
      if (kind == "steps") {
        unsigned long long n = std::stoull(value, &used);
        if (used == value.size() && n > 0) return StepBudget{n};
      } else if (kind == "seconds") {
        double s = std::stod(value, &used);
        if (used == value.size() && s > 0) return WallClock{s};
      }
    } catch (const std::exception&) {
    }
  }
  throw ConfigError("budget", "expected steps:N, seconds:S or unlimited, got '" + text + "'");
}

std::string BudgetToString(const InferenceLimits::Budget& b) {
  if (const auto* s = std::get_if<StepBudget>(&b)) {
    return s->max_steps == kUnlimitedSteps ? "unlimited" : "steps:" + std::to_string(s->max_steps);
  }
  return "seconds:" + FormatDouble(std::get<WallClock>(b).seconds);
}

std::span<const std::string_view> ExperimentConfigKeys() { return kConfigKeys; }

ExperimentConfig ExperimentConfig::FromFile(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  return FromText(text, std::filesystem::absolute(path).parent_path());
}

ExperimentConfig ExperimentConfig::FromText(std::string_view text,
                                            const std::filesystem::path& base_dir) {
  const ConfigFile f = ConfigFile::Parse(text, base_dir);
  f.RequireKnown(kConfigKeys);
  ExperimentConfig c;
  c.scenario = f.GetString("scenario", c.scenario);
  if (c.scenario.empty() || c.scenario.find_first_of(",\"\n") != std::string::npos) {
    throw ConfigError("scenario", "must be non-empty and free of commas and quotes");
  }
  int sources = 0;
  if (f.Has("fixture")) {
    c.fixture = *f.Get("fixture");
    if (c.fixture != "birthplace" && c.fixture != "birthplace_graded") {
      throw ConfigError("fixture", "unknown fixture '" + c.fixture + "'");
    }
    ++sources;
  }
  if (f.Has("generator")) {
    c.generator = f.GetPath("generator");
    ++sources;
  }
  if (f.Has("kb")) {
    c.kb = f.GetPath("kb");
    if (f.Has("axioms")) c.axioms = f.GetPath("axioms");
    if (f.Has("templates")) c.templates = f.GetPath("templates");
    ++sources;
  } else if (f.Has("axioms") || f.Has("templates")) {
    throw ConfigError(f.Has("axioms") ? "axioms" : "templates", "given without kb");
  }
  if (sources != 1) {
    throw ConfigError("fixture", "exactly one of fixture, generator or kb is required");
  }

  if (f.Has("algorithms")) {
    c.algorithms = SplitWords(*f.Get("algorithms"));
    if (c.algorithms.empty()) throw ConfigError("algorithms", "empty list");
    for (std::size_t i = 0; i < c.algorithms.size(); ++i) {
      const std::string& a = c.algorithms[i];
      if (a != "baseline" && a != "coordination" && a != "random") {
        throw ConfigError("algorithms", "unknown algorithm '" + a + "'");
      }
      if (std::find(c.algorithms.begin(), c.algorithms.begin() + i, a) !=
          c.algorithms.begin() + i) {
        throw ConfigError("algorithms", "duplicate algorithm '" + a + "'");
      }
    }
  }
  c.episodes = static_cast<std::size_t>(f.GetInt("episodes", 500, 1, 100'000'000));
  c.seed = static_cast<std::uint64_t>(
      f.GetInt("seed", 1, 0, std::numeric_limits<std::int64_t>::max()));
  c.alpha = f.GetDouble("alpha", c.alpha, 0.0, 1.0);
  if (c.alpha <= 0.0) throw ConfigError("alpha", "must be in (0, 1]");
  c.gamma = f.GetDouble("gamma", c.gamma, 0.0, 1.0);
  c.epsilon = f.GetDouble("epsilon", c.epsilon, 0.0, 1.0);
  c.epsilon_end = f.GetDouble("epsilon_end", c.epsilon, 0.0, 1.0);
  const std::string schedule = f.GetString("epsilon_schedule", "constant");
  if (schedule == "linear") {
    c.epsilon_linear = true;
  } else if (schedule != "constant") {
    throw ConfigError("epsilon_schedule", "expected constant or linear");
  }
  c.baseline_epsilon = f.GetDouble("baseline_epsilon", c.epsilon, 0.0, 1.0);
  const std::string rule = f.GetString("jal_rule", "opponent");
  if (rule == "literal") {
    c.jal_rule = JalRule::kLiteral;
  } else if (rule != "opponent") {
    throw ConfigError("jal_rule", "expected opponent or literal");
  }
  c.specificity_threshold = static_cast<std::size_t>(
      f.GetInt("specificity_threshold", 5000, 1, std::numeric_limits<std::int64_t>::max()));
  c.depth = static_cast<int>(f.GetInt("depth", 5, 1, 64));
  if (f.Has("budget")) c.budget = ParseBudget(*f.Get("budget"));
  const std::string mode = f.GetString("mode", "episodic");
  if (mode == "cumulative") {
    c.mode = EpisodeMode::kCumulative;
  } else if (mode != "episodic") {
    throw ConfigError("mode", "expected episodic or cumulative");
  }
  const std::string membership = f.GetString("membership", "union");
  if (membership == "working") {
    c.membership = Membership::kWorkingOnly;
  } else if (membership != "union") {
    throw ConfigError("membership", "expected union or working");
  }
  c.sample_size = static_cast<std::size_t>(
      f.GetInt("sample_size", 0, 0, std::numeric_limits<std::int64_t>::max()));
  c.reward_cache = f.GetBool("reward_cache", true);
  c.threads = static_cast<int>(f.GetInt("threads", 1, 0, 1024));
  return c;
}

std::string ExperimentConfig::Resolved() const {
  std::ostringstream out;
  out << "scenario = " << scenario << "\n";
  if (!fixture.empty()) out << "fixture = " << fixture << "\n";
  if (!generator.empty()) out << "generator = " << generator.generic_string() << "\n";
  if (!kb.empty()) out << "kb = " << kb.generic_string() << "\n";
  if (!axioms.empty()) out << "axioms = " << axioms.generic_string() << "\n";
  if (!templates.empty()) out << "templates = " << templates.generic_string() << "\n";
  out << "algorithms =";
  for (const auto& a : algorithms) out << " " << a;
  out << "\n";
  out << "episodes = " << episodes << "\n";
  out << "seed = " << seed << "\n";
  out << "alpha = " << FormatDouble(alpha) << "\n";
  out << "gamma = " << FormatDouble(gamma) << "\n";
  out << "epsilon = " << FormatDouble(epsilon) << "\n";
  out << "epsilon_end = " << FormatDouble(epsilon_end) << "\n";
  out << "epsilon_schedule = " << (epsilon_linear ? "linear" : "constant") << "\n";
  out << "baseline_epsilon = " << FormatDouble(baseline_epsilon) << "\n";
  out << "jal_rule = " << (jal_rule == JalRule::kLiteral ? "literal" : "opponent") << "\n";
  out << "specificity_threshold = " << specificity_threshold << "\n";
  out << "depth = " << depth << "\n";
  out << "budget = " << BudgetToString(budget) << "\n";
  out << "mode = " << (mode == EpisodeMode::kCumulative ? "cumulative" : "episodic") << "\n";
  out << "membership = " << (membership == Membership::kWorkingOnly ? "working" : "union")
      << "\n";
  out << "sample_size = " << sample_size << "\n";
  out << "reward_cache = " << (reward_cache ? "true" : "false") << "\n";
  out << "threads = " << threads << "\n";
  return out.str();
}

// --- experiments ---

const AlgorithmResult* Metrics::Find(std::string_view algorithm) const {
  for (const auto& r : results) {
    if (r.algorithm == algorithm) return &r;
  }
  return nullptr;
}

std::optional<std::int64_t> ImprovementPercent(std::size_t base, std::size_t x) {
  if (base == 0) return std::nullopt;
  const double pct =
      100.0 * (static_cast<double>(x) - static_cast<double>(base)) / static_cast<double>(base);
  return std::llround(pct);
}

Scenario LoadScenario(const ExperimentConfig& config) {
  if (config.fixture == "birthplace") return BirthplaceFixture();
  if (config.fixture == "birthplace_graded") return GradedBirthplaceFixture();
  if (!config.generator.empty()) return Generate(GenConfig::FromFile(config.generator));
  return Scenario::Load(config.kb, config.axioms, config.templates);
}

std::unique_ptr<Policy> MakePolicy(std::string_view algorithm, const GameStructure& game,
                                   const ExperimentConfig& config) {
  if (algorithm == "coordination") {
    JalParams p;
    p.alpha = config.alpha;
    p.gamma = config.gamma;
    p.epsilon = config.epsilon;
    p.rule = config.jal_rule;
    EpsilonSchedule schedule{config.epsilon, config.epsilon_linear ? config.epsilon_end
                                                                   : config.epsilon,
                             config.epsilon_linear};
    return std::make_unique<JalTeam>(game.ActionCounts(), p, schedule);
  }
  if (algorithm == "baseline") return std::make_unique<BaselinePolicy>(game, config.baseline_epsilon);
  if (algorithm == "random") return std::make_unique<RandomPolicy>(game.ActionCounts());
  throw ConfigError("algorithms", "unknown algorithm '" + std::string(algorithm) + "'");
}

Metrics RunExperiment(const ExperimentConfig& config) {
  return RunExperiment(LoadScenario(config), config);
}

Metrics RunExperiment(const Scenario& scenario, const ExperimentConfig& config) {
  const AblationSplit split = Ablate(scenario.kb, config.sample_size, config.seed);
  const GameStructure game = BuildAgents(split.working, scenario.axioms, scenario.templates,
                                         config.specificity_threshold, config.depth);
  EnvironmentOptions opts;
  opts.mode = config.mode;
  opts.membership = config.membership;
  opts.limits = config.limits();
  opts.reward_cache = config.reward_cache;
  opts.parallel_qa = config.threads != 1;

  Metrics m;
  m.scenario = config.scenario;
  m.config = config;
  m.agents = game.size();
  m.joint_actions = game.JointActionCount();

  // Final greedy policies are scored from KB(0) in episodic mode.
  EnvironmentOptions probe_opts = opts;
  probe_opts.mode = EpisodeMode::kEpisodicReset;
  Environment probe(split, game, scenario.axioms, scenario.templates, probe_opts);
  m.questions = probe.questions().size();
  m.answered_initially = probe.answered_initially();

  for (const std::string& algorithm : config.algorithms) {
    Environment env(split, game, scenario.axioms, scenario.templates, opts);
    const StateId s0 = env.CurrentState();
    std::unique_ptr<Policy> policy = MakePolicy(algorithm, game, config);
    Rng rng = StreamRng(config.seed, 1);
    AlgorithmResult r;
    r.algorithm = algorithm;
    r.episodes.reserve(config.episodes);
    for (std::size_t e = 0; e < config.episodes; ++e) {
      EpisodeLog log = RunEpisode(env, *policy, rng, e, config.episodes);
      r.n_queries += env.questions().size();
      r.n_answers += log.outcome.answered_after;
      r.best_reward = std::max(r.best_reward, log.outcome.reward);
      r.episodes.push_back(std::move(log));
    }
    Rng greedy_rng = StreamRng(config.seed, 2);
    r.final_profile = policy->Greedy(s0, greedy_rng);
    r.final_requests = ProfileToRequests(game, r.final_profile);
    r.final_reward = probe.Probe(r.final_profile).reward;
    m.results.push_back(std::move(r));
  }
  return m;
}

std::vector<Metrics> RunReplicas(const Scenario& scenario, const ExperimentConfig& config,
                                 std::span<const std::uint64_t> seeds, int threads) {
  std::vector<Metrics> out(seeds.size());
  std::vector<std::exception_ptr> errors(seeds.size());
  const int n = static_cast<int>(seeds.size());
  const int nthreads = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (int i = 0; i < n; ++i) {
    try {
      ExperimentConfig c = config;
      c.seed = seeds[i];
      c.threads = 1;
      out[i] = RunExperiment(scenario, c);
    } catch (...) {
      errors[i] = std::current_exception();
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return out;
}

// --- output ---

std::string SummaryCsv(const Metrics& m) {
  std::ostringstream out;
  out << "scenario,algorithm,n_queries,n_answers,improvement_pct\n";
  const AlgorithmResult* base = m.Find("baseline");
  for (const auto& r : m.results) {
    out << m.scenario << "," << r.algorithm << "," << r.n_queries << "," << r.n_answers << ",";
    if (base != nullptr && &r != base) {
      if (auto pct = ImprovementPercent(base->n_answers, r.n_answers)) out << *pct;
    }
    out << "\n";
  }
  return out.str();
}

std::string EpisodesJsonl(const Metrics& m) {
  std::string out;
  for (const auto& r : m.results) {
    for (const auto& log : r.episodes) {
      out += log.ToJson();
      out += '\n';
    }
  }
  return out;
}

std::string FinalPolicyCsv(const Metrics& m) {
  std::ostringstream out;
  out << "algorithm,final_reward,best_reward,requests\n";
  for (const auto& r : m.results) {
    out << r.algorithm << "," << r.final_reward << "," << r.best_reward << ",\"";
    for (std::size_t i = 0; i < r.final_requests.size(); ++i) {
      out << (i ? " " : "") << r.final_requests[i].ToString();
    }
    out << "\"\n";
  }
  return out.str();
}

void EmitResults(const Metrics& m, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw Error(out_dir.string() + ": " + ec.message());
  WriteTextFile(out_dir / "summary.csv", SummaryCsv(m));
  WriteTextFile(out_dir / "episodes.jsonl", EpisodesJsonl(m));
  WriteTextFile(out_dir / "final_policy.csv", FinalPolicyCsv(m));
  WriteTextFile(out_dir / "config.resolved", m.config.Resolved());
}

}  // namespace coordlearn
