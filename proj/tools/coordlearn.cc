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

// Command-line front end: generate scenarios, run experiments, evaluate a
// KB, and play the Battle-of-Sexes demo.
//
// Exit codes: 0 success, 1 usage error, 2 data error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "coordlearn/errors.h"
#include "coordlearn/game.h"
#include "coordlearn/kbformat.h"
#include "coordlearn/learners.h"
#include "coordlearn/qa.h"
#include "coordlearn/scenario.h"
#include "coordlearn/simulator.h"
#include "coordlearn/synthgen.h"

namespace cl = coordlearn;

namespace {

constexpr int kUsageError = 1;
constexpr int kDataError = 2;

void SetUpLogging() {
  auto logger = spdlog::stderr_color_mt("coordlearn");
  spdlog::set_default_logger(logger);
  spdlog::set_pattern("[%l] %v");
  const char* level = std::getenv("COORDLEARN_LOG");
  std::string l = level ? level : "error";
  if (l == "debug") {
    spdlog::set_level(spdlog::level::debug);
  } else if (l == "info") {
    spdlog::set_level(spdlog::level::info);
  } else {
    spdlog::set_level(spdlog::level::err);
  }
}

std::string ConfigKeysHelp() {
  std::string s = "Experiment config keys (key = value, '#' comments):\n ";
  for (std::string_view k : cl::ExperimentConfigKeys()) s += " " + std::string(k);
  return s;
}

void WriteScenario(const cl::Scenario& s, const std::filesystem::path& out) {
  std::filesystem::create_directories(out);
  cl::WriteTextFile(out / "kb.lkb", cl::Serialize(s.KbStatements()));
  cl::WriteTextFile(out / "axioms.lkb", cl::Serialize(s.AxiomStatements()));
  cl::WriteTextFile(out / "templates.lkb", cl::Serialize(s.TemplateStatements()));
}

int Generate(const std::string& config, const std::string& fixture, const std::string& out) {
  cl::Scenario s;
  if (!fixture.empty()) {
    if (fixture == "birthplace") {
      s = cl::BirthplaceFixture();
    } else if (fixture == "birthplace_graded") {
      s = cl::GradedBirthplaceFixture();
    } else {
      throw cl::ConfigError("fixture", "unknown fixture '" + fixture + "'");
    }
  } else {
    s = cl::Generate(cl::GenConfig::FromFile(config));
  }
  WriteScenario(s, out);
  std::cout << "wrote " << s.kb.size() << " facts, " << s.axioms.size() << " axioms, "
            << s.templates.size() << " templates to " << out << "\n";
  std::cout << "density " << s.kb.Density() << "\n";
  return 0;
}

int Run(const std::string& config_path, const std::string& out, const std::vector<std::uint64_t>& seeds,
        int threads) {
  cl::ExperimentConfig config = cl::ExperimentConfig::FromFile(config_path);
  if (threads >= 0) config.threads = threads;
  const cl::Scenario scenario = cl::LoadScenario(config);
  std::vector<cl::Metrics> runs;
  if (seeds.size() <= 1) {
    if (!seeds.empty()) config.seed = seeds.front();
    spdlog::info("running {} for {} episodes, seed {}", config.scenario, config.episodes, config.seed);
    runs.push_back(cl::RunExperiment(scenario, config));
  } else {
    spdlog::info("running {} seeds of {}", seeds.size(), config.scenario);
    runs = cl::RunReplicas(scenario, config, seeds, config.threads);
  }
  for (const cl::Metrics& m : runs) {
    std::filesystem::path dir = out;
    if (runs.size() > 1) dir /= "seed-" + std::to_string(m.config.seed);
    cl::EmitResults(m, dir);
    std::cout << "# " << m.scenario << " seed " << m.config.seed << ": " << m.agents << " agents, "
              << m.joint_actions << " joint actions, " << m.questions << " questions\n";
    std::cout << cl::SummaryCsv(m);
  }
  return 0;
}

int Evaluate(const std::string& kb, const std::string& axioms, const std::string& templates,
             int depth, const std::string& budget) {
  const cl::Scenario s = cl::Scenario::Load(kb, axioms, templates);
  const std::vector<cl::Question> questions = cl::ExpandQuestions(s.kb, s.templates);
  const cl::AxiomSet set(s.axioms);
  const cl::QAResult r =
      cl::EvaluateSerial(s.kb, set, questions, cl::InferenceLimits{depth, cl::ParseBudget(budget)}, {.count_bindings = true});
  std::cout << "asked " << r.asked << "\nanswered " << r.answered << "\nbindings "
            << r.bindings.value_or(0) << "\n";
  for (const auto& [name, count] : r.per_template) {
    std::cout << "template " << name << " " << count.answered << "/" << count.asked << "\n";
  }
  return 0;
}

int Bos(std::size_t episodes, std::size_t seeds, double epsilon, double alpha, bool shared,
        const std::string& payoff_file) {
  const cl::PayoffMatrix matrix =
      payoff_file.empty() ? cl::PayoffMatrix::BattleOfSexes() : cl::PayoffMatrix::Load(payoff_file);
  const cl::MatrixGame game(matrix);
  const std::vector<cl::Profile> nash = cl::PureNashEquilibria(matrix);
  cl::JalParams params{.alpha = alpha, .gamma = 0.0, .epsilon = epsilon};
  std::size_t converged = 0;
  const std::size_t tail = std::min<std::size_t>(200, episodes);
  for (std::size_t seed = 1; seed <= seeds; ++seed) {
    const cl::SelfPlayResult r = cl::SelfPlay(game, params, episodes, seed, shared);
    const cl::TailAgreement t = cl::MostFrequentInTail(r.history, tail, nash);
    const bool ok = t.fraction >= 0.85;
    converged += ok;
    std::cout << "seed " << seed << " equilibrium";
    for (std::size_t i = 0; i < t.profile.size(); ++i) {
      std::cout << " " << matrix.actions[i][t.profile[i]];
    }
    std::cout << " tail_fraction " << t.fraction << (ok ? " converged" : "") << "\n";
  }
  std::cout << "converged " << converged << "/" << seeds << " (tail " << tail
            << ", threshold 0.85)\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  SetUpLogging();
  CLI::App app{"Coordination-based knowledge acquisition simulator"};
  app.require_subcommand(1);

  std::string gen_config, gen_fixture, gen_out;
  auto* gen = app.add_subcommand("generate", "Write a scenario as kb.lkb, axioms.lkb, templates.lkb");
  auto* gen_src = gen->add_option("--config", gen_config, "Generator config file");
  gen->add_option("--fixture", gen_fixture, "Built-in fixture: birthplace | birthplace_graded")
      ->excludes(gen_src);
  gen->add_option("--out", gen_out, "Output directory")->required();

  std::string run_config, run_out;
  std::vector<std::uint64_t> run_seeds;
  int run_threads = -1;
  auto* run = app.add_subcommand("run", "Run baseline vs coordination experiments");
  run->footer(ConfigKeysHelp());
  run->add_option("--config", run_config, "Experiment config file")->required();
  run->add_option("--out", run_out, "Output directory")->required();
  run->add_option("--seed", run_seeds, "Seed(s); several seeds run as parallel replicas");
  run->add_option("--threads", run_threads, "Worker threads (0: all cores)");

  std::string ev_kb, ev_axioms, ev_templates, ev_budget = "unlimited";
  int ev_depth = 5;
  auto* ev = app.add_subcommand("evaluate", "One-shot Q/A report");
  ev->add_option("--kb", ev_kb, "Facts file")->required();
  ev->add_option("--axioms", ev_axioms, "Horn clause file");
  ev->add_option("--templates", ev_templates, "Question template file");
  ev->add_option("--depth", ev_depth, "Inference depth")->check(CLI::Range(0, 64));
  ev->add_option("--budget", ev_budget, "steps:N | seconds:S | unlimited");

  std::size_t bos_episodes = 2000, bos_seeds = 20;
  double bos_epsilon = 0.05, bos_alpha = 0.5;
  bool bos_shared = false;
  std::string bos_payoffs;
  auto* bos = app.add_subcommand("bos", "Battle-of-Sexes self-play with convergence report");
  bos->add_option("--episodes", bos_episodes, "Episodes per seed")->check(CLI::PositiveNumber);
  bos->add_option("--seeds", bos_seeds, "Seeds 1..K")->check(CLI::PositiveNumber);
  bos->add_option("--epsilon", bos_epsilon, "Exploration rate")->check(CLI::Range(0.0, 1.0));
  bos->add_option("--alpha", bos_alpha, "Learning rate")->check(CLI::Range(0.0, 1.0));
  bos->add_flag("--shared", bos_shared, "Pay both agents the first agent's utility");
  bos->add_option("--payoffs", bos_payoffs, "Payoff matrix file instead of the built-in game");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsageError;
  }

  try {
    if (*gen) {
      if (gen_config.empty() && gen_fixture.empty()) {
        std::cerr << "generate: one of --config or --fixture is required\n";
        return kUsageError;
      }
      return Generate(gen_config, gen_fixture, gen_out);
    }
    if (*run) return Run(run_config, run_out, run_seeds, run_threads);
    if (*ev) return Evaluate(ev_kb, ev_axioms, ev_templates, ev_depth, ev_budget);
    if (*bos) return Bos(bos_episodes, bos_seeds, bos_epsilon, bos_alpha, bos_shared, bos_payoffs);
  } catch (const cl::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kDataError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kDataError;
  }
  return kUsageError;
}
