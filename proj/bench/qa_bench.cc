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

// Serial reference vs OpenMP question evaluation.

#include <benchmark/benchmark.h>

#include <filesystem>

#include "coordlearn/qa.h"
#include "coordlearn/reasoner.h"
#include "coordlearn/synthgen.h"

namespace coordlearn {
namespace {

struct Workload {
  Scenario scenario;
  AxiomSet axioms;
  std::vector<Question> questions;
};

const Workload& Load(int which) {
  static const Workload birthplace = [] {
    Workload w{BirthplaceFixture(), {}, {}};
    w.axioms = AxiomSet(w.scenario.axioms);
    w.questions = ExpandQuestions(w.scenario.kb, w.scenario.templates);
    return w;
  }();
  static const Workload employment = [] {
    const auto path = std::filesystem::path(COORDLEARN_SOURCE_DIR) / "fixtures/scenarios/employment.gen";
    Workload w{Generate(GenConfig::FromFile(path)), {}, {}};
    w.axioms = AxiomSet(w.scenario.axioms);
    w.questions = ExpandQuestions(w.scenario.kb, w.scenario.templates);
    return w;
  }();
  return which == 0 ? birthplace : employment;
}

template <bool kParallel>
void BM_Evaluate(benchmark::State& state) {
  const Workload& w = Load(static_cast<int>(state.range(0)));
  const auto limits = InferenceLimits::Unlimited(5);
  for (auto _ : state) {
    auto r = kParallel ? EvaluateParallel(w.scenario.kb, w.axioms, w.questions, limits)
                       : EvaluateSerial(w.scenario.kb, w.axioms, w.questions, limits);
    benchmark::DoNotOptimize(r.answered);
  }
  state.counters["questions"] = static_cast<double>(w.questions.size());
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * w.questions.size()));
}

// 0 = birthplace fixture, 1 = generated employment scenario.
BENCHMARK(BM_Evaluate<false>)->Name("EvaluateSerial")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_Evaluate<true>)->Name("EvaluateParallel")->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond)->UseRealTime();

}  // namespace
}  // namespace coordlearn

BENCHMARK_MAIN();
