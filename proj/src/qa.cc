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

#include "coordlearn/qa.h"

#include <algorithm>

#include "coordlearn/errors.h"

namespace coordlearn {
namespace {

Atom Substitute(const Atom& pattern, Symbol var, Symbol value) {
  Atom out = pattern;
  for (Term& t : out.args) {
    if (t.is_variable() && t.symbol() == var) t = Term::Constant(value);
  }
  return out;
}

struct Outcome {
  bool answered = false;
  std::size_t bindings = 0;
};

Outcome Ask(const KnowledgeBase& kb, const AxiomSet& axioms, const Atom& query,
            const InferenceLimits& limits, bool count_bindings) {
  if (!count_bindings) return {Answered(kb, axioms, query, limits), 0};
  const AnswerSet answers = Backchain(kb, axioms, query, limits);
  return {!answers.answers.empty(), answers.answers.size()};
}

QAResult Collect(std::span<const Question> questions, const std::vector<Outcome>& outcomes,
                 bool count_bindings) {
  QAResult r;
  std::size_t bindings = 0;
  for (std::size_t i = 0; i < questions.size(); ++i) {
    const bool ok = outcomes[i].answered;
    ++r.asked;
    r.answered += ok ? 1 : 0;
    bindings += outcomes[i].bindings;
    r.per_question[questions[i].Key()] = ok;
    auto& t = r.per_template[questions[i].template_name.str()];
    ++t.asked;
    t.answered += ok ? 1 : 0;
  }
  if (count_bindings) r.bindings = bindings;
  return r;
}

}  // namespace

std::vector<Atom> ExpandTemplate(const KnowledgeBase& kb, const QuestionTemplate& t) {
  std::vector<Atom> out;
  for (const Question& q : ExpandQuestions(kb, std::span(&t, 1))) out.push_back(q.query);
  return out;
}

std::vector<Question> ExpandQuestions(const KnowledgeBase& kb,
                                      std::span<const QuestionTemplate> templates) {
  std::vector<Question> out;
  for (const QuestionTemplate& t : templates) {
    const SymbolSet& members = kb.InstancesOf(t.parameter_collection);
    std::vector<Symbol> entities(members.begin(), members.end());
    std::sort(entities.begin(), entities.end(), ByName());
    const Symbol param = t.parameter_variable();
    for (Symbol e : entities) out.push_back({t.name, e, Substitute(t.pattern, param, e)});
  }
  return out;
}

QAResult EvaluateSerial(const KnowledgeBase& kb, const AxiomSet& axioms,
                        std::span<const Question> questions, const InferenceLimits& limits,
                        const EvaluateOptions& options) {
  std::vector<Outcome> outcomes(questions.size());
  for (std::size_t i = 0; i < questions.size(); ++i) {
    outcomes[i] = Ask(kb, axioms, questions[i].query, limits, options.count_bindings);
  }
  return Collect(questions, outcomes, options.count_bindings);
}

QAResult EvaluateParallel(const KnowledgeBase& kb, const AxiomSet& axioms,
                          std::span<const Question> questions, const InferenceLimits& limits,
                          const EvaluateOptions& options) {
  std::vector<Outcome> outcomes(questions.size());
  const auto n = static_cast<std::int64_t>(questions.size());
#pragma omp parallel for schedule(dynamic, 4)
  for (std::int64_t i = 0; i < n; ++i) {
    outcomes[i] = Ask(kb, axioms, questions[i].query, limits, options.count_bindings);
  }
  return Collect(questions, outcomes, options.count_bindings);
}

QAResult Evaluate(const KnowledgeBase& kb, std::span<const HornClause> axioms,
                  std::span<const QuestionTemplate> templates, const InferenceLimits& limits) {
  const std::vector<Question> questions = ExpandQuestions(kb, templates);
  return EvaluateParallel(kb, AxiomSet(axioms), questions, limits);
}

std::int64_t Reward(const QAResult& before, const QAResult& after) {
  const bool same = before.per_question.size() == after.per_question.size() &&
                    std::equal(before.per_question.begin(), before.per_question.end(),
                               after.per_question.begin(),
                               [](const auto& a, const auto& b) { return a.first == b.first; });
  if (!same) throw Error("reward: before/after results cover different question sets");
  const auto delta = static_cast<std::int64_t>(after.answered) -
                     static_cast<std::int64_t>(before.answered);
  return std::max<std::int64_t>(0, delta);
}

}  // namespace coordlearn
