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

#ifndef COORDLEARN_QA_H_
#define COORDLEARN_QA_H_

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "coordlearn/kbstore.h"
#include "coordlearn/reasoner.h"
#include "coordlearn/types.h"

namespace coordlearn {

// One formal query produced by a template for one parameter entity.
struct Question {
  Symbol template_name;
  Symbol parameter;
  Atom query;

  std::string Key() const { return template_name.str() + "/" + parameter.str(); }
};

// One query per instance of the parameter collection, in name order. The
// answer variable stays open.
std::vector<Atom> ExpandTemplate(const KnowledgeBase& kb, const QuestionTemplate& t);
std::vector<Question> ExpandQuestions(const KnowledgeBase& kb,
                                      std::span<const QuestionTemplate> templates);

struct TemplateCount {
  std::size_t asked = 0;
  std::size_t answered = 0;
};

struct QAResult {
  std::size_t asked = 0;
  std::size_t answered = 0;
  std::map<std::string, bool> per_question;  // Question::Key() -> answered
  std::map<std::string, TemplateCount> per_template;
  // Total distinct bindings over all questions; only when requested.
  std::optional<std::size_t> bindings;
};

struct EvaluateOptions {
  bool count_bindings = false;
};

// Serial reference path.
QAResult EvaluateSerial(const KnowledgeBase& kb, const AxiomSet& axioms,
                        std::span<const Question> questions, const InferenceLimits& limits,
                        const EvaluateOptions& options = {});

// Questions fanned out over OpenMP threads. Same result as EvaluateSerial:
// each question is answered independently against the same snapshot.
QAResult EvaluateParallel(const KnowledgeBase& kb, const AxiomSet& axioms,
                          std::span<const Question> questions, const InferenceLimits& limits,
                          const EvaluateOptions& options = {});

QAResult Evaluate(const KnowledgeBase& kb, std::span<const HornClause> axioms,
                  std::span<const QuestionTemplate> templates, const InferenceLimits& limits);

// max(0, after.answered - before.answered). Throws Error if the two results
// were computed over different question sets.
std::int64_t Reward(const QAResult& before, const QAResult& after);

}  // namespace coordlearn

#endif  // COORDLEARN_QA_H_
