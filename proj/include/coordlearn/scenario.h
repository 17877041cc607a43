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

#ifndef COORDLEARN_SCENARIO_H_
#define COORDLEARN_SCENARIO_H_

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "coordlearn/kbformat.h"
#include "coordlearn/kbstore.h"
#include "coordlearn/types.h"

namespace coordlearn {

// A full KB with the axioms and templates used to ask questions of it.
struct Scenario {
  KnowledgeBase kb;
  std::vector<HornClause> axioms;
  std::vector<QuestionTemplate> templates;

  // Facts and argIsa constraints go to the KB, the rest to their lists.
  // Repeated clauses and templates are kept once.
  void Add(std::span<const SourceStatement> statements);

  static Scenario FromStatements(std::span<const SourceStatement> statements);
  // Any of the paths may be empty. Statements of every kind are accepted
  // from every file.
  static Scenario Load(const std::filesystem::path& kb, const std::filesystem::path& axioms,
                       const std::filesystem::path& templates);

  // Split back into the three-file layout.
  std::vector<SourceStatement> KbStatements() const;
  std::vector<SourceStatement> AxiomStatements() const;
  std::vector<SourceStatement> TemplateStatements() const;
};

}  // namespace coordlearn

#endif  // COORDLEARN_SCENARIO_H_
