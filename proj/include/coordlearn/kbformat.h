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

#ifndef COORDLEARN_KBFORMAT_H_
#define COORDLEARN_KBFORMAT_H_

// Line-oriented S-expression knowledge format (.lkb).
//
//   fact        (pred Sym Sym ...)
//   rule        (<= (consequent ...) (antecedent ...) ...)
//   template    (template name (pattern ...) ParamCollection ?ans)
//   constraint  (argIsa pred k Collection)       k >= 1
//
// Symbols match [A-Za-z][A-Za-z0-9_-]*, variables are symbols prefixed
// with '?'. ';' starts a comment. A statement must fit on one line; a
// line may hold several statements.

#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "coordlearn/errors.h"
#include "coordlearn/types.h"

namespace coordlearn {

enum class StatementKind { kFact, kHornClause, kTemplateDef, kArgConstraint };

struct SourceStatement {
  std::variant<Fact, HornClause, QuestionTemplate, ArgConstraint> payload;
  int line = 0;

  StatementKind kind() const { return static_cast<StatementKind>(payload.index()); }
  std::string ToString() const;

  // Structural equality; the source line is not part of it.
  friend bool operator==(const SourceStatement& a, const SourceStatement& b) {
    return a.payload == b.payload;
  }
};

enum class ParseErrorKind { kLexical, kArity, kVariableInFact, kUnbalanced, kSyntax };

class ParseError : public Error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& message);
  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  const std::string& detail() const { return detail_; }

 private:
  ParseErrorKind kind_;
  int line_;
  std::string detail_;
};

std::vector<SourceStatement> ParseKb(std::string_view text);

// Canonical form: one statement per line, single spaces, no comments.
std::string Serialize(std::span<const SourceStatement> statements);

// Reads and parses a file. Parse errors are rethrown as Error with a
// "path:line: " prefix.
std::vector<SourceStatement> ParseKbFile(const std::filesystem::path& path);

std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view contents);

}  // namespace coordlearn

#endif  // COORDLEARN_KBFORMAT_H_
