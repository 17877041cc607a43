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

#include "coordlearn/kbformat.h"

#include <cctype>
#include <fstream>
#include <memory>
#include <set>
#include <sstream>

namespace coordlearn {
namespace {

const char* KindName(ParseErrorKind kind) {
  switch (kind) {
    case ParseErrorKind::kLexical: return "lexical error";
    case ParseErrorKind::kArity: return "arity error";
    case ParseErrorKind::kVariableInFact: return "variable in fact";
    case ParseErrorKind::kUnbalanced: return "unbalanced parentheses";
    case ParseErrorKind::kSyntax: return "syntax error";
  }
  return "error";
}

enum class TokenType { kOpen, kClose, kSymbol, kVariable, kInteger, kImplies };

struct Token {
  TokenType type;
  std::string_view text;
};

bool IsSymbolStart(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool IsSymbolChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_' || c == '-';
}

std::vector<Token> Tokenize(std::string_view line, int line_no) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    const char c = line[i];
    if (c == ';') break;
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      continue;
    }
    if (c == '(' || c == ')') {
      out.push_back({c == '(' ? TokenType::kOpen : TokenType::kClose, line.substr(i, 1)});
      ++i;
      continue;
    }
    if (c == '<' && i + 1 < line.size() && line[i + 1] == '=') {
      out.push_back({TokenType::kImplies, line.substr(i, 2)});
      i += 2;
      continue;
    }
    std::size_t j = i;
    TokenType type;
    if (c == '?') {
      ++j;
      if (j >= line.size() || !IsSymbolStart(line[j])) {
        throw ParseError(ParseErrorKind::kLexical, line_no, "malformed variable at column " +
                                                                std::to_string(i + 1));
      }
      while (j < line.size() && IsSymbolChar(line[j])) ++j;
      type = TokenType::kVariable;
    } else if (IsSymbolStart(c)) {
      while (j < line.size() && IsSymbolChar(line[j])) ++j;
      type = TokenType::kSymbol;
    } else if (std::isdigit(static_cast<unsigned char>(c)) != 0) {
      while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j])) != 0) ++j;
      type = TokenType::kInteger;
    } else {
      throw ParseError(ParseErrorKind::kLexical, line_no,
                       "unexpected character at column " + std::to_string(i + 1));
    }
    // A token must end at a delimiter.
    if (j < line.size()) {
      const char d = line[j];
      if (d != ' ' && d != '\t' && d != '\r' && d != '(' && d != ')' && d != ';') {
        throw ParseError(ParseErrorKind::kLexical, line_no,
                         "unexpected character at column " + std::to_string(j + 1));
      }
    }
    out.push_back({type, line.substr(i, j - i)});
    i = j;
  }
  return out;
}

struct Node {
  bool is_list = false;
  Token token{};
  std::vector<Node> children;
};

// Splits one line's tokens into top-level S-expressions.
std::vector<Node> BuildTrees(const std::vector<Token>& tokens, int line_no) {
  std::vector<Node> roots;
  std::vector<Node> stack;
  for (const Token& t : tokens) {
    if (t.type == TokenType::kOpen) {
      stack.push_back(Node{true, t, {}});
    } else if (t.type == TokenType::kClose) {
      if (stack.empty()) {
        throw ParseError(ParseErrorKind::kUnbalanced, line_no, "unexpected ')'");
      }
      Node done = std::move(stack.back());
      stack.pop_back();
      if (stack.empty()) {
        roots.push_back(std::move(done));
      } else {
        stack.back().children.push_back(std::move(done));
      }
    } else {
      if (stack.empty()) {
        throw ParseError(ParseErrorKind::kSyntax, line_no,
                         "bare token '" + std::string(t.text) + "' outside a statement");
      }
      stack.back().children.push_back(Node{false, t, {}});
    }
  }
  if (!stack.empty()) {
    throw ParseError(ParseErrorKind::kUnbalanced, line_no, "missing ')'");
  }
  return roots;
}

Symbol ExpectSymbol(const Node& n, int line_no, const char* what) {
  if (n.is_list || n.token.type != TokenType::kSymbol) {
    throw ParseError(ParseErrorKind::kSyntax, line_no, std::string("expected ") + what);
  }
  return Symbol::Intern(n.token.text);
}

Atom ParseAtom(const Node& n, int line_no) {
  if (!n.is_list) throw ParseError(ParseErrorKind::kSyntax, line_no, "expected an atom");
  if (n.children.empty()) throw ParseError(ParseErrorKind::kArity, line_no, "empty list");
  Atom atom{ExpectSymbol(n.children[0], line_no, "predicate symbol"), {}};
  if (n.children.size() < 2) {
    throw ParseError(ParseErrorKind::kArity, line_no,
                     "atom '" + atom.predicate.str() + "' has no arguments");
  }
  for (std::size_t i = 1; i < n.children.size(); ++i) {
    const Node& c = n.children[i];
    if (c.is_list || (c.token.type != TokenType::kSymbol && c.token.type != TokenType::kVariable)) {
      throw ParseError(ParseErrorKind::kSyntax, line_no, "atom arguments must be symbols or variables");
    }
    atom.args.push_back(Term::Of(c.token.text));
  }
  return atom;
}

SourceStatement ParseStatement(const Node& n, int line_no) {
  if (n.children.empty()) throw ParseError(ParseErrorKind::kArity, line_no, "empty list");
  const Node& head = n.children[0];

  if (!head.is_list && head.token.type == TokenType::kImplies) {
    if (n.children.size() < 3) {
      throw ParseError(ParseErrorKind::kSyntax, line_no,
                       "rule needs a consequent and at least one antecedent");
    }
    HornClause clause{ParseAtom(n.children[1], line_no), {}};
    for (std::size_t i = 2; i < n.children.size(); ++i) {
      clause.antecedents.push_back(ParseAtom(n.children[i], line_no));
    }
    return {std::move(clause), line_no};
  }

  const Symbol pred = ExpectSymbol(head, line_no, "predicate symbol");

  if (pred.name() == "template") {
    if (n.children.size() != 5) {
      throw ParseError(ParseErrorKind::kSyntax, line_no,
                       "template form is (template name (pattern...) Collection ?ans)");
    }
    QuestionTemplate t;
    t.name = ExpectSymbol(n.children[1], line_no, "template name");
    t.pattern = ParseAtom(n.children[2], line_no);
    t.parameter_collection = ExpectSymbol(n.children[3], line_no, "parameter collection");
    const Node& ans = n.children[4];
    if (ans.is_list || ans.token.type != TokenType::kVariable) {
      throw ParseError(ParseErrorKind::kSyntax, line_no, "template answer must be a variable");
    }
    t.answer_variable = Symbol::Intern(ans.token.text);
    std::set<Symbol> vars;
    for (const Term& term : t.pattern.args) {
      if (term.is_variable()) vars.insert(term.symbol());
    }
    if (vars.size() != 2 || !vars.contains(t.answer_variable)) {
      throw ParseError(ParseErrorKind::kSyntax, line_no,
                       "template pattern needs exactly one parameter and one answer variable");
    }
    return {std::move(t), line_no};
  }

  if (pred.name() == "argIsa") {
    if (n.children.size() != 4) {
      throw ParseError(ParseErrorKind::kSyntax, line_no, "argIsa form is (argIsa pred k Collection)");
    }
    ArgConstraint c;
    c.predicate = ExpectSymbol(n.children[1], line_no, "predicate symbol");
    const Node& k = n.children[2];
    if (k.is_list || k.token.type != TokenType::kInteger) {
      throw ParseError(ParseErrorKind::kSyntax, line_no, "argIsa position must be an integer");
    }
    const std::string digits(k.token.text);
    if (digits.size() > 6 || std::stoi(digits) < 1) {
      throw ParseError(ParseErrorKind::kSyntax, line_no, "argIsa position must be >= 1");
    }
    c.position = std::stoi(digits);
    c.collection = ExpectSymbol(n.children[3], line_no, "collection symbol");
    return {c, line_no};
  }

  Fact fact{pred, {}};
  if (n.children.size() < 2) {
    throw ParseError(ParseErrorKind::kArity, line_no, "fact '" + pred.str() + "' has no arguments");
  }
  for (std::size_t i = 1; i < n.children.size(); ++i) {
    const Node& c = n.children[i];
    if (!c.is_list && c.token.type == TokenType::kVariable) {
      throw ParseError(ParseErrorKind::kVariableInFact, line_no,
                       "variable " + std::string(c.token.text) + " in fact '" + pred.str() + "'");
    }
    fact.args.push_back(ExpectSymbol(c, line_no, "constant symbol"));
  }
  return {std::move(fact), line_no};
}

}  // namespace

ParseError::ParseError(ParseErrorKind kind, int line, const std::string& message)
    : Error("line " + std::to_string(line) + ": " + KindName(kind) + ": " + message),
      kind_(kind),
      line_(line),
      detail_(std::string(KindName(kind)) + ": " + message) {}

std::string SourceStatement::ToString() const {
  return std::visit([](const auto& p) { return p.ToString(); }, payload);
}

std::vector<SourceStatement> ParseKb(std::string_view text) {
  std::vector<SourceStatement> out;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++line_no;
    const std::string_view line = text.substr(pos, end - pos);
    for (const Node& root : BuildTrees(Tokenize(line, line_no), line_no)) {
      out.push_back(ParseStatement(root, line_no));
    }
    pos = end + 1;
  }
  return out;
}

std::string Serialize(std::span<const SourceStatement> statements) {
  std::string out;
  for (const SourceStatement& s : statements) {
    out += s.ToString();
    out += '\n';
  }
  return out;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << contents;
  if (!out) throw Error("write failed: " + path.string());
}

std::vector<SourceStatement> ParseKbFile(const std::filesystem::path& path) {
  const std::string text = ReadTextFile(path);
  try {
    return ParseKb(text);
  } catch (const ParseError& e) {
    throw Error(path.string() + ":" + std::to_string(e.line()) + ": " + e.detail());
  }
}

}  // namespace coordlearn
