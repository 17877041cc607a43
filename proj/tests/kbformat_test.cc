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

#include <filesystem>

#include <gtest/gtest.h>

#include "testing/oracles.h"

namespace coordlearn {
namespace {

ParseErrorKind KindOf(std::string_view text) {
  try {
    ParseKb(text);
  } catch (const ParseError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ParseErrorKind::kSyntax;
}

int LineOf(std::string_view text) {
  try {
    ParseKb(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(ParseKbTest, GenlsFact) {
  auto st = ParseKb("(genls Dog Mammal)");
  ASSERT_EQ(st.size(), 1u);
  EXPECT_EQ(st[0].kind(), StatementKind::kFact);
  EXPECT_EQ(std::get<Fact>(st[0].payload), MakeFact("genls", {"Dog", "Mammal"}));
  EXPECT_EQ(st[0].line, 1);
}

TEST(ParseKbTest, EmptyInput) {
  EXPECT_TRUE(ParseKb("").empty());
  EXPECT_TRUE(ParseKb("\n\n  ; only a comment\n").empty());
}

TEST(ParseKbTest, HornClause) {
  auto st = ParseKb("(<= (bornInState ?p ?s) (bornIn ?p ?c) (cityInState ?c ?s))");
  ASSERT_EQ(st.size(), 1u);
  const auto& c = std::get<HornClause>(st[0].payload);
  EXPECT_EQ(c.consequent, MakeAtom("bornInState", {"?p", "?s"}));
  ASSERT_EQ(c.antecedents.size(), 2u);
  EXPECT_EQ(c.antecedents[1], MakeAtom("cityInState", {"?c", "?s"}));
}

TEST(ParseKbTest, TemplateAndConstraint) {
  auto st = ParseKb(
      "(template whereBorn (bornInState ?P ?ans) Physicist ?ans)\n"
      "(argIsa bornIn 2 City) ; trailing comment\n");
  ASSERT_EQ(st.size(), 2u);
  const auto& t = std::get<QuestionTemplate>(st[0].payload);
  EXPECT_EQ(t.name.name(), "whereBorn");
  EXPECT_EQ(t.parameter_collection.name(), "Physicist");
  EXPECT_EQ(t.answer_variable.name(), "?ans");
  EXPECT_EQ(t.parameter_variable().name(), "?P");
  const auto& a = std::get<ArgConstraint>(st[1].payload);
  EXPECT_EQ(a.position, 2);
  EXPECT_EQ(a.collection.name(), "City");
  EXPECT_EQ(st[1].line, 2);
}

TEST(ParseKbTest, SeveralStatementsOnOneLine) {
  auto st = ParseKb("(isa Fido Dog) (isa Rex Dog)\n\n(genls Dog Mammal)");
  ASSERT_EQ(st.size(), 3u);
  EXPECT_EQ(st[1].line, 1);
  EXPECT_EQ(st[2].line, 3);
}

TEST(ParseKbTest, CaseSensitiveSymbols) {
  auto st = ParseKb("(isa a US-State) (isa a us-state)");
  EXPECT_NE(std::get<Fact>(st[0].payload), std::get<Fact>(st[1].payload));
}

TEST(ParseKbTest, ErrorKinds) {
  EXPECT_EQ(KindOf("(isa Fido Dog$)"), ParseErrorKind::kLexical);
  EXPECT_EQ(KindOf("(isa Fido ?)"), ParseErrorKind::kLexical);
  EXPECT_EQ(KindOf("()"), ParseErrorKind::kArity);
  EXPECT_EQ(KindOf("(alone)"), ParseErrorKind::kArity);
  EXPECT_EQ(KindOf("(isa ?x Dog)"), ParseErrorKind::kVariableInFact);
  EXPECT_EQ(KindOf("(isa Fido Dog"), ParseErrorKind::kUnbalanced);
  EXPECT_EQ(KindOf("(isa Fido Dog))"), ParseErrorKind::kUnbalanced);
  EXPECT_EQ(KindOf("(<= (p ?x))"), ParseErrorKind::kSyntax);
  EXPECT_EQ(KindOf("(argIsa p 0 C)"), ParseErrorKind::kSyntax);
  EXPECT_EQ(KindOf("(template t (p ?x ?y ?z) C ?z)"), ParseErrorKind::kSyntax);
  EXPECT_EQ(KindOf("isa Fido Dog"), ParseErrorKind::kSyntax);
}

TEST(ParseKbTest, ErrorLine) {
  EXPECT_EQ(LineOf("(isa A B)\n; c\n(isa A\n"), 3);
  EXPECT_EQ(LineOf("\n\n\n(p ?x)"), 4);
}

TEST(ParseKbTest, StatementMustFitOnOneLine) {
  EXPECT_EQ(KindOf("(isa Fido\n Dog)"), ParseErrorKind::kUnbalanced);
}

TEST(SerializeTest, Canonical) {
  auto st = ParseKb("  (genls   Dog\tMammal)   ; x\n(<= (q ?a)  (p ?a))");
  EXPECT_EQ(Serialize(st), "(genls Dog Mammal)\n(<= (q ?a) (p ?a))\n");
  EXPECT_EQ(Serialize({}), "");
}

TEST(SerializeTest, InjectiveOnDistinctLists) {
  auto a = ParseKb("(p A B)");
  auto c = ParseKb("(p AB)");
  EXPECT_NE(Serialize(a), Serialize(c));
  EXPECT_NE(Serialize(a), Serialize(ParseKb("(p A B) (p A B)")));
  EXPECT_NE(Serialize(ParseKb("(p A) (q B)")), Serialize(ParseKb("(q B) (p A)")));
}

TEST(RoundTripTest, RandomCorpora) {
  testing::TestRng rng(2024);
  for (int i = 0; i < 200; ++i) {
    const auto statements = testing::RandomStatements(rng, 1 + i % 25);
    const std::string text = testing::RenderNoisy(rng, statements);
    const auto parsed = ParseKb(text);
    ASSERT_EQ(parsed, statements) << text;
    EXPECT_EQ(ParseKb(Serialize(parsed)), parsed);
  }
}

TEST(ParseKbFileTest, PrefixesPath) {
  const auto path = std::filesystem::temp_directory_path() / "kbformat_bad.lkb";
  WriteTextFile(path, "(isa A B)\n(isa ?x B)\n");
  try {
    ParseKbFile(path);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(std::string(e.what()).rfind(path.string() + ":2: ", 0), 0u) << e.what();
  }
  std::filesystem::remove(path);
  EXPECT_THROW(ParseKbFile(path), Error);
}

}  // namespace
}  // namespace coordlearn
