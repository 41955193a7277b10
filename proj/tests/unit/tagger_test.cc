// Copyright 2026 The SCG Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.h"
#include "scg/error.h"
#include "scg/logic.h"
#include "scg/tagger.h"

namespace scg::tagger {
namespace {

using logic::parse_expr;

std::vector<std::string> surfaces(const std::vector<Token> &tokens) {
  std::vector<std::string> out;
  for (const auto &t : tokens) out.push_back(t.surface);
  return out;
}

std::set<Expr> concept_set(const TagChart &chart, size_t begin, size_t end) {
  for (const auto &s : chart.spans) {
    if (s.begin == begin && s.end == end) {
      return {s.concepts.begin(), s.concepts.end()};
    }
  }
  return {};
}

std::set<Expr> exprs(std::initializer_list<const char *> items) {
  std::set<Expr> out;
  for (const char *i : items) out.insert(parse_expr(i));
  return out;
}

TEST(TokenizeTest, SplitsWhitespaceAndPunctuation) {
  EXPECT_EQ(surfaces(tokenize("The song has 6 notes.")),
            (std::vector<std::string>{"The", "song", "has", "6", "notes", "."}));
  EXPECT_EQ(surfaces(tokenize("G12V-K-Ras")),
            (std::vector<std::string>{"G12V", "-", "K", "-", "Ras"}));
  EXPECT_EQ(surfaces(tokenize("(a, b; c!)")),
            (std::vector<std::string>{"(", "a", ",", "b", ";", "c", "!", ")"}));
  EXPECT_TRUE(tokenize("  \t\n ").empty());
}

TEST(TokenizeTest, KeepsNumbersWhole) {
  EXPECT_EQ(surfaces(tokenize("3.5 kg, 1,000 people")),
            (std::vector<std::string>{"3.5", "kg", ",", "1,000", "people"}));
  EXPECT_EQ(surfaces(tokenize("end.")), (std::vector<std::string>{"end", "."}));
}

TEST(TokenizeTest, RecordsByteOffsets) {
  auto t = tokenize("big  blue");
  ASSERT_EQ(t.size(), 2u);
  EXPECT_EQ(t[1].begin, 5u);
  EXPECT_EQ(t[1].end, 9u);
}

TEST(NumeralTest, RecognizesDigitRuns) {
  EXPECT_TRUE(is_numeral_token("12"));
  EXPECT_TRUE(is_numeral_token("2.5"));
  EXPECT_FALSE(is_numeral_token("2."));
  EXPECT_FALSE(is_numeral_token("1.2.3"));
  EXPECT_FALSE(is_numeral_token("G12"));
  EXPECT_FALSE(is_numeral_token(""));
}

class BiologyTagTest : public ::testing::Test {
 protected:
  void SetUp() override {
    std::vector<std::string> files = {testing::data_path("biology.lex")};
    lexicon_ = Lexicon::from_files(files);
  }
  Lexicon lexicon_;
};

TEST_F(BiologyTagTest, ReproducesConceptTable) {
  TagChart chart = tag("G12V-K-Ras", lexicon_);
  ASSERT_EQ(surfaces(chart.tokens),
            (std::vector<std::string>{"G", "12", "V", "-", "K-Ras"}));
  EXPECT_EQ(concept_set(chart, 0, 1),
            exprs({"Glycine", "gibbsFreeEnergyOfSystem", "Gram",
                   "GuanineDeoxyribonucleotide",
                   "(AminoAcidResidueTypeFn Glycine)", "GeneralRating"}));
  EXPECT_EQ(concept_set(chart, 1, 2), exprs({"12"}));
  EXPECT_EQ(concept_set(chart, 2, 3),
            exprs({"Volt", "Valine", "V-TheTVMiniSeries",
                   "(AminoAcidResidueTypeFn Valine)"}));
  EXPECT_EQ(concept_set(chart, 4, 5), exprs({"K-Ras-Protein"}));
  EXPECT_EQ(chart.spans.size(), 4u);
}

TEST_F(BiologyTagTest, SegmentsKeepTheirParent) {
  TagChart chart = tag("G12V-K-Ras", lexicon_);
  ASSERT_TRUE(chart.tokens[0].parent.has_value());
  EXPECT_EQ(chart.tokens[0].parent->first, 0u);
  EXPECT_EQ(chart.tokens[0].parent->second, 4u);
  EXPECT_EQ(chart.tokens[2].begin, 3u);
  EXPECT_FALSE(chart.tokens[3].parent.has_value());
  EXPECT_EQ(chart.tokens[4].begin, 5u);
  EXPECT_EQ(chart.tokens[4].end, 10u);
}

TEST_F(BiologyTagTest, SingleLettersAreCaseSensitive) {
  TagChart chart = tag("g12v", lexicon_);
  EXPECT_TRUE(chart.spans.size() <= 1u);
  EXPECT_TRUE(lexicon_.lookup("g").empty());
  EXPECT_EQ(lexicon_.lookup("G").size(), 6u);
}

TEST(SegmentTest, PrefersLongerPieces) {
  Lexicon lex;
  lex.add("ab", {parse_expr("AB")});
  lex.add("a", {parse_expr("A")});
  lex.add("b", {parse_expr("B")});
  lex.add("c", {parse_expr("C")});
  auto parts = segment("abc", lex);
  ASSERT_GE(parts.size(), 2u);
  EXPECT_EQ(parts[0], (std::vector<std::string>{"ab", "c"}));
  EXPECT_EQ(parts[1], (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(segment("abx", lex).empty());
  EXPECT_TRUE(segment("ab", Lexicon()).empty());
}

TEST(SegmentTest, DigitRunsAreMaximal) {
  Lexicon lex;
  lex.add("x", {parse_expr("X")});
  auto parts = segment("x123x", lex);
  ASSERT_EQ(parts.size(), 1u);
  EXPECT_EQ(parts[0], (std::vector<std::string>{"x", "123", "x"}));
}

TEST(LexiconTest, CaseFoldingAndMultiwordEntries) {
  auto lex = Lexicon::from_text(R"(
    (lex "White House" TheWhiteHouse)
    (lex "bank" Bank-Topographical BankOrganization)
    (lex "Bank" BankOrganization)
  )");
  EXPECT_EQ(lex.lookup("white house").size(), 1u);
  EXPECT_EQ(lex.lookup("BANK").size(), 2u);
  EXPECT_EQ(lex.max_tokens(), 2u);
  TagChart chart = tag("the White House", lex);
  EXPECT_EQ(concept_set(chart, 1, 3), exprs({"TheWhiteHouse"}));
}

TEST(LexiconTest, HyphenatedEntriesJoinLongestFirst) {
  auto lex = Lexicon::from_text(R"(
    (lex "K-Ras" KRas)
    (lex "K-Ras-4B" KRas4B)
    (lex "Ras" Ras)
  )");
  TagChart chart = tag("K-Ras-4B", lex);
  ASSERT_EQ(chart.tokens.size(), 1u);
  EXPECT_EQ(concept_set(chart, 0, 1), exprs({"KRas4B"}));
  TagChart plain = tag("K-Ras", lex);
  ASSERT_EQ(plain.tokens.size(), 1u);
  EXPECT_EQ(concept_set(plain, 0, 1), exprs({"KRas"}));
}

TEST(LexiconTest, NumeralsReceiveTheirValue) {
  Lexicon lex;
  TagChart chart = tag("2 sandwiches and 0.5 cups", lex);
  EXPECT_EQ(concept_set(chart, 0, 1), exprs({"2"}));
  EXPECT_EQ(concept_set(chart, 3, 4), exprs({"0.5"}));
}

TEST(LexiconTest, RejectsMalformedEntries) {
  EXPECT_THROW(Lexicon::from_text("(lex \"a\")"), LoadError);
  EXPECT_THROW(Lexicon::from_text("(lex a B)"), LoadError);
  EXPECT_THROW(Lexicon::from_text("(lex \"a\" ?X)"), LoadError);
  EXPECT_THROW(Lexicon::from_text("(lex-nat \"a\" Glycine)"), LoadError);
  EXPECT_THROW(Lexicon::from_text("(lex \"a\" B :loud)"), LoadError);
  try {
    Lexicon::from_text("(lex \"a\" A)\n(lexeme \"b\" B)", "words.lex");
    FAIL();
  } catch (const LoadError &e) {
    EXPECT_NE(std::string(e.what()).find("words.lex:2"), std::string::npos);
  }
}

}  // namespace
}  // namespace scg::tagger
