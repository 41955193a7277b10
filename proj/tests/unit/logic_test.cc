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


#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.h"
#include "scg/error.h"
#include "scg/logic.h"
#include "scg/sexpr.h"

namespace scg::logic {
namespace {

std::vector<std::string> corpus() {
  std::ifstream in(std::string(SCG_TEST_DATA_DIR) + "/expressions.txt");
  std::vector<std::string> blocks;
  std::string line, block;
  auto flush = [&] {
    if (block.find_first_not_of(" \n") != std::string::npos) {
      blocks.push_back(block);
    }
    block.clear();
  };
  while (std::getline(in, line)) {
    if (!line.empty() && line[0] == ';') continue;
    if (line.find_first_not_of(' ') == std::string::npos) {
      flush();
    } else {
      block += line + "\n";
    }
  }
  flush();
  return blocks;
}

TEST(ParseTest, CorpusRoundTrips) {
  auto blocks = corpus();
  ASSERT_GE(blocks.size(), 15u);
  for (const auto &text : blocks) {
    Expr e = parse_expr(text);
    EXPECT_EQ(parse_expr(e.str()), e) << text;
    EXPECT_EQ(parse_expr(e.str()).str(), e.str());
  }
}

TEST(ParseTest, ClassifiesNodes) {
  EXPECT_EQ(parse_expr("Dog").kind(), Kind::kConstant);
  EXPECT_EQ(parse_expr("?X").kind(), Kind::kQueryVar);
  EXPECT_EQ(parse_expr("$Food#1").kind(), Kind::kTypedVar);
  EXPECT_EQ(parse_expr("$Food#1").name(), "Food");
  EXPECT_EQ(parse_expr("$Food#1").index(), 1);
  EXPECT_EQ(parse_expr("12").kind(), Kind::kNumeral);
  EXPECT_EQ(parse_expr("\"Fido\"").kind(), Kind::kText);
  EXPECT_EQ(parse_expr("(GroupFn Sandwich)").kind(), Kind::kNat);
  EXPECT_EQ(parse_expr("(isa ?X Dog)").kind(), Kind::kApp);
  EXPECT_EQ(parse_expr("(and (p a) (q b))").kind(), Kind::kAnd);
  EXPECT_EQ(parse_expr("(not (p a))").kind(), Kind::kNot);
  EXPECT_EQ(parse_expr("¬(p a)").kind(), Kind::kNot);
  EXPECT_EQ(parse_expr("(Kappa (?A ?B) (p ?A ?B))").kind(), Kind::kKappa);
  EXPECT_EQ(parse_expr("(TheSetOf ?A (p ?A))").kind(), Kind::kTheSetOf);
  EXPECT_EQ(parse_expr("(thereExists ?A (p ?A))").kind(), Kind::kExists);
  EXPECT_EQ(parse_expr("((TypeCapableFn b) x y)").kind(), Kind::kApp);
}

TEST(ParseTest, StripsConstantPrefix) {
  EXPECT_EQ(parse_expr("(#$YearFn 2015)"), parse_expr("(YearFn 2015)"));
}

TEST(ParseTest, NumeralsAreExact) {
  EXPECT_EQ(parse_expr("2.50"), parse_expr("2.5"));
  EXPECT_EQ(parse_expr("2.50").str(), "2.5");
  EXPECT_EQ(parse_expr("-3").str(), "-3");
  EXPECT_NE(parse_expr("2"), parse_expr("2.1"));
  EXPECT_EQ(parse_expr("0.05").str(), "0.05");
  EXPECT_EQ(parse_expr("-0.125").str(), "-0.125");
  EXPECT_EQ(parse_expr("1/3").str(), "1/3");
  EXPECT_EQ(parse_expr("6/3"), parse_expr("2"));
}

TEST(ParseTest, ReportsPositions) {
  try {
    parse_expr("(isa ?X\n  (GroupFn Dog)");
    FAIL() << "expected SyntaxError";
  } catch (const SyntaxError &e) {
    EXPECT_GE(e.line(), 1);
  }
  EXPECT_THROW(parse_expr("(isa ?X Dog))"), SyntaxError);
  EXPECT_THROW(parse_expr("\"open"), SyntaxError);
  EXPECT_THROW(parse_expr(""), SyntaxError);
}

TEST(ParseTest, RejectsMalformedBinders) {
  EXPECT_THROW(parse_expr("(Kappa ?A (p ?A))"), Error);
  EXPECT_THROW(parse_expr("(TheSetOf Dog (p Dog))"), Error);
  EXPECT_THROW(parse_expr("(and)"), Error);
  EXPECT_THROW(parse_expr("(not (p a) (q b))"), Error);
}

TEST(FreeVarsTest, RespectsBinders) {
  Expr e = parse_expr(
      "(and (p ?X $T#0) (thereExists ?Y (q ?Y ?Z)) (Kappa (?X) (r ?X)))");
  std::set<Expr> want = {parse_expr("?X"), parse_expr("$T#0"),
                         parse_expr("?Z")};
  EXPECT_EQ(free_vars(e), want);
  auto q = free_query_vars(e);
  ASSERT_EQ(q.size(), 2u);
  EXPECT_EQ(q[0], parse_expr("?X"));
  EXPECT_EQ(q[1], parse_expr("?Z"));
}

TEST(SubstituteTest, ReplacesFreeOccurrencesOnly) {
  Expr e = parse_expr("(and (p ?X) (thereExists ?X (q ?X)))");
  Expr got = substitute(e, {{parse_expr("?X"), parse_expr("Dog")}});
  EXPECT_EQ(got, parse_expr("(and (p Dog) (thereExists ?X (q ?X)))"));
}

TEST(SubstituteTest, AvoidsCapture) {
  Expr e = parse_expr("(thereExists ?Y (loves ?X ?Y))");
  Expr got = substitute(e, {{parse_expr("?X"), parse_expr("?Y")}});
  ASSERT_EQ(got.kind(), Kind::kExists);
  EXPECT_NE(got.bound()[0], parse_expr("?Y"));
  EXPECT_TRUE(alpha_equivalent(got, parse_expr("(thereExists ?W (loves ?Y ?W))")) ||
              got.body().args()[0] == parse_expr("?Y"));
  EXPECT_EQ(got.body().args()[0], parse_expr("?Y"));
}

TEST(SubstituteTest, FillsTypedVariables) {
  Expr e = parse_expr("(LargeFn $PositiveDimensionalThing#0)");
  Expr got = substitute(e, {{parse_expr("$PositiveDimensionalThing#0"),
                             parse_expr("Building")}});
  EXPECT_EQ(got, parse_expr("(LargeFn Building)"));
}

TEST(RenameTest, SuffixesFreeQueryVariables) {
  Expr e = parse_expr("(and (isa ?EAT EatingEvent) (thereExists ?Y (p ?Y)))");
  EXPECT_EQ(rename_query_vars(e, 3),
            parse_expr("(and (isa ?EAT_3 EatingEvent) (thereExists ?Y (p ?Y)))"));
}

TEST(SimplifyTest, EliminatesEqualityToGroundTerm) {
  Expr e = parse_expr("(and (equals ?X Dog) (isa ?Y ?X) (p ?Y))");
  EXPECT_EQ(simplify(e), parse_expr("(and (isa ?Y Dog) (p ?Y))"));
}

TEST(SimplifyTest, KeepsSmallerVariableName) {
  Expr e = parse_expr("(and (equals ?EVT ?EAT_1) (doneBy ?EVT Bob))");
  EXPECT_EQ(simplify(e), parse_expr("(doneBy ?EAT_1 Bob)"));
}

TEST(SimplifyTest, FlattensAndDeduplicates) {
  Expr e = parse_expr("(and (p a) (and (q b) (p a)) (and (r c)))");
  EXPECT_EQ(simplify(e), parse_expr("(and (p a) (q b) (r c))"));
  EXPECT_EQ(simplify(parse_expr("(and (p a) (p a))")), parse_expr("(p a)"));
}

TEST(SimplifyTest, LeavesNestedEqualitiesAlone) {
  Expr e = parse_expr("(not (and (equals ?X Dog) (p ?X)))");
  EXPECT_EQ(simplify(e), e);
  Expr f = parse_expr("(and (equals ?X (F ?Y)) (p ?X))");
  EXPECT_EQ(simplify(f), f);
}

TEST(SimplifyTest, ProtectedVariableSurvives) {
  Expr e = parse_expr("(and (equals ?X Dog) (p ?X))");
  auto r = simplify_tracked(e, {parse_expr("?X")});
  EXPECT_EQ(r.expr, e);
  auto free = simplify_tracked(e);
  EXPECT_EQ(free.expr, parse_expr("(p Dog)"));
  EXPECT_EQ(free.eliminated.at(parse_expr("?X")), parse_expr("Dog"));
}

TEST(SimplifyTest, TracksChainedEliminations) {
  Expr e = parse_expr("(and (equals ?B ?A) (equals ?C ?B) (p ?C))");
  auto r = simplify_tracked(e);
  EXPECT_EQ(r.expr, parse_expr("(p ?A)"));
  EXPECT_EQ(r.eliminated.at(parse_expr("?C")), parse_expr("?A"));
  EXPECT_EQ(r.eliminated.at(parse_expr("?B")), parse_expr("?A"));
}

TEST(SimplifyProperty, IdempotentOnRandomExpressions) {
  testing::ExprGen gen(2026, true);
  for (int i = 0; i < 10000; ++i) {
    Expr e = gen.sentence(4);
    Expr once = simplify(e);
    ASSERT_EQ(simplify(once), once) << e.str();
  }
}

TEST(SimplifyProperty, PreservesTruthInGroundModels) {
  testing::ExprGen gen(99);
  int changed = 0;
  for (int i = 0; i < 10000; ++i) {
    Expr e = gen.sentence(3);
    Expr s = simplify(e);
    if (s != e) ++changed;
    testing::GroundModel model(static_cast<unsigned>(i) * 7919u + 1u);
    ASSERT_EQ(model.holds_closed(e), model.holds_closed(s))
        << e.str() << " => " << s.str();
  }
  // The generator must exercise equality elimination, not just copy input.
  EXPECT_GT(changed, 1000);
}

TEST(GroundModelTest, EvaluatesKnownFormulas) {
  testing::GroundModel m(5);
  EXPECT_TRUE(m.holds_closed(parse_expr("(equals c1 c1)")));
  EXPECT_TRUE(m.holds_closed(parse_expr("(thereExists ?A (equals ?A c3))")));
  Expr fc2 = Expr::nat("F", {parse_expr("c2")});
  EXPECT_FALSE(m.holds_closed(
      Expr::negate(Expr::app("equals", {fc2, fc2}))));
  Expr p = parse_expr("(P c0)");
  EXPECT_NE(m.holds_closed(p), m.holds_closed(Expr::negate(p)));
}

TEST(QuantifyTest, ClosesInFirstOccurrenceOrder) {
  Expr e = parse_expr("(and (p ?B) (q ?A ?B))");
  EXPECT_EQ(quantify_existential(e),
            parse_expr("(thereExists ?B (thereExists ?A (and (p ?B) (q ?A ?B))))"));
  Expr closed = parse_expr("(p a)");
  EXPECT_EQ(quantify_existential(closed), closed);
  EXPECT_TRUE(free_vars(quantify_existential(e)).empty());
}

TEST(CanonicalTest, AlphaEquivalence) {
  EXPECT_TRUE(alpha_equivalent(parse_expr("(and (p ?X) (q ?X ?Y))"),
                               parse_expr("(and (p ?A) (q ?A ?B))")));
  EXPECT_FALSE(alpha_equivalent(parse_expr("(and (p ?X) (q ?X ?Y))"),
                                parse_expr("(and (p ?A) (q ?B ?A))")));
  EXPECT_TRUE(alpha_equivalent(parse_expr("(thereExists ?X (p ?X))"),
                               parse_expr("(thereExists ?Z (p ?Z))")));
}

TEST(TidyTest, StripsSuffixesWithoutCollisions) {
  Binding renaming;
  Expr e = parse_expr("(and (isa ?EAT_3 EatingEvent) (isa ?OBJ_4_7 Sandwich))");
  EXPECT_EQ(tidy_query_vars(e, &renaming),
            parse_expr("(and (isa ?EAT EatingEvent) (isa ?OBJ Sandwich))"));
  EXPECT_EQ(renaming.at(parse_expr("?EAT_3")), parse_expr("?EAT"));
  Expr clash = parse_expr("(p ?X_1 ?X_2)");
  Expr tidied = tidy_query_vars(clash);
  EXPECT_EQ(free_query_vars(tidied).size(), 2u);
}

TEST(ConjunctsTest, SplitsTopLevel) {
  EXPECT_EQ(conjuncts(parse_expr("(and (p a) (q b))")).size(), 2u);
  EXPECT_EQ(conjuncts(parse_expr("(p a)")).size(), 1u);
}

TEST(SexprTest, QuotesAndComments) {
  auto forms = sexpr::read_all("; comment\n(a \"b \\\"c\\\"\") ; tail\n(d)");
  ASSERT_EQ(forms.size(), 2u);
  EXPECT_EQ(forms[0].items[1].text, "b \"c\"");
  EXPECT_EQ(forms[1].line, 3);
  EXPECT_EQ(sexpr::to_string(forms[0]), "(a \"b \\\"c\\\"\")");
}

}  // namespace
}  // namespace scg::logic
