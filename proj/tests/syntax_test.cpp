// Copyright 2026 The gtt-kernel Authors
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

#include <gtest/gtest.h>

#include "gtt/parser.hpp"
#include "gtt/syntax.hpp"
#include "support.hpp"

namespace gtt {
namespace {

using testing::canonical;
using testing::NP;

TEST(Types, PrintAndParse) {
  for (const char* s : {"Nat", "?", "1", "Nat -> ? -> 1", "(Nat -> ?) -> 1", "Nat * ? * 1",
                        "(Nat * ?) * 1", "Nat * ? -> 1", "Nat -> ? * 1"}) {
    Type t = parse_type(s);
    EXPECT_EQ(parse_type(to_string(t)), t) << s;
  }
  EXPECT_EQ(parse_type("Nat -> ? -> 1"), parse_type("Nat -> (? -> 1)"));
  EXPECT_EQ(parse_type("Nat * ? * 1"), parse_type("(Nat * ?) * 1"));
  EXPECT_EQ(parse_type("Nat * ? -> 1"), parse_type("(Nat * ?) -> 1"));
}

TEST(Terms, NumeralsAreNullarySymbols) {
  Term t = parse_term("42");
  EXPECT_TRUE(t.is(Term::Kind::FnApp));
  EXPECT_TRUE(t.is_numeral());
  EXPECT_TRUE(t.args().empty());
  EXPECT_FALSE(parse_term("f()").is_numeral());
}

TEST(Terms, LocallyNamelessBinding) {
  Term t = parse_term("\\x:Nat. \\y:Nat. x");
  ASSERT_TRUE(t.is(Term::Kind::Lam));
  const Term& inner = t.scope();
  ASSERT_TRUE(inner.is(Term::Kind::Lam));
  ASSERT_TRUE(inner.scope().is(Term::Kind::Bound));
  EXPECT_EQ(inner.scope().index(), 1u);
  EXPECT_TRUE(free_vars(t).empty());
  EXPECT_EQ(free_vars(parse_term("\\x:Nat. y x")), (std::set<std::string>{"y"}));
}

TEST(Terms, PrinterRenamesClashingBinders) {
  // The binder hint clashes with a free variable of the body.
  Term t = Term::lam_scope("x", Type::nat(), Term::pair(Term::bound(0), Term::var("x")));
  std::string s = to_string(t);
  EXPECT_EQ(s, "\\x':Nat. (x', x)");
  EXPECT_TRUE(alpha_eq(parse_term(s), t));
}

TEST(Terms, ParseErrorsCarryLocations) {
  try {
    parse_term("(0, \n  up[Nat = ?] 0)");
    FAIL() << "expected a parse error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2);
    EXPECT_GT(e.column(), 1);
  }
  EXPECT_THROW(parse_type("Nat ->"), ParseError);
  EXPECT_THROW(parse_term("\\x. x"), ParseError);
  EXPECT_THROW(parse_context("x : Nat, x : ?"), ParseError);
}

// Oracle: alpha-equivalence of named terms via canonical renaming.
TEST(AlphaOracle, AgreesOnRandomRenamings) {
  std::mt19937_64 rng(7);
  int equal = 0, different = 0;
  for (int i = 0; i < 3000; ++i) {
    NP a = testing::random_nterm(rng, 4);
    NP b = (i % 3 == 0) ? testing::random_nterm(rng, 4) : testing::rename_binders(a, rng);
    bool expected = canonical(a) == canonical(b);
    Term ta = parse_term(testing::print(a)), tb = parse_term(testing::print(b));
    ASSERT_EQ(alpha_eq(ta, tb), expected) << testing::print(a) << "  vs  " << testing::print(b);
    (expected ? equal : different)++;
  }
  // Both outcomes must actually be exercised.
  EXPECT_GT(equal, 500);
  EXPECT_GT(different, 500);
}

// Oracle: textbook named substitution with renaming.
TEST(SubstitutionOracle, AgreesWithNamedCaptureAvoidance) {
  std::mt19937_64 rng(11);
  int captures = 0;
  for (int i = 0; i < 3000; ++i) {
    NP t = testing::random_nterm(rng, 4);
    std::map<std::string, NP> nsigma;
    Substitution sigma;
    for (const std::string& x : testing::nfree(t)) {
      NP u = rng() % 2 ? testing::random_nterm(rng, 2) : testing::nvar(x);
      nsigma[x] = u;
      sigma.emplace(x, parse_term(testing::print(u)));
    }
    NP expected = testing::nsubst(t, nsigma);
    if (canonical(expected) != canonical(testing::nsubst(t, {}))) ++captures;
    Term got = substitute(parse_term(testing::print(t)), sigma);
    ASSERT_TRUE(alpha_eq(got, parse_term(testing::print(expected))))
        << testing::print(t) << " gives " << to_string(got) << ", oracle "
        << testing::print(expected);
  }
  EXPECT_GT(captures, 100);
}

TEST(Substitution, RequiresTotalCoverage) {
  EXPECT_THROW(substitute(parse_term("(x, y)"), {{"x", parse_term("0")}}), SubstitutionError);
  EXPECT_TRUE(alpha_eq(substitute_partial(parse_term("(x, y)"), {{"x", parse_term("0")}}),
                       parse_term("(0, y)")));
}

TEST(Substitution, ComposeAppliesLeftFirst) {
  Substitution s{{"x", parse_term("(y, y)")}};
  Substitution d{{"y", parse_term("0")}};
  Substitution c = compose(s, d);
  EXPECT_TRUE(alpha_eq(c.at("x"), parse_term("(0, 0)")));
}

// Property: printing then parsing is the identity up to alpha, on random
// well-typed terms with every construct.
TEST(ParserRoundTrip, RandomWellTypedTerms) {
  Signature sig;
  testing::TermGen gen(sig, 3);
  for (int i = 0; i < 2000; ++i) {
    Context gamma{{"x", Type::nat()}, {"d", Type::dyn()}};
    Type a = gen.random_type();
    Term t = gen.term(a, gamma, 20);
    std::string s = to_string(t);
    Term back = parse_term(s);
    ASSERT_TRUE(alpha_eq(back, t)) << s << " reparsed as " << to_string(back);
    ASSERT_EQ(to_string(back), s);
  }
}

TEST(ParserRoundTrip, Contexts) {
  Context g = parse_context("x : Nat, f : Nat -> ?, p : ? * 1");
  ASSERT_EQ(g.size(), 3u);
  EXPECT_EQ(parse_context(to_string(g)), g);
  EXPECT_TRUE(parse_context("").empty());
}

}  // namespace
}  // namespace gtt
