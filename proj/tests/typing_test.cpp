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

#include <map>
#include <set>
#include <utility>

#include "gtt/corpus.hpp"
#include "gtt/parser.hpp"
#include "gtt/signature_io.hpp"
#include "gtt/typing.hpp"
#include "support.hpp"

namespace gtt {
namespace {

Type ty(const char* s) { return parse_type(s); }

Type infer(const Signature& sig, const char* ctx, const char* t) {
  return infer_type(sig, parse_context(ctx), parse_term(t));
}

TEST(Typing, Basics) {
  Signature sig;
  EXPECT_EQ(infer(sig, "", "\\x:Nat. x"), ty("Nat -> Nat"));
  EXPECT_EQ(infer(sig, "", "(0, ())"), ty("Nat * 1"));
  EXPECT_EQ(infer(sig, "p : Nat * ?", "snd p"), ty("?"));
  EXPECT_EQ(infer(sig, "f : Nat -> ?", "f 3"), ty("?"));
  EXPECT_EQ(infer(sig, "", "err[? -> ?]"), ty("? -> ?"));
  EXPECT_EQ(infer(sig, "x : Nat", "up[Nat => ?] x"), ty("?"));
  EXPECT_EQ(infer(sig, "x : ?", "dn[? => Nat * ?] x"), ty("Nat * ?"));
  EXPECT_EQ(infer(sig, "", "up[Nat -> Nat => ? -> ?] (\\x:Nat. x)"), ty("? -> ?"));
}

TEST(Typing, Rejections) {
  Signature sig;
  EXPECT_THROW(infer(sig, "", "x"), TypeError);
  EXPECT_THROW(infer(sig, "", "0 0"), TypeError);
  EXPECT_THROW(infer(sig, "", "fst 0"), TypeError);
  EXPECT_THROW(infer(sig, "x : ?", "up[? => Nat] x"), TypeError);  // not an upcast
  EXPECT_THROW(infer(sig, "x : Nat", "dn[Nat => ?] x"), TypeError);
  EXPECT_THROW(infer(sig, "x : Nat", "up[? => ?] x"), TypeError);  // body type mismatch
  EXPECT_THROW(infer(sig, "", "f(0)"), TypeError);                   // unknown symbol
  EXPECT_THROW(infer(sig, "", "err[Bool]"), TypeError);              // unknown base
}

TEST(Typing, GeneratedTermsHaveTheirTargetType) {
  Signature sig;
  testing::TermGen gen(sig, 5);
  for (int i = 0; i < 2000; ++i) {
    Context gamma{{"x", Type::nat()}, {"d", Type::dyn()}, {"f", ty("? -> ?")}};
    Type a = gen.random_type();
    Term t = gen.term(a, gamma, 25);
    ASSERT_EQ(infer_type(sig, gamma, t), a) << to_string(t);
    ASSERT_LE(term_size(t), 25u) << to_string(t);
  }
}

TEST(Signatures, ParseAndValidate) {
  Signature sig = parse_signature(
      "basetypes:\n  Bool, True\n"
      "tydyn:\n  True <= Bool\n"
      "fnsyms:\n  not : (Bool) -> Bool\n  tt : () -> True\n"
      "tmdyn:\n  x : True |- x <= x : True |- x\n"
      "flags:\n  retract = false\n  dyntop = first-order\n"
      "codes:\n  Bool = 100 .. 102\n  True = 100 .. 101\n");
  EXPECT_FALSE(sig.retract_axiom);
  EXPECT_TRUE(sig.disjointness);
  EXPECT_EQ(sig.fn_symbols.size(), 2u);
  EXPECT_EQ(sig.tmdyn_axioms.size(), 1u);
  EXPECT_EQ(infer(sig, "", "not(up[True => Bool] tt())"), ty("Bool"));
  EXPECT_TRUE(check_type_dyn(sig, ty("True * Nat"), ty("Bool * ?")));
  EXPECT_FALSE(check_type_dyn(sig, ty("Nat -> Nat"), ty("?")));  // first-order restriction

  EXPECT_THROW(parse_signature("basetypes:\n  Nat\n"), ParseError);  // built in
  EXPECT_THROW(parse_signature("flags:\n  colour = blue\n"), ParseError);
  EXPECT_THROW(parse_signature("X <= Y\n"), ParseError);
  try {
    parse_signature("basetypes:\n  A\ntydyn:\n  A <= \n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4);
  }
}

TEST(Signatures, CompositeAxiomsNeedSearchMode) {
  Signature sig;
  sig.base_types = {"A"};
  sig.tydyn_axioms = {{ty("A"), ty("Nat -> Nat")}};
  EXPECT_THROW(check_type_dyn(sig, ty("A"), ty("Nat -> ?")), ConfigError);
  sig.tydyn_mode = TyDynMode::Search;
  EXPECT_TRUE(check_type_dyn(sig, ty("A"), ty("Nat -> ?")));
  EXPECT_TRUE(check_type_dyn(sig, ty("A * 1"), ty("(Nat -> Nat) * ?")));
  EXPECT_FALSE(check_type_dyn(sig, ty("Nat -> Nat"), ty("A")));
}

// Oracle: the least relation over the finite type universe closed under the
// rules. Dynamism never grows types, so the universe of types up to a size is
// closed under every middle type a derivation can use.
std::vector<std::vector<bool>> tydyn_closure(const Signature& sig, const std::vector<Type>& types) {
  std::size_t n = types.size();
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index[to_string(types[i])] = i;
  auto at = [&](const Type& t) { return index.at(to_string(t)); };
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  std::size_t dyn = at(Type::dyn());
  for (std::size_t i = 0; i < n; ++i) {
    rel[i][i] = true;
    if (sig.dyn_top_allows(types[i])) rel[i][dyn] = true;
  }
  for (const auto& [a, b] : sig.tydyn_axioms) rel[at(a)][at(b)] = true;
  // Component indices, for the congruence rules.
  std::vector<std::pair<std::size_t, std::size_t>> parts(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (types[i].is_fn()) parts[i] = {at(types[i].domain()), at(types[i].codomain())};
    if (types[i].is_prod()) parts[i] = {at(types[i].left()), at(types[i].right())};
  }
  bool grew = true;
  while (grew) {
    grew = false;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) {
        if (rel[a][b]) continue;
        const Type &ta = types[a], &tb = types[b];
        bool derivable = ((ta.is_fn() && tb.is_fn()) || (ta.is_prod() && tb.is_prod())) &&
                         rel[parts[a].first][parts[b].first] && rel[parts[a].second][parts[b].second];
        for (std::size_t m = 0; m < n && !derivable; ++m) derivable = rel[a][m] && rel[m][b];
        if (derivable) rel[a][b] = grew = true;
      }
  }
  return rel;
}

void expect_matches_closure(const Signature& sig, std::size_t size) {
  std::vector<Type> types = enumerate_types(sig, size);
  auto rel = tydyn_closure(sig, types);
  std::size_t related = 0;
  for (std::size_t a = 0; a < types.size(); ++a)
    for (std::size_t b = 0; b < types.size(); ++b) {
      related += rel[a][b];
      ASSERT_EQ(check_type_dyn(sig, types[a], types[b]), rel[a][b])
          << to_string(types[a]) << " <= " << to_string(types[b]);
    }
  EXPECT_GT(related, types.size());
}

TEST(TypeDynamismOracle, DefaultSignature) { expect_matches_closure(Signature{}, 5); }

TEST(TypeDynamismOracle, BaseAxiomChains) {
  Signature sig;
  sig.base_types = {"A", "B", "C"};
  sig.tydyn_axioms = {{ty("A"), ty("B")}, {ty("B"), ty("C")}, {ty("Nat"), ty("C")}};
  expect_matches_closure(sig, 3);
}

TEST(TypeDynamismOracle, FirstOrderRestriction) {
  Signature sig;
  sig.dyn_top_restriction = first_order_only();
  expect_matches_closure(sig, 5);
}

TEST(TypeDynamismOracle, SearchModeAgreesOnBaseAxioms) {
  Signature sig;
  sig.base_types = {"A", "B"};
  sig.tydyn_axioms = {{ty("A"), ty("B")}};
  Signature search = sig;
  search.tydyn_mode = TyDynMode::Search;
  for (const Type& a : enumerate_types(sig, 3))
    for (const Type& b : enumerate_types(sig, 3))
      ASSERT_EQ(check_type_dyn(sig, a, b), check_type_dyn(search, a, b))
          << to_string(a) << " <= " << to_string(b);
}

TEST(TypeDynamism, PartialOrderProperties) {
  Signature sig;
  std::vector<Type> types = enumerate_types(sig, 5);
  for (const Type& a : types) {
    ASSERT_TRUE(check_type_dyn(sig, a, a));
    ASSERT_TRUE(check_type_dyn(sig, a, Type::dyn()));
    for (const Type& b : types) {
      if (a != b && check_type_dyn(sig, a, b)) {
        ASSERT_FALSE(check_type_dyn(sig, b, a));
      }
    }
  }
}

TEST(DynamismContexts, PointwiseLift) {
  Signature sig;
  auto phi = check_ctx_dyn(sig, parse_context("x : Nat, f : Nat -> Nat"),
                           parse_context("y : ?, g : ? -> Nat"));
  ASSERT_TRUE(phi.has_value());
  EXPECT_EQ((*phi)[0].left, "x");
  EXPECT_EQ((*phi)[0].right, "y");
  EXPECT_FALSE(check_ctx_dyn(sig, parse_context("x : ?"), parse_context("y : Nat")).has_value());
  EXPECT_FALSE(check_ctx_dyn(sig, parse_context("x : Nat"), parse_context("")).has_value());
  EXPECT_EQ(left_ctx(*phi), parse_context("x : Nat, f : Nat -> Nat"));
  EXPECT_EQ(right_ctx(*phi), parse_context("y : ?, g : ? -> Nat"));
  EXPECT_TRUE(is_refl_ctx(refl_ctx(parse_context("x : Nat"))));
}

}  // namespace
}  // namespace gtt
