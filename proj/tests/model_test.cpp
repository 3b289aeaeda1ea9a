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

#include <set>

#include "gtt/corpus.hpp"
#include "gtt/model.hpp"
#include "gtt/parser.hpp"
#include "gtt/signature_io.hpp"

namespace gtt {
namespace {

Type ty(const char* s) { return parse_type(s); }

// Oracle: every tree obtainable from t by replacing each error leaf with an
// arbitrary tree, keeping the result within the depth bound.
std::vector<Tree> replacements(const Tree& t, std::size_t depth,
                               const std::vector<std::vector<Tree>>& universe) {
  if (t.is_err()) return universe[depth];
  if (t.is_leaf()) return {t};
  std::vector<Tree> out;
  if (depth < 2) return out;
  for (const Tree& l : replacements(t.left(), depth - 1, universe))
    for (const Tree& r : replacements(t.right(), depth - 1, universe))
      out.push_back(Tree::node(l, r));
  return out;
}

TEST(TreeOrder, AgreesWithReplacementOracle) {
  std::vector<std::vector<Tree>> universe(4);
  for (std::size_t d = 1; d <= 3; ++d) universe[d] = enumerate_trees(d, {0, 1}, false);
  const std::vector<Tree>& trees = universe[3];
  ASSERT_EQ(trees.size(), 147u);
  std::size_t related = 0;
  for (const Tree& a : trees) {
    std::set<std::string> above;
    for (const Tree& u : replacements(a, 3, universe)) above.insert(to_string(u));
    for (const Tree& b : trees) {
      bool expected = above.count(to_string(b)) > 0;
      related += expected;
      ASSERT_EQ(tree_leq(a, b), expected) << to_string(a) << " vs " << to_string(b);
    }
  }
  EXPECT_GT(related, trees.size());
}

TEST(TreeOrder, PartialOrderWithErrorBottom) {
  std::vector<Tree> ts = enumerate_trees(3, {0, 1}, false);
  for (const Tree& a : ts) {
    EXPECT_TRUE(tree_leq(Tree::err(), a));
    EXPECT_TRUE(tree_leq(a, a));
    for (const Tree& b : ts) {
      if (a != b && tree_leq(a, b)) {
        ASSERT_FALSE(tree_leq(b, a));
      }
      if (!tree_leq(a, b)) continue;
      for (const Tree& c : ts) {
        if (tree_leq(b, c)) {
          ASSERT_TRUE(tree_leq(a, c));
        }
      }
    }
  }
}

TEST(TreeOrder, WedgeIdentifiesErrors) {
  EXPECT_EQ(Tree::wedge(Tree::err(), Tree::err()), Tree::err());
  EXPECT_NE(Tree::node(Tree::err(), Tree::err()), Tree::err());
  EXPECT_EQ(Tree::leaf(3).depth(), 1u);
  EXPECT_EQ(Tree::node(Tree::leaf(0), Tree::node(Tree::err(), Tree::leaf(1))).depth(), 3u);
  EXPECT_EQ(to_string(Tree::node(Tree::leaf(0), Tree::err())), "(0, err)");
  // Canonical enumeration at depth 2 over {0, 1}: err, 0, 1 and 8 nodes.
  EXPECT_EQ(enumerate_trees(2, {0, 1}, true).size(), 11u);
}

TEST(Values, Enumerations) {
  Signature sig;
  Model m(sig, 2);
  EXPECT_EQ(m.values(Type::dyn()).size(), 11u);
  EXPECT_EQ(m.values(Type::nat()).size(), 3u);
  EXPECT_EQ(m.values(Type::unit()).size(), 1u);
  EXPECT_EQ(m.values(ty("Nat * ?")).size(), 33u);
}

// Oracle: every monotone map on the flat three-point domain, by brute force.
TEST(Values, FlatFunctionSpaceIsExact) {
  Signature sig;
  Model m(sig, 2);
  const Type nat = Type::nat();
  const std::vector<Value>& xs = m.values(nat);
  auto flat_le = [](int a, int b) { return a == 0 || a == b; };  // 0 is err
  std::set<std::vector<int>> monotone;
  for (int f0 = 0; f0 < 3; ++f0)
    for (int f1 = 0; f1 < 3; ++f1)
      for (int f2 = 0; f2 < 3; ++f2) {
        int f[3] = {f0, f1, f2};
        bool ok = true;
        for (int a = 0; a < 3; ++a)
          for (int b = 0; b < 3; ++b)
            if (flat_le(a, b) && !flat_le(f[a], f[b])) ok = false;
        if (ok) monotone.insert({f0, f1, f2});
      }
  ASSERT_EQ(monotone.size(), 11u);
  auto code = [](const Value& v) { return v.nat ? static_cast<int>(*v.nat) + 1 : 0; };
  std::set<std::vector<int>> got;
  for (const Value& f : m.values(ty("Nat -> Nat"))) {
    std::vector<int> table;
    for (const Value& x : xs) table.push_back(code(f(x)));
    got.insert(table);
  }
  EXPECT_EQ(got, monotone);
}

bool tree_le(const Value& a, const Value& b) { return tree_leq(a.tree, b.tree); }

// Law check in test code: dn . up is the identity and up . dn is deflationary,
// compared with the tree order directly when the target is ?.
TEST(Coreflections, LawsAgainstTreeOrder) {
  Signature sig;
  Model m(sig, 2);
  for (const char* s : {"Nat", "1", "? * ?", "Nat * Nat", "Nat * ?", "1 * Nat"}) {
    Type a = ty(s);
    Coreflection c = denote_coreflection(sig, a, Type::dyn());
    for (const Value& v : m.values(a)) ASSERT_TRUE(m.eq(a, c.dn(c.up(v)), v)) << s;
    for (const Value& w : m.values(Type::dyn())) ASSERT_TRUE(tree_le(c.up(c.dn(w)), w)) << s;
  }
  EXPECT_THROW(denote_coreflection(sig, ty("?"), ty("Nat")), ModelError);
}

TEST(Coreflections, DisjointTagsMeetOnlyAtError) {
  Signature sig;
  Model m(sig, 2);
  Coreflection nat = m.coreflection(Type::nat(), Type::dyn());
  Coreflection prod = m.coreflection(ty("? * ?"), Type::dyn());
  for (const Value& v : m.values(Type::nat())) {
    Value p = prod.dn(nat.up(v));
    EXPECT_TRUE(m.eq(ty("? * ?"), p, m.bottom(ty("? * ?"))));
  }
}

TEST(Equipment, FirstOrderPairsPass) {
  Signature sig;
  Model m(sig, 2);
  std::size_t pairs = 0;
  for (const Type& a : enumerate_types(sig, 3))
    for (const Type& b : enumerate_types(sig, 3)) {
      if (mentions_fn(a) || mentions_fn(b) || !check_type_dyn(sig, a, b)) continue;
      EquipmentReport r = m.check_equipment(a, b);
      ++pairs;
      ASSERT_TRUE(r.ok()) << to_string(a) << " <= " << to_string(b) << ": " << r.counterexamples[0];
      EXPECT_GT(r.checks, 0u);
    }
  EXPECT_GT(pairs, 20u);
}

TEST(Equipment, FunctionPairsPassStructurally) {
  Signature sig;
  Model m(sig, 2);
  for (const char* s : {"Nat -> Nat", "1 -> Nat", "Nat -> 1"}) {
    EquipmentReport r = m.check_equipment(ty(s), ty("? -> ?"));
    EXPECT_TRUE(r.ok()) << s;
    EXPECT_FALSE(r.factorization_checked);
  }
}

TEST(Equipment, CodedBaseTypes) {
  Signature sig = parse_signature(
      "basetypes:\n  Bool, True\ntydyn:\n  True <= Bool\ncodes:\n  Bool = 100 .. 102\n  True = 100 .. 101\n");
  Model m(sig, 2);
  EXPECT_TRUE(m.check_equipment(ty("True"), ty("Bool")).ok());
  EXPECT_TRUE(m.check_equipment(ty("True"), ty("?")).ok());
  EXPECT_TRUE(m.check_equipment(ty("True * Nat"), ty("Bool * ?")).ok());
  Signature bad = sig;
  bad.base_codes["True"] = CodeRange{101, 103};  // not nested in Bool
  EXPECT_THROW(Model(bad, 2), ModelError);
}

Judgment judgment(const char* dctx, const char* l, const char* r, const char* a, const char* b) {
  DynCtx phi;
  std::string s = dctx;
  std::size_t start = 0;
  while (start < s.size()) {
    std::size_t end = s.find(';', start);
    std::string e = s.substr(start, end == std::string::npos ? std::string::npos : end - start);
    auto colon = e.find(':');
    auto names = *split_top_level(e.substr(0, colon), "<=");
    auto types = *split_top_level(e.substr(colon + 1), "<=");
    phi.push_back({gtt::detail::trim(names.first), gtt::detail::trim(names.second),
                   parse_type(types.first), parse_type(types.second)});
    if (end == std::string::npos) break;
    start = end + 1;
  }
  return {phi, parse_term(l), parse_term(r), ty(a), ty(b)};
}

TEST(Semantics, TheoremsHold) {
  Signature sig;
  EXPECT_TRUE(check_judgment_semantics(sig, judgment("x <= y : Nat <= ?", "up[Nat => ?] x", "y", "?", "?")).ok());
  EXPECT_TRUE(check_judgment_semantics(sig, judgment("", "err[Nat]", "0", "Nat", "Nat")).ok());
  EXPECT_TRUE(check_judgment_semantics(
                  sig, judgment("p <= q : Nat * Nat <= ? * Nat", "fst p", "fst q", "Nat", "?"))
                  .ok());
}

TEST(Semantics, NonTheoremsHaveCounterexamples) {
  Signature sig;
  std::vector<Judgment> bad{
      judgment("", "0", "err[Nat]", "Nat", "Nat"),
      judgment("x <= x : Nat <= Nat; y <= y : ? * ? <= ? * ?", "up[Nat => ?] x",
               "up[? * ? => ?] y", "?", "?"),
      judgment("p <= p : Nat * Nat <= Nat * Nat", "p", "(snd p, fst p)", "Nat * Nat", "Nat * Nat"),
  };
  for (const Judgment& j : bad) {
    SemanticReport r = check_judgment_semantics(sig, j);
    ASSERT_FALSE(r.ok()) << to_string(j);
    EXPECT_FALSE(r.counterexample->empty());
  }
}

TEST(Semantics, FunctionSymbolsNeedDenotations) {
  Signature sig = parse_signature("basetypes:\n  B\nfnsyms:\n  b : () -> B\n");
  Model m(sig, 2);
  EXPECT_TRUE(m.judgment_denotable(judgment("", "b()", "b()", "B", "B")).has_value());
}

}  // namespace
}  // namespace gtt
