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

// The pointed-preorder model: the dynamic type is the set of finite binary
// trees with natural-number leaves and an error leaf, types denote
// coreflections into it, and judgments are checked by bounded enumeration.
//
// Function spaces are infinite, so every check here is exhaustive only over
// the values enumerable within the bound. Passing means "no counterexample
// within bound".

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gtt/dynamism.hpp"

namespace gtt {

class ModelError : public Error {
 public:
  using Error::Error;
};

// ---------------------------------------------------------------------------
// Trees.

class Tree {
 public:
  enum class Kind { Err, Leaf, Node };

  static Tree err() { return Tree(); }
  static Tree leaf(std::uint64_t n) {
    Tree t;
    t.kind_ = Kind::Leaf;
    t.n_ = n;
    return t;
  }
  // The raw node, with no identification of error points.
  static Tree node(Tree l, Tree r) {
    Tree t;
    t.kind_ = Kind::Node;
    t.kids_ = std::make_shared<const std::pair<Tree, Tree>>(std::move(l), std::move(r));
    return t;
  }
  // The node of the wedge sum: a node of two errors is the error.
  static Tree wedge(Tree l, Tree r) {
    if (l.is_err() && r.is_err()) return err();
    return node(std::move(l), std::move(r));
  }

  Kind kind() const noexcept { return kind_; }
  bool is_err() const noexcept { return kind_ == Kind::Err; }
  bool is_leaf() const noexcept { return kind_ == Kind::Leaf; }
  bool is_node() const noexcept { return kind_ == Kind::Node; }
  std::uint64_t value() const noexcept { return n_; }
  const Tree& left() const { return kids_->first; }
  const Tree& right() const { return kids_->second; }

  // A leaf has depth 1.
  std::size_t depth() const {
    return is_node() ? 1 + std::max(left().depth(), right().depth()) : 1;
  }

  friend bool operator==(const Tree& a, const Tree& b) {
    if (a.kind_ != b.kind_) return false;
    if (a.is_leaf()) return a.n_ == b.n_;
    if (a.is_node()) return a.left() == b.left() && a.right() == b.right();
    return true;
  }
  friend bool operator!=(const Tree& a, const Tree& b) { return !(a == b); }

 private:
  Kind kind_ = Kind::Err;
  std::uint64_t n_ = 0;
  std::shared_ptr<const std::pair<Tree, Tree>> kids_;
};

// a is obtained from b by replacing zero or more subtrees with the error leaf.
inline bool tree_leq(const Tree& a, const Tree& b) {
  if (a.is_err()) return true;
  if (a.is_leaf()) return b.is_leaf() && a.value() == b.value();
  return b.is_node() && tree_leq(a.left(), b.left()) && tree_leq(a.right(), b.right());
}

// err | n | (T, T)
inline std::string to_string(const Tree& t) {
  switch (t.kind()) {
    case Tree::Kind::Err: return "err";
    case Tree::Kind::Leaf: return std::to_string(t.value());
    case Tree::Kind::Node: return "(" + to_string(t.left()) + ", " + to_string(t.right()) + ")";
  }
  return "?";
}

// All trees of depth at most `depth` over the given leaf values. With
// canonical set, nodes are built by Tree::wedge and duplicates dropped.
inline std::vector<Tree> enumerate_trees(std::size_t depth, const std::vector<std::uint64_t>& leaves,
                                         bool canonical) {
  std::vector<Tree> out;
  if (depth == 0) return out;
  out.push_back(Tree::err());
  for (std::uint64_t n : leaves) out.push_back(Tree::leaf(n));
  if (depth == 1) return out;
  std::vector<Tree> sub = enumerate_trees(depth - 1, leaves, canonical);
  for (const Tree& l : sub)
    for (const Tree& r : sub) {
      if (canonical && l.is_err() && r.is_err()) continue;
      out.push_back(canonical ? Tree::wedge(l, r) : Tree::node(l, r));
    }
  return out;
}

// ---------------------------------------------------------------------------
// Semantic values.

struct Value {
  enum class Kind { Tree, Nat, Pair, Unit, Fn };
  Kind kind = Kind::Unit;
  gtt::Tree tree;                                             // Tree
  std::optional<std::uint64_t> nat;                           // Nat: empty is err
  std::shared_ptr<const std::pair<Value, Value>> pair;        // Pair
  std::shared_ptr<const std::function<Value(const Value&)>> fn;  // Fn
  std::string label;                                          // Fn, for printing

  static Value of_tree(gtt::Tree t) {
    Value v;
    v.kind = Kind::Tree;
    v.tree = std::move(t);
    return v;
  }
  static Value of_nat(std::optional<std::uint64_t> n) {
    Value v;
    v.kind = Kind::Nat;
    v.nat = n;
    return v;
  }
  static Value of_pair(Value a, Value b) {
    Value v;
    v.kind = Kind::Pair;
    v.pair = std::make_shared<const std::pair<Value, Value>>(std::move(a), std::move(b));
    return v;
  }
  static Value unit() { return Value{}; }
  static Value of_fn(std::function<Value(const Value&)> f, std::string label) {
    Value v;
    v.kind = Kind::Fn;
    v.fn = std::make_shared<const std::function<Value(const Value&)>>(std::move(f));
    v.label = std::move(label);
    return v;
  }

  const Value& first() const { return pair->first; }
  const Value& second() const { return pair->second; }
  Value operator()(const Value& arg) const { return (*fn)(arg); }
};

inline std::string to_string(const Value& v) {
  switch (v.kind) {
    case Value::Kind::Tree: return to_string(v.tree);
    case Value::Kind::Nat: return v.nat ? std::to_string(*v.nat) : "err";
    case Value::Kind::Pair: return "(" + to_string(v.first()) + ", " + to_string(v.second()) + ")";
    case Value::Kind::Unit: return "()";
    case Value::Kind::Fn: return "<" + v.label + ">";
  }
  return "?";
}

struct Coreflection {
  Type src;
  Type tgt;
  std::function<Value(const Value&)> up;
  std::function<Value(const Value&)> dn;
};

struct EquipmentReport {
  Type src;
  Type tgt;
  std::size_t bound = 0;
  std::size_t checks = 0;
  bool factorization_checked = false;
  std::vector<std::string> counterexamples;  // "law (i): ..." etc.
  bool ok() const { return counterexamples.empty(); }
};

struct SemanticReport {
  std::size_t bound = 0;
  std::size_t environments = 0;
  std::optional<std::string> counterexample;
  bool ok() const { return !counterexample; }
};

// ---------------------------------------------------------------------------

class Model {
 public:
  Model(const Signature& sig, std::size_t bound) : sig_(sig), bound_(bound) {
    for (std::uint64_t n = 0; n < bound; ++n) leaves_.insert(n);
    for (const auto& [name, r] : sig.base_codes) {
      if (r.hi <= r.lo) throw ModelError("empty code range for base type " + name);
      for (std::uint64_t c = r.lo; c < r.hi && c < r.lo + bound; ++c) leaves_.insert(c);
    }
    check_codes();
  }

  std::size_t bound() const { return bound_; }
  const Signature& signature() const { return sig_; }

  // ---- denotability

  bool base_denotable(const std::string& name) const {
    return (name == kNatName && sig_.nat_builtin) || sig_.base_codes.count(name);
  }

  bool denotable(const Type& a) const {
    if (a.is_base()) return base_denotable(a.name());
    if (a.is_fn() || a.is_prod())
      return denotable(a.is_fn() ? a.domain() : a.left()) &&
             denotable(a.is_fn() ? a.codomain() : a.right());
    return true;
  }

  // Whether the coreflection for a <= b has a denotation.
  bool denotable_pair(const Type& a, const Type& b) const {
    if (!denotable(a) || !denotable(b)) return false;
    if (a == b) return true;
    if (a.is_fn() && b.is_fn())
      return denotable_pair(a.domain(), b.domain()) && denotable_pair(a.codomain(), b.codomain());
    if (a.is_prod() && b.is_prod())
      return denotable_pair(a.left(), b.left()) && denotable_pair(a.right(), b.right());
    return !mentions_fn(a) && !mentions_fn(b);
  }

  // ---- values

  Value bottom(const Type& a) const {
    if (a.is_dyn()) return Value::of_tree(Tree::err());
    if (a.is_base()) return Value::of_nat(std::nullopt);
    if (a.is_unit()) return Value::unit();
    if (a.is_prod()) return Value::of_pair(bottom(a.left()), bottom(a.right()));
    Value b = bottom(a.codomain());
    return Value::of_fn([b](const Value&) { return b; }, "const err");
  }

  // The enumerated values of a within the bound.
  const std::vector<Value>& values(const Type& a) {
    auto it = values_.find(a);
    if (it != values_.end()) return it->second;
    std::vector<Value> out;
    if (!denotable(a)) throw ModelError("type " + to_string(a) + " has no denotation in the model");
    if (a.is_dyn()) {
      std::vector<std::uint64_t> ls(leaves_.begin(), leaves_.end());
      for (Tree& t : enumerate_trees(bound_, ls, true)) out.push_back(Value::of_tree(std::move(t)));
    } else if (a.is_base()) {
      out.push_back(Value::of_nat(std::nullopt));
      if (a.is_nat() && sig_.nat_builtin) {
        for (std::uint64_t n = 0; n < bound_; ++n) out.push_back(Value::of_nat(n));
      } else {
        const CodeRange& r = sig_.base_codes.at(a.name());
        for (std::uint64_t c = r.lo; c < r.hi && c < r.lo + bound_; ++c) out.push_back(Value::of_nat(c));
      }
    } else if (a.is_unit()) {
      out.push_back(Value::unit());
    } else if (a.is_prod()) {
      std::vector<Value> ls = values(a.left()), rs = values(a.right());
      for (const Value& l : ls)
        for (const Value& r : rs) out.push_back(Value::of_pair(l, r));
    } else {
      out = function_values(a);
    }
    return values_.emplace(a, std::move(out)).first->second;
  }

  // ---- order

  bool le(const Type& a, const Value& v, const Value& w) {
    if (a.is_dyn()) return tree_leq(v.tree, w.tree);
    if (a.is_base()) return !v.nat || v.nat == w.nat;
    if (a.is_unit()) return true;
    if (a.is_prod()) return le(a.left(), v.first(), w.first()) && le(a.right(), v.second(), w.second());
    for (const Value& x : values(a.domain()))
      if (!le(a.codomain(), v(x), w(x))) return false;
    return true;
  }

  bool eq(const Type& a, const Value& v, const Value& w) { return le(a, v, w) && le(a, w, v); }

  // up_{a,b}(v) <= w in b.
  bool value_leq(const Type& a, const Type& b, const Value& v, const Value& w) {
    return le(b, coreflection(a, b).up(v), w);
  }

  // ---- coreflections

  // The coreflection of a into the dynamic type.
  Coreflection into_dyn(const Type& a) {
    if (mentions_fn(a) || !denotable(a))
      throw ModelError("type " + to_string(a) + " has no coreflection into ? in the model");
    Coreflection c{a, Type::dyn(), {}, {}};
    if (a.is_dyn()) {
      c.up = c.dn = [](const Value& v) { return v; };
    } else if (a.is_base()) {
      std::optional<CodeRange> range;
      if (!(a.is_nat() && sig_.nat_builtin)) range = sig_.base_codes.at(a.name());
      c.up = [](const Value& v) { return Value::of_tree(v.nat ? Tree::leaf(*v.nat) : Tree::err()); };
      c.dn = [range](const Value& v) {
        if (!v.tree.is_leaf()) return Value::of_nat(std::nullopt);
        std::uint64_t n = v.tree.value();
        if (range && (n < range->lo || n >= range->hi)) return Value::of_nat(std::nullopt);
        return Value::of_nat(n);
      };
    } else if (a.is_unit()) {
      c.up = [](const Value&) { return Value::of_tree(Tree::err()); };
      c.dn = [](const Value&) { return Value::unit(); };
    } else {  // product
      Coreflection l = into_dyn(a.left()), r = into_dyn(a.right());
      Value bot = bottom(a);
      c.up = [l, r](const Value& v) {
        return Value::of_tree(Tree::wedge(l.up(v.first()).tree, r.up(v.second()).tree));
      };
      c.dn = [l, r, bot](const Value& v) {
        if (!v.tree.is_node()) return bot;
        return Value::of_pair(l.dn(Value::of_tree(v.tree.left())),
                              r.dn(Value::of_tree(v.tree.right())));
      };
    }
    return c;
  }

  // The coreflection for a <= b.
  const Coreflection& coreflection(const Type& a, const Type& b) {
    auto key = std::make_pair(a, b);
    auto it = coreflections_.find(key);
    if (it != coreflections_.end()) return it->second;
    if (!denotable_pair(a, b))
      throw ModelError("cast between " + to_string(a) + " and " + to_string(b) +
                       " has no denotation in the model");
    Coreflection c{a, b, {}, {}};
    if (a == b) {
      c.up = c.dn = [](const Value& v) { return v; };
    } else if (a.is_fn() && b.is_fn()) {
      Coreflection d = coreflection(a.domain(), b.domain());
      Coreflection k = coreflection(a.codomain(), b.codomain());
      c.up = [d, k](const Value& f) {
        return Value::of_fn([d, k, f](const Value& x) { return k.up(f(d.dn(x))); }, "up " + f.label);
      };
      c.dn = [d, k](const Value& g) {
        return Value::of_fn([d, k, g](const Value& x) { return k.dn(g(d.up(x))); }, "dn " + g.label);
      };
    } else if ((a.is_prod() && b.is_prod()) && (mentions_fn(a) || mentions_fn(b))) {
      Coreflection l = coreflection(a.left(), b.left());
      Coreflection r = coreflection(a.right(), b.right());
      c.up = [l, r](const Value& v) { return Value::of_pair(l.up(v.first()), r.up(v.second())); };
      c.dn = [l, r](const Value& v) { return Value::of_pair(l.dn(v.first()), r.dn(v.second())); };
    } else {
      // First-order: through the dynamic type.
      Coreflection ea = into_dyn(a), eb = into_dyn(b);
      c.up = [ea, eb](const Value& v) { return eb.dn(ea.up(v)); };
      c.dn = [ea, eb](const Value& v) { return ea.dn(eb.up(v)); };
    }
    return coreflections_.emplace(key, std::move(c)).first->second;
  }

  // ---- evaluation

  using Env = std::map<std::string, Value>;

  Value eval(const Env& env, const Term& t) { return eval(env, {}, t); }

  // ---- checks

  EquipmentReport check_equipment(const Type& a, const Type& b) {
    EquipmentReport rep{a, b, bound_};
    if (!check_type_dyn(sig_, a, b))
      throw ModelError(to_string(a) + " <= " + to_string(b) + " is not derivable");
    const Coreflection& c = coreflection(a, b);
    const std::vector<Value>& va = values(a);
    const std::vector<Value>& vb = values(b);
    auto fail = [&](const std::string& s) {
      if (rep.counterexamples.size() < 8) rep.counterexamples.push_back(s);
    };
    for (const Value& v : va) {
      ++rep.checks;
      Value back = c.dn(c.up(v));
      if (!eq(a, back, v)) fail("law (i): dn(up " + to_string(v) + ") = " + to_string(back));
    }
    for (const Value& w : vb) {
      ++rep.checks;
      Value round = c.up(c.dn(w));
      if (!le(b, round, w)) fail("law (ii): up(dn " + to_string(w) + ") = " + to_string(round) +
                                 " is not below it");
    }
    for (const Value& v1 : va)
      for (const Value& v2 : va) {
        if (!le(a, v1, v2)) continue;
        ++rep.checks;
        if (!le(b, c.up(v1), c.up(v2)))
          fail("law (iii): up not monotone on " + to_string(v1) + " <= " + to_string(v2));
      }
    for (const Value& w1 : vb)
      for (const Value& w2 : vb) {
        if (!le(b, w1, w2)) continue;
        ++rep.checks;
        if (!le(a, c.dn(w1), c.dn(w2)))
          fail("law (iii): dn not monotone on " + to_string(w1) + " <= " + to_string(w2));
      }
    if (!mentions_fn(a) && !mentions_fn(b)) {
      rep.factorization_checked = true;
      Coreflection ea = into_dyn(a), eb = into_dyn(b);
      for (const Value& v : va) {
        ++rep.checks;
        Value direct = ea.up(v);
        Value through = eb.up(c.up(v));
        if (direct.tree != through.tree)
          fail("law (iv): up to ? of " + to_string(v) + " is " + to_string(direct) +
               " directly but " + to_string(through) + " through " + to_string(b));
      }
    }
    return rep;
  }

  // Whether a judgment can be interpreted: types and casts denote, and no
  // uninterpreted function symbols occur.
  std::optional<std::string> judgment_denotable(const Judgment& j) const {
    for (const DynEntry& e : j.phi)
      if (!denotable_pair(e.left_type, e.right_type))
        return "context entry " + e.left + " <= " + e.right + " does not denote";
    if (!denotable_pair(j.left_type, j.right_type)) return "judgment types do not denote";
    for (const Term* t : {&j.left, &j.right})
      if (auto why = term_denotable(*t)) return why;
    return std::nullopt;
  }

  SemanticReport check_judgment(const Judgment& j) {
    if (auto why = judgment_denotable(j)) throw ModelError(*why);
    SemanticReport rep{bound_};
    // Related value pairs for each context entry.
    std::vector<std::vector<std::pair<Value, Value>>> rel;
    for (const DynEntry& e : j.phi) {
      std::vector<std::pair<Value, Value>> ps;
      for (const Value& v : values(e.left_type))
        for (const Value& w : values(e.right_type))
          if (value_leq(e.left_type, e.right_type, v, w)) ps.emplace_back(v, w);
      rel.push_back(std::move(ps));
    }
    for (const auto& ps : rel)
      if (ps.empty()) return rep;
    std::vector<std::size_t> idx(rel.size(), 0);
    while (true) {
      Env g, g2;
      for (std::size_t i = 0; i < rel.size(); ++i) {
        g[j.phi[i].left] = rel[i][idx[i]].first;
        g2[j.phi[i].right] = rel[i][idx[i]].second;
      }
      ++rep.environments;
      Value l = eval(g, j.left);
      Value r = eval(g2, j.right);
      if (!value_leq(j.left_type, j.right_type, l, r)) {
        std::string env;
        for (std::size_t i = 0; i < rel.size(); ++i) {
          if (i) env += ", ";
          const auto& [lv, rv] = rel[i][idx[i]];
          env += j.phi[i].left + " = " + to_string(lv);
          if (j.phi[i].right != j.phi[i].left || to_string(lv) != to_string(rv))
            env += ", " + j.phi[i].right + " = " + to_string(rv);
        }
        rep.counterexample = "{" + env + "}: left = " + to_string(l) + ", right = " + to_string(r);
        return rep;
      }
      std::size_t k = 0;
      while (k < idx.size() && ++idx[k] == rel[k].size()) idx[k++] = 0;
      if (k == idx.size()) break;
    }
    return rep;
  }

 private:
  std::optional<std::string> term_denotable(const Term& t) const {
    using K = Term::Kind;
    if (t.is(K::FnApp) && !t.is_numeral())
      return "function symbol `" + t.name() + "` has no denotation";
    if (t.is(K::Up) && !denotable_pair(t.from(), t.to()))
      return "cast " + to_string(t.from()) + " => " + to_string(t.to()) + " does not denote";
    if (t.is(K::Dn) && !denotable_pair(t.to(), t.from()))
      return "cast " + to_string(t.from()) + " => " + to_string(t.to()) + " does not denote";
    if (t.is(K::Err) && !denotable(t.err_type())) return "error type does not denote";
    if (t.is(K::Lam) && !denotable(t.annot())) return "lambda annotation does not denote";
    for (const Term& k : t.args())
      if (auto why = term_denotable(k)) return why;
    return std::nullopt;
  }

  Value eval(const Env& env, const std::vector<Value>& bound, const Term& t) {
    using K = Term::Kind;
    switch (t.kind()) {
      case K::Var: {
        auto it = env.find(t.name());
        if (it == env.end()) throw ModelError("no value for variable `" + t.name() + "`");
        return it->second;
      }
      case K::Bound: return bound.at(bound.size() - 1 - t.index());
      case K::FnApp: {
        if (!t.is_numeral()) throw ModelError("function symbol `" + t.name() + "` has no denotation");
        return Value::of_nat(std::stoull(t.name()));
      }
      case K::Lam: {
        Term scope = t.scope();
        return Value::of_fn(
            [this, env, bound, scope](const Value& x) {
              std::vector<Value> b = bound;
              b.push_back(x);
              return eval(env, b, scope);
            },
            "\\" + t.name());
      }
      case K::App: return eval(env, bound, t.fn())(eval(env, bound, t.arg()));
      case K::Pair: return Value::of_pair(eval(env, bound, t.first()), eval(env, bound, t.second()));
      case K::Proj: {
        Value p = eval(env, bound, t.tuple());
        return t.proj_index() == 1 ? p.first() : p.second();
      }
      case K::UnitVal: return Value::unit();
      case K::Err: return bottom(t.err_type());
      case K::Up: return coreflection(t.from(), t.to()).up(eval(env, bound, t.body()));
      case K::Dn: return coreflection(t.to(), t.from()).dn(eval(env, bound, t.body()));
    }
    throw ModelError("unknown term");
  }

  // Monotone functions a = A -> B: constants, steps (a <= x ? b : err),
  // the identity and casts, deduplicated by their table on values(A).
  std::vector<Value> function_values(const Type& a) {
    Type dom = a.domain(), cod = a.codomain();
    std::vector<Value> xs = values(dom);
    std::vector<Value> ys = values(cod);
    if (dom.is_base()) {
      if (auto all = flat_function_values(cod, xs, ys)) return std::move(*all);
    }
    std::vector<Value> candidates;
    Value bot = bottom(cod);
    for (const Value& y : ys)
      candidates.push_back(Value::of_fn([y](const Value&) { return y; }, "const " + to_string(y)));
    for (const Value& x0 : xs)
      for (const Value& y : ys) {
        if (eq(cod, y, bot)) continue;
        candidates.push_back(Value::of_fn(
            [this, dom, x0, y, bot](const Value& x) { return le(dom, x0, x) ? y : bot; },
            "step " + to_string(x0) + " " + to_string(y)));
      }
    if (dom == cod) candidates.push_back(Value::of_fn([](const Value& x) { return x; }, "id"));
    if (dom != cod && denotable_pair(dom, cod) && check_type_dyn(sig_, dom, cod)) {
      Coreflection c = coreflection(dom, cod);
      candidates.push_back(Value::of_fn(c.up, "up"));
    }
    if (dom != cod && denotable_pair(cod, dom) && check_type_dyn(sig_, cod, dom)) {
      Coreflection c = coreflection(cod, dom);
      candidates.push_back(Value::of_fn(c.dn, "dn"));
    }
    std::vector<Value> out;
    std::vector<std::vector<Value>> tables;
    for (const Value& f : candidates) {
      std::vector<Value> table;
      for (const Value& x : xs) table.push_back(f(x));
      bool dup = false;
      for (const auto& t : tables) {
        bool same = true;
        for (std::size_t i = 0; i < xs.size() && same; ++i) same = eq(cod, t[i], table[i]);
        if (same) {
          dup = true;
          break;
        }
      }
      if (dup) continue;
      tables.push_back(std::move(table));
      out.push_back(f);
    }
    return out;
  }

  // Every monotone function out of a flat domain: f(err) = y0 and each other
  // enumerated point maps above y0. Points outside the enumeration map to y0.
  // Empty when there would be more than kMaxFlat of them.
  std::optional<std::vector<Value>> flat_function_values(const Type& cod,
                                                         const std::vector<Value>& xs,
                                                         const std::vector<Value>& ys) {
    constexpr std::size_t kMaxFlat = 4096;
    std::vector<Value> out;
    for (const Value& y0 : ys) {
      std::vector<std::size_t> above;
      for (std::size_t i = 0; i < ys.size(); ++i)
        if (le(cod, y0, ys[i])) above.push_back(i);
      std::size_t points = xs.size() - 1;  // xs[0] is err
      double count = 1;
      for (std::size_t i = 0; i < points; ++i) count *= static_cast<double>(above.size());
      if (out.size() + count > kMaxFlat) return std::nullopt;
      std::vector<std::size_t> choice(points, 0);
      while (true) {
        auto table = std::make_shared<std::map<std::uint64_t, Value>>();
        std::string label = "err->" + to_string(y0);
        for (std::size_t i = 0; i < points; ++i) {
          const Value& y = ys[above[choice[i]]];
          table->emplace(*xs[i + 1].nat, y);
          label += "; " + to_string(xs[i + 1]) + "->" + to_string(y);
        }
        out.push_back(Value::of_fn(
            [table, y0](const Value& x) {
              if (!x.nat) return y0;
              auto it = table->find(*x.nat);
              return it == table->end() ? y0 : it->second;
            },
            label));
        std::size_t k = 0;
        while (k < points && ++choice[k] == above.size()) choice[k++] = 0;
        if (k == points) break;
      }
    }
    return out;
  }

  // Code ranges must be nested along base axioms and disjoint otherwise.
  void check_codes() const {
    for (const auto& [x, rx] : sig_.base_codes) {
      if (!sig_.base_types.count(x)) throw ModelError("code range for undeclared base type " + x);
      for (const auto& [y, ry] : sig_.base_codes) {
        if (x >= y) continue;
        bool disjoint = rx.hi <= ry.lo || ry.hi <= rx.lo;
        bool x_in_y = ry.lo <= rx.lo && rx.hi <= ry.hi;
        bool y_in_x = rx.lo <= ry.lo && ry.hi <= rx.hi;
        bool xy = check_type_dyn(sig_, Type::base(x), Type::base(y));
        bool yx = check_type_dyn(sig_, Type::base(y), Type::base(x));
        if ((xy && !x_in_y) || (yx && !y_in_x) || (!xy && !yx && !disjoint))
          throw ModelError("code ranges of " + x + " and " + y +
                           " must be nested along dynamism and disjoint otherwise");
      }
    }
  }

  const Signature& sig_;
  std::size_t bound_;
  std::set<std::uint64_t> leaves_;
  std::map<Type, std::vector<Value>> values_;
  std::map<std::pair<Type, Type>, Coreflection> coreflections_;
};

// Free-function forms; each builds a fresh model.

inline Coreflection denote_coreflection(const Signature& sig, const Type& a, const Type& b,
                                        std::size_t bound = 2) {
  if (!check_type_dyn(sig, a, b))
    throw ModelError(to_string(a) + " <= " + to_string(b) + " is not derivable");
  Model m(sig, bound);
  return m.coreflection(a, b);
}

inline EquipmentReport check_equipment(const Signature& sig, const Type& a, const Type& b,
                                       std::size_t bound = 2) {
  Model m(sig, bound);
  return m.check_equipment(a, b);
}

inline SemanticReport check_judgment_semantics(const Signature& sig, const Judgment& j,
                                               std::size_t bound = 2) {
  Model m(sig, bound);
  return m.check_judgment(j);
}

}  // namespace gtt
