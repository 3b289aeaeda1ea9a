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

// Abstract syntax of gradual type theory.
//
// Terms use a locally nameless representation: bound variables are de Bruijn
// indices and free variables are names. Lambdas keep their source name only as
// a printing hint, so structural equality is alpha-equivalence and substitution
// of free names cannot capture.

#pragma once

#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace gtt {

// Base class for every error raised by the kernel.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Raised by substitution when a free variable has no image.
class SubstitutionError : public Error {
 public:
  using Error::Error;
};

inline constexpr const char* kNatName = "Nat";

class Type {
 public:
  enum class Kind : std::uint8_t { Base, Dyn, Fn, Prod, Unit };

  static Type base(std::string name) {
    return Type(std::make_shared<const Node>(Node{Kind::Base, std::move(name), nullptr, nullptr}));
  }
  static Type nat() { return base(kNatName); }
  static Type dyn() {
    static const Type t(std::make_shared<const Node>(Node{Kind::Dyn, "", nullptr, nullptr}));
    return t;
  }
  static Type unit() {
    static const Type t(std::make_shared<const Node>(Node{Kind::Unit, "", nullptr, nullptr}));
    return t;
  }
  static Type fn(const Type& domain, const Type& codomain) {
    return Type(std::make_shared<const Node>(Node{Kind::Fn, "", domain.node_, codomain.node_}));
  }
  static Type prod(const Type& left, const Type& right) {
    return Type(std::make_shared<const Node>(Node{Kind::Prod, "", left.node_, right.node_}));
  }

  Kind kind() const noexcept { return node_->kind; }
  bool is_base() const noexcept { return kind() == Kind::Base; }
  bool is_dyn() const noexcept { return kind() == Kind::Dyn; }
  bool is_fn() const noexcept { return kind() == Kind::Fn; }
  bool is_prod() const noexcept { return kind() == Kind::Prod; }
  bool is_unit() const noexcept { return kind() == Kind::Unit; }
  bool is_nat() const noexcept { return is_base() && node_->name == kNatName; }

  const std::string& name() const { return node_->name; }
  // Fn: domain/codomain. Prod: left/right.
  Type domain() const { return Type(node_->a); }
  Type codomain() const { return Type(node_->b); }
  Type left() const { return Type(node_->a); }
  Type right() const { return Type(node_->b); }

  // Number of constructors; a base, ?, or 1 has size 1.
  std::size_t size() const { return node_size(*node_); }

  friend int compare(const Type& x, const Type& y) { return compare_nodes(x.node_.get(), y.node_.get()); }
  friend bool operator==(const Type& x, const Type& y) { return compare(x, y) == 0; }
  friend bool operator!=(const Type& x, const Type& y) { return compare(x, y) != 0; }
  friend bool operator<(const Type& x, const Type& y) { return compare(x, y) < 0; }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::shared_ptr<const Node> a;
    std::shared_ptr<const Node> b;
  };
  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::size_t node_size(const Node& n) {
    return n.a ? 1 + node_size(*n.a) + node_size(*n.b) : 1;
  }
  static int compare_nodes(const Node* x, const Node* y) {
    if (x == y) return 0;
    if (x->kind != y->kind) return x->kind < y->kind ? -1 : 1;
    if (x->kind == Kind::Base) return x->name < y->name ? -1 : (x->name == y->name ? 0 : 1);
    if (!x->a) return 0;
    int c = compare_nodes(x->a.get(), y->a.get());
    return c != 0 ? c : compare_nodes(x->b.get(), y->b.get());
  }

  std::shared_ptr<const Node> node_;
};

class Term {
 public:
  enum class Kind : std::uint8_t {
    Var, Bound, FnApp, Lam, App, Pair, Proj, UnitVal, Up, Dn, Err
  };

  static Term var(std::string name) { return make(Kind::Var, std::move(name)); }
  static Term bound(std::size_t index) {
    Term t = make(Kind::Bound, "");
    const_cast<Node&>(*t.node_).index = index;
    return t;
  }
  static Term fn_app(std::string symbol, std::vector<Term> args) {
    return make(Kind::FnApp, std::move(symbol), std::move(args));
  }
  static Term numeral(std::uint64_t n) { return fn_app(std::to_string(n), {}); }
  // Abstracts the free name x in body. The hint defaults to x.
  static Term lam(const std::string& x, Type annot, const Term& body,
                  std::optional<std::string> hint = std::nullopt);
  // Body is already a scope whose index 0 refers to this binder.
  static Term lam_scope(std::string hint, Type annot, Term scope) {
    return make(Kind::Lam, std::move(hint), {std::move(scope)}, std::move(annot));
  }
  static Term app(Term fn, Term arg) {
    return make(Kind::App, "", {std::move(fn), std::move(arg)});
  }
  static Term pair(Term first, Term second) {
    return make(Kind::Pair, "", {std::move(first), std::move(second)});
  }
  static Term proj(int index, Term tuple) {
    if (index != 1 && index != 2) throw std::invalid_argument("projection index must be 1 or 2");
    Term t = make(Kind::Proj, "", {std::move(tuple)});
    const_cast<Node&>(*t.node_).index = static_cast<std::size_t>(index);
    return t;
  }
  static Term unit() { return make(Kind::UnitVal, ""); }
  // up[from => to] body, with from below to.
  static Term up(Type from, Type to, Term body) {
    return make(Kind::Up, "", {std::move(body)}, std::move(from), std::move(to));
  }
  // dn[from => to] body, with to below from.
  static Term dn(Type from, Type to, Term body) {
    return make(Kind::Dn, "", {std::move(body)}, std::move(from), std::move(to));
  }
  static Term err(Type at) { return make(Kind::Err, "", {}, std::move(at)); }

  Kind kind() const noexcept { return node_->kind; }
  bool is(Kind k) const noexcept { return node_->kind == k; }

  // Var name, FnApp symbol, Lam hint.
  const std::string& name() const { return node_->name; }
  std::size_t index() const { return node_->index; }
  int proj_index() const { return static_cast<int>(node_->index); }
  const std::vector<Term>& args() const { return node_->kids; }
  const Term& child(std::size_t i) const { return node_->kids.at(i); }
  const Term& fn() const { return child(0); }
  const Term& arg() const { return child(1); }
  const Term& first() const { return child(0); }
  const Term& second() const { return child(1); }
  const Term& tuple() const { return child(0); }
  const Term& scope() const { return child(0); }
  const Term& body() const { return child(0); }
  const Type& annot() const { return *node_->t1; }
  const Type& from() const { return *node_->t1; }
  const Type& to() const { return *node_->t2; }
  const Type& err_type() const { return *node_->t1; }

  bool is_numeral() const {
    if (!is(Kind::FnApp) || !args().empty() || name().empty()) return false;
    for (char c : name())
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  }

  // Rebuilds this node with new children, keeping everything else.
  Term with_kids(std::vector<Term> kids) const {
    Term t = make(kind(), name(), std::move(kids), node_->t1, node_->t2);
    const_cast<Node&>(*t.node_).index = node_->index;
    return t;
  }
  bool same_node(const Term& o) const noexcept { return node_ == o.node_; }

 private:
  struct Node {
    Kind kind;
    std::string name;
    std::size_t index = 0;
    std::vector<Term> kids;
    std::optional<Type> t1;
    std::optional<Type> t2;
  };
  static Term make(Kind k, std::string name, std::vector<Term> kids = {},
                   std::optional<Type> t1 = std::nullopt,
                   std::optional<Type> t2 = std::nullopt) {
    return Term(std::make_shared<Node>(
        Node{k, std::move(name), 0, std::move(kids), std::move(t1), std::move(t2)}));
  }
  explicit Term(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  std::shared_ptr<const Node> node_;
};

// Structural equality; lambda hints are ignored, so this is alpha-equivalence.
inline bool alpha_eq(const Term& t, const Term& u) {
  if (t.same_node(u)) return true;
  if (t.kind() != u.kind()) return false;
  using K = Term::Kind;
  switch (t.kind()) {
    case K::Var:
      return t.name() == u.name();
    case K::Bound:
      return t.index() == u.index();
    case K::FnApp:
      if (t.name() != u.name() || t.args().size() != u.args().size()) return false;
      break;
    case K::Lam:
      if (t.annot() != u.annot()) return false;
      break;
    case K::Proj:
      if (t.proj_index() != u.proj_index()) return false;
      break;
    case K::Up:
    case K::Dn:
      if (t.from() != u.from() || t.to() != u.to()) return false;
      break;
    case K::Err:
      return t.err_type() == u.err_type();
    default:
      break;
  }
  for (std::size_t i = 0; i < t.args().size(); ++i)
    if (!alpha_eq(t.args()[i], u.args()[i])) return false;
  return true;
}

inline bool operator==(const Term& t, const Term& u) { return alpha_eq(t, u); }
inline bool operator!=(const Term& t, const Term& u) { return !alpha_eq(t, u); }

namespace detail {

// Rewrites leaves, tracking binder depth. f returns nullopt to keep a leaf.
template <typename F>
Term map_leaves(const Term& t, std::size_t depth, F& f) {
  using K = Term::Kind;
  if (t.is(K::Var) || t.is(K::Bound)) {
    auto r = f(t, depth);
    return r ? *r : t;
  }
  if (t.args().empty()) return t;
  std::size_t inner = t.is(K::Lam) ? depth + 1 : depth;
  std::vector<Term> kids;
  kids.reserve(t.args().size());
  bool changed = false;
  for (const Term& k : t.args()) {
    kids.push_back(map_leaves(k, inner, f));
    changed = changed || !kids.back().same_node(k);
  }
  return changed ? t.with_kids(std::move(kids)) : t;
}

}  // namespace detail

// Replaces free occurrences of x by the index of the enclosing binder.
inline Term close(const Term& t, const std::string& x) {
  auto f = [&](const Term& leaf, std::size_t depth) -> std::optional<Term> {
    if (leaf.is(Term::Kind::Var) && leaf.name() == x) return Term::bound(depth);
    return std::nullopt;
  };
  return detail::map_leaves(t, 0, f);
}

// Replaces index 0 of a scope by u. u must be locally closed, so no shifting.
inline Term instantiate(const Term& scope, const Term& u) {
  auto f = [&](const Term& leaf, std::size_t depth) -> std::optional<Term> {
    if (leaf.is(Term::Kind::Bound) && leaf.index() == depth) return u;
    return std::nullopt;
  };
  return detail::map_leaves(scope, 0, f);
}

inline Term Term::lam(const std::string& x, Type annot, const Term& body,
                      std::optional<std::string> hint) {
  return lam_scope(hint ? *hint : x, std::move(annot), close(body, x));
}

// Body of a lambda with its bound variable replaced by the free name x.
inline Term open_lam(const Term& lam, const std::string& x) {
  return instantiate(lam.scope(), Term::var(x));
}

inline void collect_free_vars(const Term& t, std::set<std::string>& out) {
  if (t.is(Term::Kind::Var)) {
    out.insert(t.name());
    return;
  }
  for (const Term& k : t.args()) collect_free_vars(k, out);
}

inline std::set<std::string> free_vars(const Term& t) {
  std::set<std::string> out;
  collect_free_vars(t, out);
  return out;
}

// True when every index is below its binder.
inline bool locally_closed(const Term& t, std::size_t depth = 0) {
  if (t.is(Term::Kind::Bound)) return t.index() < depth;
  std::size_t inner = t.is(Term::Kind::Lam) ? depth + 1 : depth;
  for (const Term& k : t.args())
    if (!locally_closed(k, inner)) return false;
  return true;
}

inline std::size_t term_size(const Term& t) {
  std::size_t n = 1;
  for (const Term& k : t.args()) n += term_size(k);
  return n;
}

// hint, hint', hint'', ... choosing the first name outside avoid.
inline std::string fresh_name(const std::string& hint, const std::set<std::string>& avoid) {
  std::string name = hint.empty() ? "x" : hint;
  while (avoid.count(name)) name += '\'';
  return name;
}

using Substitution = std::map<std::string, Term>;

// Simultaneous substitution; every free variable of t must have an image.
inline Term substitute(const Term& t, const Substitution& sigma) {
  for (const auto& [x, image] : sigma)
    if (!locally_closed(image))
      throw SubstitutionError("substitution image for `" + x + "` has dangling bound variables");
  auto f = [&](const Term& leaf, std::size_t) -> std::optional<Term> {
    if (!leaf.is(Term::Kind::Var)) return std::nullopt;
    auto it = sigma.find(leaf.name());
    if (it == sigma.end())
      throw SubstitutionError("substitution does not cover free variable `" + leaf.name() + "`");
    return it->second;
  };
  return detail::map_leaves(t, 0, f);
}

// Like substitute, but variables without an image are left alone.
inline Term substitute_partial(const Term& t, const Substitution& sigma) {
  auto f = [&](const Term& leaf, std::size_t) -> std::optional<Term> {
    if (!leaf.is(Term::Kind::Var)) return std::nullopt;
    auto it = sigma.find(leaf.name());
    if (it == sigma.end()) return std::nullopt;
    return it->second;
  };
  return detail::map_leaves(t, 0, f);
}

// The substitution applying sigma first and then delta.
inline Substitution compose(const Substitution& sigma, const Substitution& delta) {
  Substitution out;
  for (const auto& [x, image] : sigma) out.emplace(x, substitute(image, delta));
  return out;
}

struct Binding {
  std::string name;
  Type type;
  friend bool operator==(const Binding& a, const Binding& b) {
    return a.name == b.name && a.type == b.type;
  }
};
using Context = std::vector<Binding>;

inline const Type* lookup(const Context& gamma, const std::string& x) {
  for (auto it = gamma.rbegin(); it != gamma.rend(); ++it)
    if (it->name == x) return &it->type;
  return nullptr;
}

inline std::set<std::string> names_of(const Context& gamma) {
  std::set<std::string> out;
  for (const Binding& b : gamma) out.insert(b.name);
  return out;
}

// ---------------------------------------------------------------------------
// Printing. The output re-parses to an alpha-equal term.

namespace detail {

inline void print_type(std::string& out, const Type& t, int prec) {
  switch (t.kind()) {
    case Type::Kind::Base:
      out += t.name();
      return;
    case Type::Kind::Dyn:
      out += '?';
      return;
    case Type::Kind::Unit:
      out += '1';
      return;
    case Type::Kind::Fn:
      if (prec > 0) out += '(';
      print_type(out, t.domain(), 1);
      out += " -> ";
      print_type(out, t.codomain(), 0);
      if (prec > 0) out += ')';
      return;
    case Type::Kind::Prod:
      if (prec > 1) out += '(';
      print_type(out, t.left(), 2);
      out += " * ";
      print_type(out, t.right(), 2);
      if (prec > 1) out += ')';
      return;
  }
}

}  // namespace detail

inline std::string to_string(const Type& t) {
  std::string out;
  detail::print_type(out, t, 0);
  return out;
}

namespace detail {

// Precedence: 0 lambda body, 1 application head, 2 prefix operator, 3 atom.
class TermPrinter {
 public:
  explicit TermPrinter(const Term& root) : used_(free_vars(root)) {}

  void print(std::string& out, const Term& t, int prec) {
    using K = Term::Kind;
    switch (t.kind()) {
      case K::Var:
        out += t.name();
        return;
      case K::Bound:
        if (t.index() < names_.size())
          out += names_[names_.size() - 1 - t.index()];
        else
          out += "#" + std::to_string(t.index());
        return;
      case K::FnApp:
        out += t.name();
        if (t.is_numeral()) return;
        out += '(';
        for (std::size_t i = 0; i < t.args().size(); ++i) {
          if (i) out += ", ";
          print(out, t.args()[i], 0);
        }
        out += ')';
        return;
      case K::Lam: {
        if (prec > 0) out += '(';
        std::set<std::string> avoid = used_;
        avoid.insert(names_.begin(), names_.end());
        std::string x = fresh_name(t.name(), avoid);
        out += '\\' + x + ':';
        print_type(out, t.annot(), 0);
        out += ". ";
        names_.push_back(x);
        print(out, t.scope(), 0);
        names_.pop_back();
        if (prec > 0) out += ')';
        return;
      }
      case K::App:
        if (prec > 1) out += '(';
        print(out, t.fn(), 1);
        out += ' ';
        print(out, t.arg(), 3);
        if (prec > 1) out += ')';
        return;
      case K::Pair:
        out += '(';
        print(out, t.first(), 0);
        out += ", ";
        print(out, t.second(), 0);
        out += ')';
        return;
      case K::Proj:
        if (prec > 2) out += '(';
        out += t.proj_index() == 1 ? "fst " : "snd ";
        print(out, t.tuple(), 3);
        if (prec > 2) out += ')';
        return;
      case K::UnitVal:
        out += "()";
        return;
      case K::Up:
      case K::Dn:
        if (prec > 2) out += '(';
        out += t.is(K::Up) ? "up[" : "dn[";
        print_type(out, t.from(), 0);
        out += " => ";
        print_type(out, t.to(), 0);
        out += "] ";
        print(out, t.body(), 3);
        if (prec > 2) out += ')';
        return;
      case K::Err:
        out += "err[";
        print_type(out, t.err_type(), 0);
        out += ']';
        return;
    }
  }

 private:
  std::set<std::string> used_;
  std::vector<std::string> names_;
};

}  // namespace detail

inline std::string to_string(const Term& t) {
  std::string out;
  detail::TermPrinter(t).print(out, t, 0);
  return out;
}

inline std::string to_string(const Context& gamma) {
  std::string out;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (i) out += ", ";
    out += gamma[i].name + " : " + to_string(gamma[i].type);
  }
  return out;
}

}  // namespace gtt
