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

// Shared test helpers: a random well-typed term generator and a small named
// term representation used as an oracle for binding operations.

#pragma once

#include <functional>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "gtt/corpus.hpp"
#include "gtt/syntax.hpp"
#include "gtt/typing.hpp"

namespace gtt::testing {

// Generates terms of a requested type. Every cast it emits is between types
// related by dynamism, so results are well-typed by construction.
class TermGen {
 public:
  TermGen(const Signature& sig, std::uint64_t seed, std::size_t type_size = 3)
      : sig_(sig), rng_(seed), types_(enumerate_types(sig, type_size)) {}

  const std::vector<Type>& types() const { return types_; }

  Type random_type() { return types_[pick(types_.size())]; }

  // The result has at most budget nodes.
  Term term(const Type& a, Context& gamma, int budget) {
    if (budget <= 1) return leaf(a, gamma);
    switch (pick(9)) {
      case 0:
        return leaf(a, gamma);
      case 1: {  // application
        if (budget < 3) break;
        Type b = small_type();
        int k = budget / 2;
        return Term::app(term(Type::fn(b, a), gamma, k), term(b, gamma, budget - k - 1));
      }
      case 2: {  // projection
        Type b = small_type();
        bool first = pick(2) == 0;
        Type p = first ? Type::prod(a, b) : Type::prod(b, a);
        return Term::proj(first ? 1 : 2, term(p, gamma, budget - 1));
      }
      case 3:
      case 4: {  // upcast from something below a
        std::vector<Type> below;
        for (const Type& t : types_)
          if (check_type_dyn(sig_, t, a)) below.push_back(t);
        if (below.empty()) break;
        Type b = below[pick(below.size())];
        return Term::up(b, a, term(b, gamma, budget - 1));
      }
      case 5:
      case 6: {  // downcast from something above a
        std::vector<Type> above;
        for (const Type& t : types_)
          if (check_type_dyn(sig_, a, t)) above.push_back(t);
        if (above.empty()) break;
        Type b = above[pick(above.size())];
        return Term::dn(b, a, term(b, gamma, budget - 1));
      }
      default:
        break;
    }
    // Introduction form for the head of a.
    if (a.is_fn()) {
      std::string x = "v" + std::to_string(gamma.size());
      gamma.push_back({x, a.domain()});
      Term body = term(a.codomain(), gamma, budget - 1);
      gamma.pop_back();
      return Term::lam(x, a.domain(), body);
    }
    if (a.is_prod() && budget >= 3) {
      int k = budget / 2;
      return Term::pair(term(a.left(), gamma, k), term(a.right(), gamma, budget - k - 1));
    }
    return leaf(a, gamma);
  }

  std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng_); }
  std::mt19937_64& rng() { return rng_; }

 private:
  Type small_type() {
    std::vector<Type> small;
    for (const Type& t : types_)
      if (!t.is_fn() && !t.is_prod()) small.push_back(t);
    return small[pick(small.size())];
  }

  Term leaf(const Type& a, const Context& gamma) {
    std::vector<Term> options;
    for (const Binding& b : gamma)
      if (b.type == a) options.push_back(Term::var(b.name));
    if (a == Type::nat()) options.push_back(Term::numeral(pick(3)));
    if (a.is_unit()) options.push_back(Term::unit());
    if (options.empty() || pick(5) == 0) return Term::err(a);
    return options[pick(options.size())];
  }

  const Signature& sig_;
  std::mt19937_64 rng_;
  std::vector<Type> types_;
};

// Named terms over Nat: the oracle side of alpha-equivalence and substitution
// tests. Binders are plain strings; nothing here is shared with the kernel.
struct NTerm {
  enum class K { Var, Num, Lam, App, Pair } k;
  std::string name;  // Var name, Lam binder
  int num = 0;
  std::string annot;  // Lam annotation (source text)
  std::vector<std::shared_ptr<const NTerm>> kids;
};
using NP = std::shared_ptr<const NTerm>;

inline NP nvar(std::string x) { return std::make_shared<NTerm>(NTerm{NTerm::K::Var, std::move(x)}); }
inline NP nnum(int n) { return std::make_shared<NTerm>(NTerm{NTerm::K::Num, "", n}); }
inline NP nlam(std::string x, std::string annot, NP body) {
  return std::make_shared<NTerm>(NTerm{NTerm::K::Lam, std::move(x), 0, std::move(annot), {std::move(body)}});
}
inline NP napp(NP f, NP a) {
  return std::make_shared<NTerm>(NTerm{NTerm::K::App, "", 0, "", {std::move(f), std::move(a)}});
}
inline NP npair(NP a, NP b) {
  return std::make_shared<NTerm>(NTerm{NTerm::K::Pair, "", 0, "", {std::move(a), std::move(b)}});
}

inline std::string print(const NP& t) {
  switch (t->k) {
    case NTerm::K::Var: return t->name;
    case NTerm::K::Num: return std::to_string(t->num);
    case NTerm::K::Lam: return "(\\" + t->name + ":" + t->annot + ". " + print(t->kids[0]) + ")";
    case NTerm::K::App: return "(" + print(t->kids[0]) + " " + print(t->kids[1]) + ")";
    case NTerm::K::Pair: return "(" + print(t->kids[0]) + ", " + print(t->kids[1]) + ")";
  }
  return "";
}

// Renames every binder to its nesting depth; two terms are alpha-equivalent
// exactly when their canonical renderings coincide.
inline std::string canonical(const NP& t, std::vector<std::string>& scope) {
  switch (t->k) {
    case NTerm::K::Var:
      for (std::size_t i = scope.size(); i-- > 0;)
        if (scope[i] == t->name) return "#" + std::to_string(i);
      return "free:" + t->name;
    case NTerm::K::Num: return std::to_string(t->num);
    case NTerm::K::Lam: {
      scope.push_back(t->name);
      std::string body = canonical(t->kids[0], scope);
      scope.pop_back();
      return "(L" + std::to_string(scope.size()) + ":" + t->annot + "." + body + ")";
    }
    case NTerm::K::App: return "(@" + canonical(t->kids[0], scope) + " " + canonical(t->kids[1], scope) + ")";
    case NTerm::K::Pair: return "(," + canonical(t->kids[0], scope) + " " + canonical(t->kids[1], scope) + ")";
  }
  return "";
}
inline std::string canonical(const NP& t) {
  std::vector<std::string> scope;
  return canonical(t, scope);
}

inline void nfree(const NP& t, std::set<std::string>& bound, std::set<std::string>& out) {
  if (t->k == NTerm::K::Var) {
    if (!bound.count(t->name)) out.insert(t->name);
  } else if (t->k == NTerm::K::Lam) {
    bool fresh = bound.insert(t->name).second;
    nfree(t->kids[0], bound, out);
    if (fresh) bound.erase(t->name);
  } else {
    for (const NP& k : t->kids) nfree(k, bound, out);
  }
}
inline std::set<std::string> nfree(const NP& t) {
  std::set<std::string> bound, out;
  nfree(t, bound, out);
  return out;
}

// Textbook capture-avoiding substitution with binder renaming.
inline NP nsubst(const NP& t, const std::map<std::string, NP>& sigma) {
  switch (t->k) {
    case NTerm::K::Var: {
      auto it = sigma.find(t->name);
      return it == sigma.end() ? t : it->second;
    }
    case NTerm::K::Num: return t;
    case NTerm::K::Lam: {
      std::map<std::string, NP> inner = sigma;
      inner.erase(t->name);
      std::set<std::string> avoid;
      for (const auto& [x, u] : inner) {
        auto fv = nfree(u);
        avoid.insert(fv.begin(), fv.end());
      }
      std::string y = t->name;
      if (avoid.count(y)) {
        auto body_fv = nfree(t->kids[0]);
        int n = 0;
        do y = "r" + std::to_string(n++);
        while (avoid.count(y) || body_fv.count(y));
        inner[t->name] = nvar(y);
      }
      return nlam(y, t->annot, nsubst(t->kids[0], inner));
    }
    case NTerm::K::App: return napp(nsubst(t->kids[0], sigma), nsubst(t->kids[1], sigma));
    case NTerm::K::Pair: return npair(nsubst(t->kids[0], sigma), nsubst(t->kids[1], sigma));
  }
  return t;
}

// Untyped-but-parsable named terms over a small name pool, so shadowing and
// capture are common.
inline NP random_nterm(std::mt19937_64& rng, int depth) {
  static const char* names[] = {"x", "y", "z", "w"};
  std::uniform_int_distribution<int> d(0, depth <= 0 ? 1 : 5);
  switch (d(rng)) {
    case 0: return nvar(names[rng() % 4]);
    case 1: return nnum(static_cast<int>(rng() % 3));
    case 2:
    case 3: return nlam(names[rng() % 4], rng() % 2 ? "Nat" : "?", random_nterm(rng, depth - 1));
    case 4: return napp(random_nterm(rng, depth - 1), random_nterm(rng, depth - 1));
    default: return npair(random_nterm(rng, depth - 1), random_nterm(rng, depth - 1));
  }
}

// A random consistent renaming of binders (free variables untouched), which
// may or may not respect scoping: the oracle decides.
inline NP rename_binders(const NP& t, std::mt19937_64& rng) {
  static const char* names[] = {"x", "y", "z", "w", "a", "b"};
  switch (t->k) {
    case NTerm::K::Lam: {
      std::string y = names[rng() % 6];
      NP body = rename_binders(t->kids[0], rng);
      // Replacing bound occurrences naively can capture; that is the point.
      std::function<NP(const NP&)> go = [&](const NP& u) -> NP {
        switch (u->k) {
          case NTerm::K::Var: return u->name == t->name ? nvar(y) : u;
          case NTerm::K::Num: return u;
          case NTerm::K::Lam: return u->name == t->name ? u : nlam(u->name, u->annot, go(u->kids[0]));
          case NTerm::K::App: return napp(go(u->kids[0]), go(u->kids[1]));
          case NTerm::K::Pair: return npair(go(u->kids[0]), go(u->kids[1]));
        }
        return u;
      };
      return nlam(y, t->annot, go(body));
    }
    case NTerm::K::App: return napp(rename_binders(t->kids[0], rng), rename_binders(t->kids[1], rng));
    case NTerm::K::Pair: return npair(rename_binders(t->kids[0], rng), rename_binders(t->kids[1], rng));
    default: return t;
  }
}

}  // namespace gtt::testing
