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

// Elaboration of casts into wrappers over ground casts, and a normalizer
// (normalization by evaluation) producing eta-long beta-normal forms.

#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "gtt/typing.hpp"

namespace gtt {

// The one-level head of a non-dynamic type.
inline Type ground_of(const Type& a) {
  if (a.is_fn()) return Type::fn(Type::dyn(), Type::dyn());
  if (a.is_prod()) return Type::prod(Type::dyn(), Type::dyn());
  return a;  // base types and 1 are their own ground
}

inline bool is_ground_cast(const Term& t) {
  if (t.is(Term::Kind::Up)) return t.to().is_dyn() && !t.from().is_dyn() && ground_of(t.from()) == t.from();
  if (t.is(Term::Kind::Dn)) return t.from().is_dyn() && !t.to().is_dyn() && ground_of(t.to()) == t.to();
  return false;
}

// True when every cast in t is a ground cast.
inline bool only_ground_casts(const Term& t) {
  if ((t.is(Term::Kind::Up) || t.is(Term::Kind::Dn)) && !is_ground_cast(t)) return false;
  for (const Term& k : t.args())
    if (!only_ground_casts(k)) return false;
  return true;
}

namespace detail {

class Elaborator {
 public:
  explicit Elaborator(const Signature& sig) : sig_(sig) {}

  Term term(const Term& t) {
    using K = Term::Kind;
    switch (t.kind()) {
      case K::Lam: {
        std::string x = fresh();
        Term body = term(open_lam(t, x));
        return Term::lam(x, t.annot(), body, t.name());
      }
      case K::Up: return up(t.from(), t.to(), term(t.body()));
      case K::Dn: return dn(t.from(), t.to(), term(t.body()));
      default: {
        if (t.args().empty()) return t;
        std::vector<Term> kids;
        for (const Term& k : t.args()) kids.push_back(term(k));
        return t.with_kids(std::move(kids));
      }
    }
  }

  // Upcast from a to the more dynamic b.
  Term up(const Type& a, const Type& b, const Term& s) {
    if (a == b) return s;
    if (b.is_dyn()) {
      if (a.is_unit()) return Term::err(Type::dyn());  // the chosen unit encoding
      Type g = ground_of(a);
      return Term::up(g, b, g == a ? s : up(a, g, s));
    }
    if (a.is_fn() && b.is_fn()) {
      std::string x = fresh();
      Term arg = dn(b.domain(), a.domain(), Term::var(x));
      return Term::lam(x, b.domain(), up(a.codomain(), b.codomain(), Term::app(s, arg)), "x");
    }
    if (a.is_prod() && b.is_prod())
      return Term::pair(up(a.left(), b.left(), Term::proj(1, s)),
                        up(a.right(), b.right(), Term::proj(2, s)));
    // Axiom-related types with different heads: through the dynamic type,
    // which needs the retract to be an equivalence.
    if (sig_.retract_axiom && !a.is_dyn()) return dn(Type::dyn(), b, up(a, Type::dyn(), s));
    return Term::up(a, b, s);
  }

  // Downcast from b to the less dynamic a.
  Term dn(const Type& b, const Type& a, const Term& s) {
    if (a == b) return s;
    if (b.is_dyn()) {
      Type g = ground_of(a);
      Term tagged = Term::dn(b, g, s);
      return g == a ? tagged : dn(g, a, tagged);
    }
    if (a.is_fn() && b.is_fn()) {
      std::string x = fresh();
      Term arg = up(a.domain(), b.domain(), Term::var(x));
      return Term::lam(x, a.domain(), dn(b.codomain(), a.codomain(), Term::app(s, arg)), "x");
    }
    if (a.is_prod() && b.is_prod())
      return Term::pair(dn(b.left(), a.left(), Term::proj(1, s)),
                        dn(b.right(), a.right(), Term::proj(2, s)));
    if (sig_.retract_axiom && !a.is_dyn()) return dn(Type::dyn(), a, up(b, Type::dyn(), s));
    return Term::dn(b, a, s);
  }

 private:
  // '%' cannot appear in parsed identifiers, so these never capture.
  std::string fresh() { return "%e" + std::to_string(counter_++); }

  const Signature& sig_;
  std::uint64_t counter_ = 0;
};

}  // namespace detail

// Rewrites every cast into wrappers over ground casts. Throws TypeError when
// t is ill-typed in gamma.
inline Term elaborate(const Signature& sig, const Context& gamma, const Term& t) {
  infer_type(sig, gamma, t);
  return detail::Elaborator(sig).term(t);
}

// dn[? => B] up[A => ?] t
inline Term oblique_cast(const Type& a, const Type& b, const Term& t) {
  return Term::dn(Type::dyn(), b, Term::up(a, Type::dyn(), t));
}

// ---------------------------------------------------------------------------
// Normalization.

class NormalizeError : public Error {
 public:
  using Error::Error;
};

struct NormalizeOptions {
  std::uint64_t max_steps = 1'000'000;
};

// Types whose only normal form is built from () and lambdas.
inline bool unit_only(const Type& t) {
  if (t.is_unit()) return true;
  if (t.is_prod()) return unit_only(t.left()) && unit_only(t.right());
  if (t.is_fn()) return unit_only(t.codomain());
  return false;
}

namespace detail {

struct Sem;
using SemP = std::shared_ptr<const Sem>;

struct Sem {
  enum class Kind { Neutral, Bot, Fun, Pair, Unit, Tag };
  Kind kind;
  Term neutral = Term::unit();       // Neutral
  std::function<SemP(SemP)> fn;      // Fun
  SemP a, b;                         // Pair; Tag uses a; Neutral dn[? => G] keeps its argument
  Type ground = Type::unit();        // Tag; G of a Neutral downcast
};

class Normalizer {
 public:
  Normalizer(const Signature& sig, NormalizeOptions opts) : sig_(sig), opts_(opts) {}

  using Env = std::vector<SemP>;  // bound variables, innermost last

  SemP eval(const Term& t, const Env& env) {
    tick();
    using K = Term::Kind;
    switch (t.kind()) {
      case K::Var: {
        auto it = free_.find(t.name());
        if (it == free_.end()) throw NormalizeError("unbound variable `" + t.name() + "`");
        return it->second;
      }
      case K::Bound: return env.at(env.size() - 1 - t.index());
      case K::FnApp: {
        std::vector<Term> args;
        const FnSymbol* f = nullptr;
        if (!t.is_numeral()) {
          auto it = sig_.fn_symbols.find(t.name());
          if (it == sig_.fn_symbols.end())
            throw NormalizeError("unknown function symbol `" + t.name() + "`");
          f = &it->second;
        }
        for (std::size_t i = 0; i < t.args().size(); ++i)
          args.push_back(reify(f->inputs.at(i), eval(t.args()[i], env)));
        return reflect(f ? f->output : Type::nat(), Term::fn_app(t.name(), std::move(args)));
      }
      case K::Lam: {
        Term scope = t.scope();
        Env captured = env;
        return fun([this, scope, captured](SemP v) {
          Env e = captured;
          e.push_back(std::move(v));
          return eval(scope, e);
        });
      }
      case K::App: return apply(eval(t.fn(), env), eval(t.arg(), env));
      case K::Pair: return pair(eval(t.first(), env), eval(t.second(), env));
      case K::Proj: {
        SemP p = eval(t.tuple(), env);
        return t.proj_index() == 1 ? p->a : p->b;
      }
      case K::UnitVal: return unit();
      case K::Err: return err(t.err_type());
      case K::Up: return up(t.from(), t.to(), eval(t.body(), env));
      case K::Dn: return dn(t.from(), t.to(), eval(t.body(), env));
    }
    throw NormalizeError("unknown term");
  }

  SemP reflect(const Type& a, const Term& n) {
    if (a.is_fn()) {
      Type dom = a.domain(), cod = a.codomain();
      return fun([this, dom, cod, n](SemP v) { return reflect(cod, Term::app(n, reify(dom, v))); });
    }
    if (a.is_prod()) return pair(reflect(a.left(), Term::proj(1, n)), reflect(a.right(), Term::proj(2, n)));
    if (a.is_unit()) return unit();
    return make(Sem{Sem::Kind::Neutral, n});
  }

  SemP err(const Type& a) {
    if (a.is_fn()) {
      Type cod = a.codomain();
      return fun([this, cod](SemP) { return err(cod); });
    }
    if (a.is_prod()) return pair(err(a.left()), err(a.right()));
    if (a.is_unit()) return unit();
    return make(Sem{Sem::Kind::Bot});
  }

  Term reify(const Type& a, const SemP& v) {
    tick();
    if (a.is_fn()) {
      std::string x = "%n" + std::to_string(counter_++);
      Term body = reify(a.codomain(), apply(v, reflect(a.domain(), Term::var(x))));
      if (!unit_only(a) && body.is(Term::Kind::Err)) return Term::err(a);
      return Term::lam(x, a.domain(), body, "x");
    }
    if (a.is_prod()) {
      Term l = reify(a.left(), v->a);
      Term r = reify(a.right(), v->b);
      if (!unit_only(a) && bottom_nf(a.left(), l) && bottom_nf(a.right(), r)) return Term::err(a);
      return Term::pair(l, r);
    }
    if (a.is_unit()) return Term::unit();
    switch (v->kind) {
      case Sem::Kind::Neutral: return v->neutral;
      case Sem::Kind::Bot: return Term::err(a);
      case Sem::Kind::Tag: return Term::up(v->ground, Type::dyn(), reify(v->ground, v->a));
      default: throw NormalizeError("value does not match type " + to_string(a));
    }
  }

  void bind_free(const std::string& x, SemP v) { free_[x] = std::move(v); }

 private:
  static bool bottom_nf(const Type& a, const Term& n) { return n.is(Term::Kind::Err) || unit_only(a); }

  static SemP make(Sem s) { return std::make_shared<const Sem>(std::move(s)); }
  static SemP fun(std::function<SemP(SemP)> f) {
    Sem s{Sem::Kind::Fun};
    s.fn = std::move(f);
    return make(std::move(s));
  }
  static SemP pair(SemP a, SemP b) {
    Sem s{Sem::Kind::Pair};
    s.a = std::move(a);
    s.b = std::move(b);
    return make(std::move(s));
  }
  static SemP unit() {
    static const SemP u = make(Sem{Sem::Kind::Unit});
    return u;
  }

  SemP apply(const SemP& f, SemP v) {
    tick();
    return f->fn(std::move(v));
  }

  SemP up(const Type& a, const Type& b, const SemP& v) {
    Term nf = reify(a, v);
    if (bottom_nf(a, nf) && !unit_only(b)) return err(b);  // strictness
    if (b.is_dyn() && ground_of(a) == a && !a.is_dyn()) {
      // up[G => ?] dn[? => G] up[G' => ?] w = up[G' => ?] w for G' below G
      if (v->kind == Sem::Kind::Neutral && v->a && v->a->kind == Sem::Kind::Tag &&
          v->a->ground != a && check_type_dyn(sig_, v->a->ground, a))
        return v->a;
      Sem s{Sem::Kind::Tag};
      s.ground = a;
      s.a = v;
      return make(std::move(s));
    }
    return reflect(b, Term::up(a, b, nf));
  }

  SemP dn(const Type& b, const Type& a, const SemP& v) {
    if (b.is_dyn() && !a.is_dyn()) {
      if (v->kind == Sem::Kind::Bot && sig_.retract_axiom) return err(a);
      if (v->kind == Sem::Kind::Tag) {
        if (v->ground == a && sig_.retract_axiom) return v->a;
        if (sig_.disjointness && ground_of(a) == a && tags_disjoint(sig_, v->ground, a)) return err(a);
        // dn[? => G] up[G' => ?] dn[? => G'] u = dn[? => G] u for G below G'
        const SemP& inner = v->a;
        if (inner->kind == Sem::Kind::Neutral && inner->a && inner->ground == v->ground &&
            v->ground != a && check_type_dyn(sig_, a, v->ground))
          return dn(b, a, inner->a);
      }
      if (a.is_base()) {
        Sem s{Sem::Kind::Neutral, Term::dn(b, a, reify(b, v))};
        s.a = v;
        s.ground = a;
        return make(std::move(s));
      }
    } else if (sig_.retract_axiom && reify(b, v).is(Term::Kind::Err)) {
      return err(a);
    }
    return reflect(a, Term::dn(b, a, reify(b, v)));
  }

  void tick() {
    if (++steps_ > opts_.max_steps)
      throw NormalizeError("normalization exceeded " + std::to_string(opts_.max_steps) + " steps");
  }

  const Signature& sig_;
  NormalizeOptions opts_;
  std::map<std::string, SemP> free_;
  std::uint64_t steps_ = 0;
  std::uint64_t counter_ = 0;
};

}  // namespace detail

// The eta-long beta-normal form of t, which must be well-typed in gamma.
// Intended for elaborated terms; remaining non-ground casts are kept neutral.
inline Term normalize(const Signature& sig, const Context& gamma, const Term& t,
                      NormalizeOptions opts = {}) {
  Type a = infer_type(sig, gamma, t);
  detail::Normalizer n(sig, opts);
  for (const Binding& b : gamma) n.bind_free(b.name, n.reflect(b.type, Term::var(b.name)));
  return n.reify(a, n.eval(t, {}));
}

// Whether t and u have the same normal form after elaboration. Throws
// TypeError when they are ill-typed or have different types.
inline bool equal_terms(const Signature& sig, const Context& gamma, const Term& t, const Term& u,
                        NormalizeOptions opts = {}) {
  Type a = infer_type(sig, gamma, t);
  Type b = infer_type(sig, gamma, u);
  if (a != b)
    throw TypeError("terms have different types " + to_string(a) + " and " + to_string(b));
  return alpha_eq(normalize(sig, gamma, elaborate(sig, gamma, t), opts),
                  normalize(sig, gamma, elaborate(sig, gamma, u), opts));
}

}  // namespace gtt
