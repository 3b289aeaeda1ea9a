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

// Term dynamism judgments, explicit derivation trees, and their checker.
//
// Every node is checked in two steps: the presupposition of its conclusion
// (well-formed contexts, both sides typed, types related), then the local rule
// schema against the premises' conclusions.

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gtt/typing.hpp"

namespace gtt {

//  phi |- left <= right : left_type <= right_type
struct Judgment {
  DynCtx phi;
  Term left;
  Term right;
  Type left_type;
  Type right_type;
};

inline bool operator==(const Judgment& a, const Judgment& b) {
  return a.phi == b.phi && alpha_eq(a.left, b.left) && alpha_eq(a.right, b.right) &&
         a.left_type == b.left_type && a.right_type == b.right_type;
}
inline bool operator!=(const Judgment& a, const Judgment& b) { return !(a == b); }

inline std::string to_string(const Judgment& j) {
  return to_string(j.phi) + " |- " + to_string(j.left) + " <= " + to_string(j.right) + " : " +
         to_string(j.left_type) + " <= " + to_string(j.right_type);
}

// Swaps the two sides; used for the converse of an equi-dynamism claim.
inline Judgment converse(const Judgment& j) {
  DynCtx phi;
  for (const DynEntry& e : j.phi) phi.push_back({e.right, e.left, e.right_type, e.left_type});
  return {phi, j.right, j.left, j.right_type, j.left_type};
}

enum class Rule {
  Var, Comp, Refl, Trans, Ax,
  UR, UL, DL, DR, Retract, ErrBot,
  LamMon, AppMon, PairMon, ProjMon,
  FnBeta, FnEta, ProdBeta, ProdEta, UnitEta,
  Disjoint,
};

inline const char* rule_name(Rule r) {
  switch (r) {
    case Rule::Var: return "var";
    case Rule::Comp: return "comp";
    case Rule::Refl: return "refl";
    case Rule::Trans: return "trans";
    case Rule::Ax: return "ax";
    case Rule::UR: return "ur";
    case Rule::UL: return "ul";
    case Rule::DL: return "dl";
    case Rule::DR: return "dr";
    case Rule::Retract: return "retract";
    case Rule::ErrBot: return "err-bot";
    case Rule::LamMon: return "lam-mon";
    case Rule::AppMon: return "app-mon";
    case Rule::PairMon: return "pair-mon";
    case Rule::ProjMon: return "proj-mon";
    case Rule::FnBeta: return "fn-beta";
    case Rule::FnEta: return "fn-eta";
    case Rule::ProdBeta: return "prod-beta";
    case Rule::ProdEta: return "prod-eta";
    case Rule::UnitEta: return "unit-eta";
    case Rule::Disjoint: return "disjoint";
  }
  return "?";
}

inline std::optional<Rule> rule_from_name(const std::string& s) {
  for (int i = 0; i <= static_cast<int>(Rule::Disjoint); ++i)
    if (s == rule_name(static_cast<Rule>(i))) return static_cast<Rule>(i);
  return std::nullopt;
}

// Orientation of a beta/eta node: Le states redex <= contractum (or
// t <= expansion), Ge the converse.
enum class Direction { Le, Ge };

// The middle of a transitivity step, which the conclusion does not record.
struct Middle {
  Context ctx;
  Term term;
  Type type;
};

struct Aux {
  std::optional<Middle> middle;     // trans
  std::optional<std::size_t> axiom; // ax
  std::optional<Direction> dir;     // beta/eta
};

struct Derivation {
  Rule rule;
  Judgment conclusion;
  Aux aux;
  std::vector<Derivation> premises;
};

inline std::size_t derivation_size(const Derivation& d) {
  std::size_t n = 1;
  for (const Derivation& p : d.premises) n += derivation_size(p);
  return n;
}

inline bool contains_rule(const Derivation& d, Rule r) {
  if (d.rule == r) return true;
  for (const Derivation& p : d.premises)
    if (contains_rule(p, r)) return true;
  return false;
}

// ---------------------------------------------------------------------------
// Checking.

struct NodeFailure {
  std::string path;  // "root", "root/0/1", ...
  Rule rule;
  std::string message;
};

struct CheckReport {
  std::vector<NodeFailure> failures;
  bool ok() const { return failures.empty(); }
  std::string format() const {
    std::string out;
    for (const NodeFailure& f : failures)
      out += f.path + " (" + rule_name(f.rule) + "): " + f.message + "\n";
    return out;
  }
};

// Ground types: the one-level heads Nat, base names, ? -> ?, ? * ?, 1.
inline bool is_ground(const Type& g) {
  if (g.is_base() || g.is_unit()) return true;
  if (g.is_fn()) return g.domain().is_dyn() && g.codomain().is_dyn();
  if (g.is_prod()) return g.left().is_dyn() && g.right().is_dyn();
  return false;
}

// Empty when the judgment's presupposition holds.
inline std::optional<std::string> presupposition_error(const Signature& sig, const Judgment& j) {
  try {
    if (auto e = dyn_ctx_error(sig, j.phi)) return e;
    Type a = infer_type(sig, left_ctx(j.phi), j.left);
    if (a != j.left_type)
      return "left term has type " + to_string(a) + ", judgment says " + to_string(j.left_type);
    Type b = infer_type(sig, right_ctx(j.phi), j.right);
    if (b != j.right_type)
      return "right term has type " + to_string(b) + ", judgment says " + to_string(j.right_type);
    if (!check_type_dyn(sig, j.left_type, j.right_type))
      return "types " + to_string(j.left_type) + " <= " + to_string(j.right_type) +
             " are not related by dynamism";
  } catch (const TypeError& e) {
    return std::string("ill-typed: ") + e.what();
  }
  return std::nullopt;
}

namespace detail {

using Fail = std::optional<std::string>;

inline Fail expect(bool cond, const std::string& msg) {
  return cond ? Fail{} : Fail{msg};
}

inline std::string show(const Term& t) { return "`" + to_string(t) + "`"; }

// phi has exactly one entry (x, x', a, a2).
inline Fail single_entry(const DynCtx& phi, DynEntry& out) {
  if (phi.size() != 1) return "context must have exactly one entry";
  out = phi[0];
  return std::nullopt;
}

inline bool is_var(const Term& t, const std::string& x) {
  return t.is(Term::Kind::Var) && t.name() == x;
}

// Checks the rule schema of one node, given that premises are well-formed.
inline Fail check_schema(const Signature& sig, const Derivation& d) {
  const Judgment& c = d.conclusion;
  const auto& ps = d.premises;
  auto arity = [&](std::size_t n) -> Fail {
    return expect(ps.size() == n, "expected " + std::to_string(n) + " premises, found " +
                                      std::to_string(ps.size()));
  };
  auto need_refl = [&]() -> Fail {
    return expect(is_refl_ctx(c.phi), "context must be reflexive (Gamma <= Gamma)");
  };
  auto need_same_type = [&]() -> Fail {
    return expect(c.left_type == c.right_type, "both sides must have the same type");
  };
  // Beta/eta: the pair (lo, hi) must match (left, right) up to direction.
  auto oriented = [&](const Term& lo, const Term& hi) -> Fail {
    if (!d.aux.dir) return "missing direction tag";
    const Term& l = *d.aux.dir == Direction::Le ? lo : hi;
    const Term& r = *d.aux.dir == Direction::Le ? hi : lo;
    if (!alpha_eq(c.left, l)) return "left side should be " + show(l);
    if (!alpha_eq(c.right, r)) return "right side should be " + show(r);
    return std::nullopt;
  };
  using K = Term::Kind;
  switch (d.rule) {
    case Rule::Var: {
      if (auto f = arity(0)) return f;
      if (!c.left.is(K::Var) || !c.right.is(K::Var)) return "both sides must be variables";
      for (const DynEntry& e : c.phi)
        if (e.left == c.left.name() && e.right == c.right.name()) {
          if (e.left_type != c.left_type || e.right_type != c.right_type)
            return "types disagree with the context entry";
          return std::nullopt;
        }
      return "no context entry " + c.left.name() + " <= " + c.right.name();
    }
    case Rule::Refl: {
      if (auto f = arity(0)) return f;
      if (auto f = need_refl()) return f;
      if (auto f = need_same_type()) return f;
      return expect(alpha_eq(c.left, c.right), "both sides must be the same term");
    }
    case Rule::Trans: {
      if (auto f = arity(2)) return f;
      if (!d.aux.middle) return "missing middle judgment";
      const Middle& m = *d.aux.middle;
      const Judgment& j1 = ps[0].conclusion;
      const Judgment& j2 = ps[1].conclusion;
      if (!(right_ctx(j1.phi) == m.ctx)) return "premise 0 right context differs from the middle";
      if (!(left_ctx(j2.phi) == m.ctx)) return "premise 1 left context differs from the middle";
      if (!alpha_eq(j1.right, m.term) || !alpha_eq(j2.left, m.term))
        return "premises do not meet at the middle term";
      if (j1.right_type != m.type || j2.left_type != m.type)
        return "premises do not meet at the middle type";
      if (!(left_ctx(c.phi) == left_ctx(j1.phi))) return "left context differs from premise 0";
      if (!(right_ctx(c.phi) == right_ctx(j2.phi))) return "right context differs from premise 1";
      if (!alpha_eq(c.left, j1.left) || c.left_type != j1.left_type)
        return "left side differs from premise 0";
      if (!alpha_eq(c.right, j2.right) || c.right_type != j2.right_type)
        return "right side differs from premise 1";
      return std::nullopt;
    }
    case Rule::Comp: {
      if (ps.empty()) return "expected an inner premise";
      const Judgment& inner = ps[0].conclusion;
      if (ps.size() != inner.phi.size() + 1)
        return "expected one substitution premise per entry of the inner context";
      Substitution gl, gr;
      for (std::size_t i = 0; i < inner.phi.size(); ++i) {
        const Judgment& s = ps[i + 1].conclusion;
        const DynEntry& e = inner.phi[i];
        std::string where = "substitution premise " + std::to_string(i + 1);
        if (!(s.phi == c.phi)) return where + " has a different context than the conclusion";
        if (s.left_type != e.left_type || s.right_type != e.right_type)
          return where + " has types differing from entry " + e.left + " <= " + e.right;
        gl.emplace(e.left, s.left);
        gr.emplace(e.right, s.right);
      }
      if (c.left_type != inner.left_type || c.right_type != inner.right_type)
        return "types differ from the inner premise";
      if (!alpha_eq(c.left, substitute(inner.left, gl)))
        return "left side is not the substituted inner left side";
      if (!alpha_eq(c.right, substitute(inner.right, gr)))
        return "right side is not the substituted inner right side";
      return std::nullopt;
    }
    case Rule::Ax: {
      if (auto f = arity(0)) return f;
      if (!d.aux.axiom || *d.aux.axiom >= sig.tmdyn_axioms.size()) return "no such axiom";
      const TermAxiom& ax = sig.tmdyn_axioms[*d.aux.axiom];
      if (!(left_ctx(c.phi) == ax.left_ctx) || !(right_ctx(c.phi) == ax.right_ctx))
        return "contexts differ from the axiom";
      if (!alpha_eq(c.left, ax.left) || !alpha_eq(c.right, ax.right))
        return "terms differ from the axiom";
      return std::nullopt;
    }
    case Rule::UR: {
      // x <= y : A <= A  |-  x <= up[A => A'] y : A <= A'
      if (auto f = arity(0)) return f;
      DynEntry e{"", "", c.left_type, c.left_type};
      if (auto f = single_entry(c.phi, e)) return f;
      if (e.left_type != e.right_type) return "context entry must relate A to itself";
      if (!is_var(c.left, e.left)) return "left side must be the context variable";
      Term want = Term::up(e.left_type, c.right_type, Term::var(e.right));
      if (!alpha_eq(c.right, want)) return "right side should be " + show(want);
      return expect(c.left_type == e.left_type, "left type must be the context type");
    }
    case Rule::UL: {
      // x <= x' : A <= A'  |-  up[A => A'] x <= x' : A' <= A'
      if (auto f = arity(0)) return f;
      DynEntry e{"", "", c.left_type, c.left_type};
      if (auto f = single_entry(c.phi, e)) return f;
      Term want = Term::up(e.left_type, e.right_type, Term::var(e.left));
      if (!alpha_eq(c.left, want)) return "left side should be " + show(want);
      if (!is_var(c.right, e.right)) return "right side must be the context variable";
      return expect(c.left_type == e.right_type && c.right_type == e.right_type,
                    "types must both be the upper context type");
    }
    case Rule::DL: {
      // x' <= x' : A' <= A'  |-  dn[A' => A] x' <= x' : A <= A'
      if (auto f = arity(0)) return f;
      DynEntry e{"", "", c.left_type, c.left_type};
      if (auto f = single_entry(c.phi, e)) return f;
      if (e.left_type != e.right_type) return "context entry must relate A' to itself";
      Term want = Term::dn(e.left_type, c.left_type, Term::var(e.left));
      if (!alpha_eq(c.left, want)) return "left side should be " + show(want);
      if (!is_var(c.right, e.right)) return "right side must be the context variable";
      return expect(c.right_type == e.left_type, "right type must be the context type");
    }
    case Rule::DR: {
      // x <= x' : A <= A'  |-  x <= dn[A' => A] x' : A <= A
      if (auto f = arity(0)) return f;
      DynEntry e{"", "", c.left_type, c.left_type};
      if (auto f = single_entry(c.phi, e)) return f;
      if (!is_var(c.left, e.left)) return "left side must be the context variable";
      Term want = Term::dn(e.right_type, e.left_type, Term::var(e.right));
      if (!alpha_eq(c.right, want)) return "right side should be " + show(want);
      return expect(c.left_type == e.left_type && c.right_type == e.left_type,
                    "types must both be the lower context type");
    }
    case Rule::Retract: {
      // x : A  |-  dn[A' => A] up[A => A'] x <= x : A
      if (auto f = arity(0)) return f;
      if (!sig.retract_axiom) return "the retract axiom is disabled";
      DynEntry e{"", "", c.left_type, c.left_type};
      if (auto f = single_entry(c.phi, e)) return f;
      if (auto f = need_refl()) return f;
      if (auto f = need_same_type()) return f;
      if (!is_var(c.right, e.right)) return "right side must be the context variable";
      const Term& l = c.left;
      if (!l.is(K::Dn) || !l.body().is(K::Up) || l.to() != e.left_type ||
          l.body().from() != e.left_type || l.from() != l.body().to() ||
          !is_var(l.body().body(), e.left))
        return "left side must be dn[A' => A] (up[A => A'] x)";
      return std::nullopt;
    }
    case Rule::ErrBot: {
      // Gamma |- err[A] <= t : A
      if (auto f = arity(0)) return f;
      if (auto f = need_refl()) return f;
      if (auto f = need_same_type()) return f;
      return expect(c.left.is(K::Err), "left side must be err");
    }
    case Rule::LamMon: {
      if (auto f = arity(1)) return f;
      const Judgment& p = ps[0].conclusion;
      if (!c.left.is(K::Lam) || !c.right.is(K::Lam)) return "both sides must be lambdas";
      if (p.phi.size() != c.phi.size() + 1) return "premise must extend the context by one entry";
      if (!(DynCtx(p.phi.begin(), p.phi.end() - 1) == c.phi))
        return "premise context must extend the conclusion context";
      const DynEntry& e = p.phi.back();
      if (e.left_type != c.left.annot() || e.right_type != c.right.annot())
        return "new context entry must have the lambda annotations";
      if (!alpha_eq(close(p.left, e.left), c.left.scope())) return "left body mismatch";
      if (!alpha_eq(close(p.right, e.right), c.right.scope())) return "right body mismatch";
      if (c.left_type != Type::fn(e.left_type, p.left_type) ||
          c.right_type != Type::fn(e.right_type, p.right_type))
        return "function types disagree with the premise";
      return std::nullopt;
    }
    case Rule::AppMon: {
      if (auto f = arity(2)) return f;
      const Judgment& pf = ps[0].conclusion;
      const Judgment& pa = ps[1].conclusion;
      if (!(pf.phi == c.phi) || !(pa.phi == c.phi)) return "premise contexts must match";
      if (!c.left.is(K::App) || !c.right.is(K::App)) return "both sides must be applications";
      if (!alpha_eq(c.left.fn(), pf.left) || !alpha_eq(c.right.fn(), pf.right))
        return "function parts differ from premise 0";
      if (!alpha_eq(c.left.arg(), pa.left) || !alpha_eq(c.right.arg(), pa.right))
        return "argument parts differ from premise 1";
      return std::nullopt;
    }
    case Rule::PairMon: {
      if (auto f = arity(2)) return f;
      const Judgment& p1 = ps[0].conclusion;
      const Judgment& p2 = ps[1].conclusion;
      if (!(p1.phi == c.phi) || !(p2.phi == c.phi)) return "premise contexts must match";
      if (!c.left.is(K::Pair) || !c.right.is(K::Pair)) return "both sides must be pairs";
      if (!alpha_eq(c.left.first(), p1.left) || !alpha_eq(c.right.first(), p1.right))
        return "first components differ from premise 0";
      if (!alpha_eq(c.left.second(), p2.left) || !alpha_eq(c.right.second(), p2.right))
        return "second components differ from premise 1";
      return std::nullopt;
    }
    case Rule::ProjMon: {
      if (auto f = arity(1)) return f;
      const Judgment& p = ps[0].conclusion;
      if (!(p.phi == c.phi)) return "premise context must match";
      if (!c.left.is(K::Proj) || !c.right.is(K::Proj) ||
          c.left.proj_index() != c.right.proj_index())
        return "both sides must be the same projection";
      if (!alpha_eq(c.left.tuple(), p.left) || !alpha_eq(c.right.tuple(), p.right))
        return "projected terms differ from the premise";
      return std::nullopt;
    }
    case Rule::FnBeta: {
      if (auto f = arity(0)) return f;
      if (auto f = need_refl()) return f;
      if (auto f = need_same_type()) return f;
      const Term& redex = d.aux.dir == Direction::Ge ? c.right : c.left;
      if (!redex.is(K::App) || !redex.fn().is(K::Lam)) return "expected a beta redex";
      return oriented(redex, instantiate(redex.fn().scope(), redex.arg()));
    }
    case Rule::FnEta: {
      if (auto f = arity(0)) return f;
      if (auto f = need_refl()) return f;
      if (auto f = need_same_type()) return f;
      if (!c.left_type.is_fn()) return "eta for functions needs a function type";
      const Term& t = d.aux.dir == Direction::Ge ? c.right : c.left;
      return oriented(t, Term::lam_scope("x", c.left_type.domain(),
                                         Term::app(t, Term::bound(0))));
    }
    case Rule::ProdBeta: {
      if (auto f = arity(0)) return f;
      if (auto f = need_refl()) return f;
      if (auto f = need_same_type()) return f;
      const Term& redex = d.aux.dir == Direction::Ge ? c.right : c.left;
      if (!redex.is(K::Proj) || !redex.tuple().is(K::Pair)) return "expected a projection of a pair";
      const Term& tup = redex.tuple();
      return oriented(redex, redex.proj_index() == 1 ? tup.first() : tup.second());
    }
    case Rule::ProdEta: {
      if (auto f = arity(0)) return f;
      if (auto f = need_refl()) return f;
      if (auto f = need_same_type()) return f;
      if (!c.left_type.is_prod()) return "eta for products needs a product type";
      const Term& t = d.aux.dir == Direction::Ge ? c.right : c.left;
      return oriented(t, Term::pair(Term::proj(1, t), Term::proj(2, t)));
    }
    case Rule::UnitEta: {
      if (auto f = arity(0)) return f;
      if (auto f = need_refl()) return f;
      if (auto f = need_same_type()) return f;
      if (!c.left_type.is_unit()) return "eta for unit needs the unit type";
      const Term& t = d.aux.dir == Direction::Ge ? c.right : c.left;
      return oriented(t, Term::unit());
    }
    case Rule::Disjoint: {
      // x : G' |- dn[? => G] up[G' => ?] x <= err[G] : G, with G != G' ground
      if (auto f = arity(0)) return f;
      if (!sig.disjointness) return "the disjointness axioms are disabled";
      DynEntry e{"", "", c.left_type, c.left_type};
      if (auto f = single_entry(c.phi, e)) return f;
      if (auto f = need_refl()) return f;
      if (auto f = need_same_type()) return f;
      const Term& l = c.left;
      if (!l.is(K::Dn) || !l.from().is_dyn() || !l.body().is(K::Up) || !l.body().to().is_dyn() ||
          !is_var(l.body().body(), e.left) || l.body().from() != e.left_type)
        return "left side must be dn[? => G] (up[G' => ?] x)";
      const Type& g = l.to();
      const Type& g2 = e.left_type;
      if (!is_ground(g) || !is_ground(g2)) return "both tags must be ground types";
      if (g == g2) return "tags must be distinct";
      if (!tags_disjoint(sig, g, g2)) return "tags are related by type dynamism";
      return expect(alpha_eq(c.right, Term::err(g)), "right side must be err[G]");
    }
  }
  return "unknown rule";
}

inline void check_node(const Signature& sig, const Derivation& d, const std::string& path,
                       CheckReport& report) {
  Fail f;
  try {
    f = presupposition_error(sig, d.conclusion);
    if (f) {
      *f = "presupposition: " + *f;
    } else {
      f = check_schema(sig, d);
    }
  } catch (const Error& e) {
    f = e.what();
  }
  if (f) report.failures.push_back({path, d.rule, *f});
  for (std::size_t i = 0; i < d.premises.size(); ++i)
    check_node(sig, d.premises[i], path + "/" + std::to_string(i), report);
}

}  // namespace detail

inline CheckReport check_derivation_report(const Signature& sig, const Derivation& d) {
  CheckReport report;
  detail::check_node(sig, d, "root", report);
  return report;
}

inline bool check_derivation(const Signature& sig, const Derivation& d) {
  return check_derivation_report(sig, d).ok();
}

}  // namespace gtt
