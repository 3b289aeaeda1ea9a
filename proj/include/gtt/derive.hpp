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

// Builders for primitive derivation nodes and the derived rules built on them.
//
// Builders compute conclusions but do not check them; check_derivation is the
// only authority. Derived rules check their own side conditions and throw
// DerivationError when they do not hold.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gtt/dynamism.hpp"

namespace gtt {

class DerivationError : public Error {
 public:
  using Error::Error;
};

namespace rules {

inline Derivation node(Rule r, Judgment j, std::vector<Derivation> premises = {}, Aux aux = {}) {
  return Derivation{r, std::move(j), std::move(aux), std::move(premises)};
}

inline Derivation var(const DynCtx& phi, std::size_t i) {
  const DynEntry& e = phi.at(i);
  return node(Rule::Var,
              {phi, Term::var(e.left), Term::var(e.right), e.left_type, e.right_type});
}

// phi |- x <= x' for the entry whose left variable is x.
inline Derivation var(const DynCtx& phi, const std::string& x) {
  for (std::size_t i = 0; i < phi.size(); ++i)
    if (phi[i].left == x) return var(phi, i);
  throw DerivationError("no context entry for `" + x + "`");
}

inline Derivation refl(const Signature& sig, const Context& gamma, const Term& t) {
  Type a = infer_type(sig, gamma, t);
  return node(Rule::Refl, {refl_ctx(gamma), t, t, a, a});
}

inline Derivation trans(Derivation d1, Derivation d2) {
  const Judgment& j1 = d1.conclusion;
  const Judgment& j2 = d2.conclusion;
  if (j1.phi.size() != j2.phi.size()) throw DerivationError("trans: context lengths differ");
  DynCtx phi;
  for (std::size_t i = 0; i < j1.phi.size(); ++i)
    phi.push_back({j1.phi[i].left, j2.phi[i].right, j1.phi[i].left_type, j2.phi[i].right_type});
  Judgment c{phi, j1.left, j2.right, j1.left_type, j2.right_type};
  Aux aux;
  aux.middle = Middle{right_ctx(j1.phi), j1.right, j1.right_type};
  return node(Rule::Trans, std::move(c), {std::move(d1), std::move(d2)}, std::move(aux));
}

// Substitutes the conclusions of substs (one per entry of inner's context)
// into inner; psi is the resulting context.
inline Derivation comp(Derivation inner, std::vector<Derivation> substs, const DynCtx& psi) {
  const Judgment& j = inner.conclusion;
  if (substs.size() != j.phi.size()) throw DerivationError("comp: need one premise per entry");
  Substitution gl, gr;
  for (std::size_t i = 0; i < substs.size(); ++i) {
    gl.emplace(j.phi[i].left, substs[i].conclusion.left);
    gr.emplace(j.phi[i].right, substs[i].conclusion.right);
  }
  Judgment c{psi, substitute(j.left, gl), substitute(j.right, gr), j.left_type, j.right_type};
  std::vector<Derivation> ps;
  ps.push_back(std::move(inner));
  for (Derivation& s : substs) ps.push_back(std::move(s));
  return node(Rule::Comp, std::move(c), std::move(ps));
}

// x <= y : A <= A |- x <= up[A => A'] y : A <= A'
inline Derivation ur(const Type& a, const Type& a2, const std::string& x, const std::string& y) {
  return node(Rule::UR, {{{x, y, a, a}}, Term::var(x), Term::up(a, a2, Term::var(y)), a, a2});
}

// x <= x' : A <= A' |- up[A => A'] x <= x' : A' <= A'
inline Derivation ul(const Type& a, const Type& a2, const std::string& x, const std::string& x2) {
  return node(Rule::UL, {{{x, x2, a, a2}}, Term::up(a, a2, Term::var(x)), Term::var(x2), a2, a2});
}

// x <= x : A' <= A' |- dn[A' => A] x <= x : A <= A'
inline Derivation dl(const Type& a, const Type& a2, const std::string& x) {
  return node(Rule::DL, {{{x, x, a2, a2}}, Term::dn(a2, a, Term::var(x)), Term::var(x), a, a2});
}

// x <= x' : A <= A' |- x <= dn[A' => A] x' : A <= A
inline Derivation dr(const Type& a, const Type& a2, const std::string& x, const std::string& x2) {
  return node(Rule::DR, {{{x, x2, a, a2}}, Term::var(x), Term::dn(a2, a, Term::var(x2)), a, a});
}

// x : A |- dn[A' => A] up[A => A'] x <= x : A
inline Derivation retract(const Type& a, const Type& a2, const std::string& x) {
  return node(Rule::Retract,
              {{{x, x, a, a}}, Term::dn(a2, a, Term::up(a, a2, Term::var(x))), Term::var(x), a, a});
}

// Gamma |- err[A] <= t : A
inline Derivation err_bot(const Signature& sig, const Context& gamma, const Term& t) {
  Type a = infer_type(sig, gamma, t);
  return node(Rule::ErrBot, {refl_ctx(gamma), Term::err(a), t, a, a});
}

inline Derivation lam_mon(Derivation body) {
  const Judgment& p = body.conclusion;
  if (p.phi.empty()) throw DerivationError("lam-mon: premise context is empty");
  const DynEntry& e = p.phi.back();
  Judgment c{DynCtx(p.phi.begin(), p.phi.end() - 1),
             Term::lam(e.left, e.left_type, p.left),
             Term::lam(e.right, e.right_type, p.right),
             Type::fn(e.left_type, p.left_type),
             Type::fn(e.right_type, p.right_type)};
  return node(Rule::LamMon, std::move(c), {std::move(body)});
}

inline Derivation app_mon(Derivation f, Derivation a) {
  const Judgment& jf = f.conclusion;
  const Judgment& ja = a.conclusion;
  if (!jf.left_type.is_fn() || !jf.right_type.is_fn())
    throw DerivationError("app-mon: function premise is not at function types");
  Judgment c{jf.phi, Term::app(jf.left, ja.left), Term::app(jf.right, ja.right),
             jf.left_type.codomain(), jf.right_type.codomain()};
  return node(Rule::AppMon, std::move(c), {std::move(f), std::move(a)});
}

inline Derivation pair_mon(Derivation d1, Derivation d2) {
  const Judgment& j1 = d1.conclusion;
  const Judgment& j2 = d2.conclusion;
  Judgment c{j1.phi, Term::pair(j1.left, j2.left), Term::pair(j1.right, j2.right),
             Type::prod(j1.left_type, j2.left_type), Type::prod(j1.right_type, j2.right_type)};
  return node(Rule::PairMon, std::move(c), {std::move(d1), std::move(d2)});
}

inline Derivation proj_mon(int i, Derivation d) {
  const Judgment& j = d.conclusion;
  if (!j.left_type.is_prod() || !j.right_type.is_prod())
    throw DerivationError("proj-mon: premise is not at product types");
  Judgment c{j.phi, Term::proj(i, j.left), Term::proj(i, j.right),
             i == 1 ? j.left_type.left() : j.left_type.right(),
             i == 1 ? j.right_type.left() : j.right_type.right()};
  return node(Rule::ProjMon, std::move(c), {std::move(d)});
}

namespace detail {

inline Derivation oriented(Rule r, const Signature& sig, const Context& gamma, const Term& lo,
                           const Term& hi, Direction dir) {
  Type a = infer_type(sig, gamma, lo);
  Aux aux;
  aux.dir = dir;
  const Term& l = dir == Direction::Le ? lo : hi;
  const Term& rr = dir == Direction::Le ? hi : lo;
  return node(r, {refl_ctx(gamma), l, rr, a, a}, {}, std::move(aux));
}

}  // namespace detail

// (\x. t) u  vs  t[u/x]
inline Derivation fn_beta(const Signature& sig, const Context& gamma, const Term& redex,
                          Direction dir) {
  if (!redex.is(Term::Kind::App) || !redex.fn().is(Term::Kind::Lam))
    throw DerivationError("fn-beta: not a beta redex");
  return detail::oriented(Rule::FnBeta, sig, gamma, redex,
                          instantiate(redex.fn().scope(), redex.arg()), dir);
}

// t  vs  \x. t x
inline Derivation fn_eta(const Signature& sig, const Context& gamma, const Term& t,
                         Direction dir, const std::string& hint = "x") {
  Type a = infer_type(sig, gamma, t);
  if (!a.is_fn()) throw DerivationError("fn-eta: not a function");
  return detail::oriented(Rule::FnEta, sig, gamma, t,
                          Term::lam_scope(hint, a.domain(), Term::app(t, Term::bound(0))), dir);
}

// fst (t1, t2)  vs  t1
inline Derivation prod_beta(const Signature& sig, const Context& gamma, const Term& redex,
                            Direction dir) {
  if (!redex.is(Term::Kind::Proj) || !redex.tuple().is(Term::Kind::Pair))
    throw DerivationError("prod-beta: not a projection of a pair");
  const Term& c = redex.proj_index() == 1 ? redex.tuple().first() : redex.tuple().second();
  return detail::oriented(Rule::ProdBeta, sig, gamma, redex, c, dir);
}

// t  vs  (fst t, snd t)
inline Derivation prod_eta(const Signature& sig, const Context& gamma, const Term& t,
                           Direction dir) {
  return detail::oriented(Rule::ProdEta, sig, gamma, t,
                          Term::pair(Term::proj(1, t), Term::proj(2, t)), dir);
}

// t  vs  ()
inline Derivation unit_eta(const Signature& sig, const Context& gamma, const Term& t,
                           Direction dir) {
  return detail::oriented(Rule::UnitEta, sig, gamma, t, Term::unit(), dir);
}

inline Derivation axiom(const Signature& sig, std::size_t i) {
  const TermAxiom& ax = sig.tmdyn_axioms.at(i);
  auto phi = check_ctx_dyn(sig, ax.left_ctx, ax.right_ctx);
  if (!phi) throw DerivationError("axiom contexts are not related");
  Aux aux;
  aux.axiom = i;
  return node(Rule::Ax,
              {*phi, ax.left, ax.right, infer_type(sig, ax.left_ctx, ax.left),
               infer_type(sig, ax.right_ctx, ax.right)},
              {}, std::move(aux));
}

// x : G' |- dn[? => G] up[G' => ?] x <= err[G] : G
inline Derivation disjoint(const Type& g, const Type& g2, const std::string& x) {
  Term l = Term::dn(Type::dyn(), g, Term::up(g2, Type::dyn(), Term::var(x)));
  return node(Rule::Disjoint, {{{x, x, g2, g2}}, l, Term::err(g), g, g});
}

}  // namespace rules

// ---------------------------------------------------------------------------
// Sequent-style cast rules. Each is a one-variable lemma (a transitivity step
// between a primitive cast rule and a variable) composed with the premise.

enum class SequentRule { UR_S, UL_S, DR_S, DL_S };

namespace detail {

inline void need_dyn(const Signature& sig, const Type& a, const Type& b, const char* rule) {
  if (!check_type_dyn(sig, a, b))
    throw DerivationError(std::string(rule) + ": side condition " + to_string(a) + " <= " +
                          to_string(b) + " does not hold");
}

}  // namespace detail

// phi |- t <= t' : A <= A'   gives   phi |- t <= up[A' => A''] t' : A <= A''
inline Derivation ur_s(const Signature& sig, Derivation d, const Type& a3) {
  const Judgment& j = d.conclusion;
  const Type a = j.left_type, a2 = j.right_type;
  detail::need_dyn(sig, a2, a3, "UR_S");
  DynCtx lemma_ctx{{"x", "x'", a, a2}};
  Derivation lemma = rules::trans(rules::var(lemma_ctx, 0), rules::ur(a2, a3, "x'", "x'"));
  DynCtx psi = j.phi;
  return rules::comp(std::move(lemma), {std::move(d)}, psi);
}

// phi |- t <= t'' : A <= A''   gives   phi |- up[A => A'] t <= t'' : A' <= A''
inline Derivation ul_s(const Signature& sig, Derivation d, const Type& a2) {
  const Judgment& j = d.conclusion;
  const Type a = j.left_type, a3 = j.right_type;
  detail::need_dyn(sig, a, a2, "UL_S");
  detail::need_dyn(sig, a2, a3, "UL_S");
  Derivation lemma = rules::trans(rules::ul(a, a2, "x", "x'"),
                                  rules::var(DynCtx{{"x'", "x''", a2, a3}}, 0));
  DynCtx psi = j.phi;
  return rules::comp(std::move(lemma), {std::move(d)}, psi);
}

// phi |- t <= t'' : A <= A''   gives   phi |- t <= dn[A'' => A'] t'' : A <= A'
inline Derivation dr_s(const Signature& sig, Derivation d, const Type& a2) {
  const Judgment& j = d.conclusion;
  const Type a = j.left_type, a3 = j.right_type;
  detail::need_dyn(sig, a, a2, "DR_S");
  detail::need_dyn(sig, a2, a3, "DR_S");
  Derivation lemma = rules::trans(rules::var(DynCtx{{"x", "x'", a, a2}}, 0),
                                  rules::dr(a2, a3, "x'", "x''"));
  DynCtx psi = j.phi;
  return rules::comp(std::move(lemma), {std::move(d)}, psi);
}

// phi |- t' <= t'' : A' <= A''   gives   phi |- dn[A' => A] t' <= t'' : A <= A''
inline Derivation dl_s(const Signature& sig, Derivation d, const Type& a) {
  const Judgment& j = d.conclusion;
  const Type a2 = j.left_type, a3 = j.right_type;
  detail::need_dyn(sig, a, a2, "DL_S");
  Derivation lemma = rules::trans(rules::dl(a, a2, "x'"),
                                  rules::var(DynCtx{{"x'", "x''", a2, a3}}, 0));
  DynCtx psi = j.phi;
  return rules::comp(std::move(lemma), {std::move(d)}, psi);
}

inline Derivation derive_sequent(const Signature& sig, SequentRule rule, Derivation premise,
                                 const Type& endpoint) {
  switch (rule) {
    case SequentRule::UR_S: return ur_s(sig, std::move(premise), endpoint);
    case SequentRule::UL_S: return ul_s(sig, std::move(premise), endpoint);
    case SequentRule::DR_S: return dr_s(sig, std::move(premise), endpoint);
    case SequentRule::DL_S: return dl_s(sig, std::move(premise), endpoint);
  }
  throw DerivationError("unknown sequent rule");
}

// From  phi, x <= x' : A <= A' |- t x <= t' x' : B <= B'  derive
// phi |- t <= t' : A -> B <= A' -> B'  using eta on both sides.
inline Derivation fun_ext(const Signature& sig, Derivation d) {
  const Judgment& j = d.conclusion;
  if (j.phi.empty() || !j.left.is(Term::Kind::App) || !j.right.is(Term::Kind::App))
    throw DerivationError("fun-ext: premise must relate two applications");
  const DynEntry& e = j.phi.back();
  DynCtx phi(j.phi.begin(), j.phi.end() - 1);
  const Term& t = j.left.fn();
  const Term& t2 = j.right.fn();
  if (!(j.left.arg() == Term::var(e.left)) || !(j.right.arg() == Term::var(e.right)))
    throw DerivationError("fun-ext: premise must apply to the new variables");
  if (free_vars(t).count(e.left) || free_vars(t2).count(e.right))
    throw DerivationError("fun-ext: the functions must not mention the new variables");
  Derivation eta_l = rules::fn_eta(sig, left_ctx(phi), t, Direction::Le, e.left);
  Derivation eta_r = rules::fn_eta(sig, right_ctx(phi), t2, Direction::Ge, e.right);
  return rules::trans(rules::trans(std::move(eta_l), rules::lam_mon(std::move(d))),
                      std::move(eta_r));
}

// Oblique-cast rule on the right:
// phi |- t1 <= t2 : A1 <= A2  gives  phi |- t1 <= dn[? => B2] up[A2 => ?] t2 : A1 <= B2
inline Derivation cast_r_rule(const Signature& sig, Derivation d, const Type& b2) {
  return dr_s(sig, ur_s(sig, std::move(d), Type::dyn()), b2);
}

// Downcast monotonicity: phi |- t <= t' : A' <= A'  gives
// phi |- dn[A' => A] t <= dn[A' => A] t' : A <= A.
inline Derivation dn_mon(const Signature& sig, Derivation d, const Type& a) {
  return dr_s(sig, dl_s(sig, std::move(d), a), a);
}

}  // namespace gtt
