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

// Derivation constructors for the standard theorems about casts.
//
// Each theorem is instantiated at concrete types and yields one or more
// claims. An equi-dynamism claim carries two proofs: proofs[0] concludes the
// statement and proofs[1] its converse.

#pragma once

#include <algorithm>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "gtt/derive.hpp"

namespace gtt {

// The theorem needs an axiom the signature has switched off.
class FlagError : public DerivationError {
 public:
  using DerivationError::DerivationError;
};

// Parameters violate the theorem's hypotheses.
class HypothesisError : public DerivationError {
 public:
  using DerivationError::DerivationError;
};

struct TheoremClaim {
  std::string label;
  Judgment statement;
  bool equidynamic = false;
  std::vector<Derivation> proofs;
};

struct TheoremInstance {
  std::string name;
  std::vector<Type> params;
  Signature signature;  // the signature the proofs are checked against
  std::vector<TheoremClaim> claims;
};

struct TheoremSpec {
  std::string name;
  std::vector<std::string> param_names;
  bool requires_retract = false;
  // Both sides of every claim have equal normal forms.
  bool reduction = false;
  // Empty when the parameters satisfy the hypotheses, otherwise the reason.
  std::function<std::optional<std::string>(const Signature&, const std::vector<Type>&)> hypothesis;
  std::function<TheoremInstance(const Signature&, const std::vector<Type>&)> build;
};

namespace thm {

using Params = std::vector<Type>;
using Hyp = std::optional<std::string>;

inline Term v(const std::string& x) { return Term::var(x); }

inline Hyp need(const Signature& sig, std::initializer_list<std::pair<Type, Type>> rels) {
  for (const auto& [a, b] : rels)
    if (!check_type_dyn(sig, a, b)) return to_string(a) + " <= " + to_string(b) + " does not hold";
  return std::nullopt;
}

inline Judgment judgment(DynCtx phi, Term l, Term r, Type a, Type b) {
  return {std::move(phi), std::move(l), std::move(r), std::move(a), std::move(b)};
}

inline TheoremClaim equi(std::string label, Judgment j, Derivation le, Derivation ge) {
  TheoremClaim c{std::move(label), std::move(j), true, {}};
  c.proofs.push_back(std::move(le));
  c.proofs.push_back(std::move(ge));
  return c;
}

inline TheoremClaim ineq(std::string label, Judgment j, Derivation d) {
  TheoremClaim c{std::move(label), std::move(j), false, {}};
  c.proofs.push_back(std::move(d));
  return c;
}

inline TheoremInstance instance(const std::string& name, const Signature& sig, const Params& ps,
                                std::vector<TheoremClaim> claims) {
  return {name, ps, sig, std::move(claims)};
}

// --- identity and decomposition -------------------------------------------

inline TheoremInstance identity_up(const Signature& sig, const Params& p) {
  const Type& a = p[0];
  Judgment j = judgment({{"x", "x", a, a}}, Term::up(a, a, v("x")), v("x"), a, a);
  return instance("identity_up", sig, p,
                  {equi("up", j, rules::ul(a, a, "x", "x"), rules::ur(a, a, "x", "x"))});
}

inline TheoremInstance identity_dn(const Signature& sig, const Params& p) {
  const Type& a = p[0];
  Judgment j = judgment({{"x", "x", a, a}}, Term::dn(a, a, v("x")), v("x"), a, a);
  return instance("identity_dn", sig, p,
                  {equi("dn", j, rules::dl(a, a, "x"), rules::dr(a, a, "x", "x"))});
}

inline TheoremInstance decompose_up(const Signature& sig, const Params& p) {
  const Type &a = p[0], &a2 = p[1], &a3 = p[2];
  Term lhs = Term::up(a, a3, v("x"));
  Term rhs = Term::up(a2, a3, Term::up(a, a2, v("x")));
  Judgment j = judgment({{"x", "x", a, a}}, lhs, rhs, a3, a3);
  Derivation le = ul_s(sig, ur_s(sig, rules::ur(a, a2, "x", "x"), a3), a3);
  Derivation ge = ul_s(sig, ul_s(sig, rules::ur(a, a3, "x", "x"), a2), a3);
  return instance("decompose_up", sig, p, {equi("up", j, std::move(le), std::move(ge))});
}

inline TheoremInstance decompose_dn(const Signature& sig, const Params& p) {
  const Type &a = p[0], &a2 = p[1], &a3 = p[2];
  Term lhs = Term::dn(a3, a, v("y"));
  Term rhs = Term::dn(a2, a, Term::dn(a3, a2, v("y")));
  Judgment j = judgment({{"y", "y", a3, a3}}, lhs, rhs, a, a);
  Derivation le = dr_s(sig, dr_s(sig, rules::dl(a, a3, "y"), a2), a);
  Derivation ge = dr_s(sig, dl_s(sig, rules::dl(a2, a3, "y"), a), a);
  return instance("decompose_dn", sig, p, {equi("dn", j, std::move(le), std::move(ge))});
}

// --- casts at connectives --------------------------------------------------

inline TheoremInstance fn_cast_up(const Signature& sig, const Params& p) {
  const Type &s = p[0], &t = p[1];
  Type a = s.domain(), b = s.codomain(), a2 = t.domain(), b2 = t.codomain();
  Term rhs = Term::lam("x'", a2, Term::up(b, b2, Term::app(v("f"), Term::dn(a2, a, v("x'")))));
  Judgment j = judgment({{"f", "f", s, s}}, Term::up(s, t, v("f")), rhs, t, t);
  Context gamma{{"f", s}};

  DynCtx phi_le{{"f", "f", s, s}, {"x", "x'", a, a2}};
  Derivation body_le =
      ur_s(sig, rules::app_mon(rules::var(phi_le, 0), dr_s(sig, rules::var(phi_le, 1), a)), b2);
  Derivation le = ul_s(sig,
                       rules::trans(rules::fn_eta(sig, gamma, v("f"), Direction::Le, "x"),
                                    rules::lam_mon(std::move(body_le))),
                       t);

  DynCtx phi_ge{{"f", "f", s, s}, {"x'", "x''", a2, a2}};
  Derivation body_ge = ul_s(
      sig,
      rules::app_mon(ur_s(sig, rules::var(phi_ge, 0), t), dl_s(sig, rules::var(phi_ge, 1), a)),
      b2);
  Derivation ge = rules::trans(rules::lam_mon(std::move(body_ge)),
                               rules::fn_eta(sig, gamma, Term::up(s, t, v("f")), Direction::Ge,
                                             "x''"));
  return instance("fn_cast_up", sig, p, {equi("up", j, std::move(le), std::move(ge))});
}

inline TheoremInstance fn_cast_dn(const Signature& sig, const Params& p) {
  const Type &s = p[0], &t = p[1];
  Type a = s.domain(), b = s.codomain(), a2 = t.domain(), b2 = t.codomain();
  Term rhs = Term::lam("x", a, Term::dn(b2, b, Term::app(v("f"), Term::up(a, a2, v("x")))));
  Judgment j = judgment({{"f", "f", t, t}}, Term::dn(t, s, v("f")), rhs, s, s);
  Context gamma{{"f", t}};

  DynCtx phi_le{{"f", "f", t, t}, {"x", "x'", a, a}};
  Derivation body_le = dr_s(sig,
                            rules::app_mon(dl_s(sig, rules::var(phi_le, 0), s),
                                           ur_s(sig, rules::var(phi_le, 1), a2)),
                            b);
  Derivation le = rules::trans(
      rules::fn_eta(sig, gamma, Term::dn(t, s, v("f")), Direction::Le, "x"),
      rules::lam_mon(std::move(body_le)));

  DynCtx phi_ge{{"f", "f", t, t}, {"x", "x'", a, a2}};
  Derivation body_ge = dl_s(
      sig, rules::app_mon(rules::var(phi_ge, 0), ul_s(sig, rules::var(phi_ge, 1), a2)), b);
  Derivation ge = dr_s(sig,
                       rules::trans(rules::lam_mon(std::move(body_ge)),
                                    rules::fn_eta(sig, gamma, v("f"), Direction::Ge, "x'")),
                       s);
  return instance("fn_cast_dn", sig, p, {equi("dn", j, std::move(le), std::move(ge))});
}

inline TheoremInstance prod_cast_up(const Signature& sig, const Params& p) {
  const Type &s = p[0], &t = p[1];
  Type a1 = s.left(), a2 = s.right(), b1 = t.left(), b2 = t.right();
  Term pv = v("p");
  Term rhs = Term::pair(Term::up(a1, b1, Term::proj(1, pv)), Term::up(a2, b2, Term::proj(2, pv)));
  Judgment j = judgment({{"p", "p", s, s}}, Term::up(s, t, pv), rhs, t, t);
  Context gamma{{"p", s}};
  DynCtx phi{{"p", "p", s, s}};

  Derivation le = ul_s(
      sig,
      rules::trans(rules::prod_eta(sig, gamma, pv, Direction::Le),
                   rules::pair_mon(ur_s(sig, rules::refl(sig, gamma, Term::proj(1, pv)), b1),
                                   ur_s(sig, rules::refl(sig, gamma, Term::proj(2, pv)), b2))),
      t);
  auto comp_i = [&](int i, const Type& bi) {
    return ul_s(sig, rules::proj_mon(i, ur_s(sig, rules::var(phi, 0), t)), bi);
  };
  Derivation ge =
      rules::trans(rules::pair_mon(comp_i(1, b1), comp_i(2, b2)),
                   rules::prod_eta(sig, gamma, Term::up(s, t, pv), Direction::Ge));
  return instance("prod_cast_up", sig, p, {equi("up", j, std::move(le), std::move(ge))});
}

inline TheoremInstance prod_cast_dn(const Signature& sig, const Params& p) {
  const Type &s = p[0], &t = p[1];
  Type a1 = s.left(), a2 = s.right(), b1 = t.left(), b2 = t.right();
  Term pv = v("p");
  Term rhs = Term::pair(Term::dn(b1, a1, Term::proj(1, pv)), Term::dn(b2, a2, Term::proj(2, pv)));
  Judgment j = judgment({{"p", "p", t, t}}, Term::dn(t, s, pv), rhs, s, s);
  Context gamma{{"p", t}};
  DynCtx phi{{"p", "p", t, t}};

  auto comp_le = [&](int i, const Type& ai) {
    return dr_s(sig, rules::proj_mon(i, dl_s(sig, rules::var(phi, 0), s)), ai);
  };
  Derivation le = rules::trans(rules::prod_eta(sig, gamma, Term::dn(t, s, pv), Direction::Le),
                               rules::pair_mon(comp_le(1, a1), comp_le(2, a2)));
  Derivation ge = dr_s(
      sig,
      rules::trans(rules::pair_mon(dl_s(sig, rules::refl(sig, gamma, Term::proj(1, pv)), a1),
                                   dl_s(sig, rules::refl(sig, gamma, Term::proj(2, pv)), a2)),
                   rules::prod_eta(sig, gamma, pv, Direction::Ge)),
      s);
  return instance("prod_cast_dn", sig, p, {equi("dn", j, std::move(le), std::move(ge))});
}

inline TheoremInstance fun_ext_thm(const Signature& sig, const Params& p) {
  const Type &s = p[0], &t = p[1];
  DynCtx phi{{"f", "f'", s, t}, {"x", "x'", s.domain(), t.domain()}};
  Derivation premise = rules::app_mon(rules::var(phi, 0), rules::var(phi, 1));
  Judgment j = judgment({phi[0]}, v("f"), v("f'"), s, t);
  return instance("fun_ext", sig, p, {ineq("ext", j, fun_ext(sig, std::move(premise)))});
}

// --- errors ------------------------------------------------------------------

inline TheoremInstance strict_up(const Signature& sig, const Params& p) {
  const Type &a = p[0], &a2 = p[1];
  Judgment j = judgment({}, Term::up(a, a2, Term::err(a)), Term::err(a2), a2, a2);
  Derivation le = ul_s(
      sig,
      rules::trans(rules::err_bot(sig, {}, Term::dn(a2, a, Term::err(a2))),
                   dl_s(sig, rules::refl(sig, {}, Term::err(a2)), a)),
      a2);
  Derivation ge = rules::err_bot(sig, {}, j.left);
  return instance("strict_up", sig, p, {equi("up", j, std::move(le), std::move(ge))});
}

inline TheoremInstance strict_dn(const Signature& sig, const Params& p) {
  const Type &a = p[0], &a2 = p[1];
  Judgment j = judgment({}, Term::dn(a2, a, Term::err(a2)), Term::err(a), a, a);
  Derivation step = dr_s(
      sig, dl_s(sig, rules::err_bot(sig, {}, Term::up(a, a2, Term::err(a))), a), a);
  Derivation retract = rules::comp(rules::retract(a, a2, "x"),
                                   {rules::refl(sig, {}, Term::err(a))}, {});
  Derivation le = rules::trans(std::move(step), std::move(retract));
  Derivation ge = rules::err_bot(sig, {}, j.left);
  return instance("strict_dn", sig, p, {equi("dn", j, std::move(le), std::move(ge))});
}

inline TheoremInstance err_elim(const Signature& sig, const Params& p) {
  const Type& s = p[0];
  std::vector<TheoremClaim> claims;
  if (s.is_fn()) {
    Type a = s.domain(), b = s.codomain();
    Context gamma{{"y", a}};
    Term lhs = Term::app(Term::err(s), v("y"));
    Judgment j = judgment(refl_ctx(gamma), lhs, Term::err(b), b, b);
    Term lam = Term::lam("x", a, Term::err(b));
    Derivation le = rules::trans(
        rules::app_mon(rules::err_bot(sig, gamma, lam), rules::refl(sig, gamma, v("y"))),
        rules::fn_beta(sig, gamma, Term::app(lam, v("y")), Direction::Le));
    claims.push_back(equi("app", j, std::move(le), rules::err_bot(sig, gamma, lhs)));
  } else {
    Term pair = Term::pair(Term::err(s.left()), Term::err(s.right()));
    for (int i = 1; i <= 2; ++i) {
      Type ai = i == 1 ? s.left() : s.right();
      Term lhs = Term::proj(i, Term::err(s));
      Judgment j = judgment({}, lhs, Term::err(ai), ai, ai);
      Derivation le =
          rules::trans(rules::proj_mon(i, rules::err_bot(sig, {}, pair)),
                       rules::prod_beta(sig, {}, Term::proj(i, pair), Direction::Le));
      claims.push_back(
          equi(i == 1 ? "fst" : "snd", j, std::move(le), rules::err_bot(sig, {}, lhs)));
    }
  }
  return instance("err_elim", sig, p, std::move(claims));
}

// --- universal properties ----------------------------------------------------

// An arbitrary function symbol up' satisfying the upcast rules coincides with
// the upcast.
inline TheoremInstance uniqueness(const Signature& base, const Params& p) {
  const Type &a = p[0], &a2 = p[1];
  Signature sig = base;
  std::string f = "up'";
  while (sig.fn_symbols.count(f)) f += "'";
  sig.fn_symbols.emplace(f, FnSymbol{{a}, a2});
  Term fx = Term::fn_app(f, {v("x")});
  std::size_t ur_ax = sig.tmdyn_axioms.size();
  sig.tmdyn_axioms.push_back({{{"x", a}}, v("x"), {{"x", a}}, fx});
  std::size_t ul_ax = sig.tmdyn_axioms.size();
  sig.tmdyn_axioms.push_back({{{"x", a}}, fx, {{"x'", a2}}, v("x'")});

  Judgment j = judgment({{"x", "x", a, a}}, Term::up(a, a2, v("x")), fx, a2, a2);
  Derivation le = ul_s(sig, rules::axiom(sig, ur_ax), a2);
  Derivation ge = rules::comp(rules::axiom(sig, ul_ax), {rules::ur(a, a2, "x", "x")},
                              {{"x", "x", a, a}});
  return instance("uniqueness", sig, p, {equi("up", j, std::move(le), std::move(ge))});
}

inline TheoremInstance galois_unit(const Signature& sig, const Params& p) {
  const Type &a = p[0], &a2 = p[1];
  Judgment j = judgment({{"x", "x", a, a}}, v("x"), Term::dn(a2, a, Term::up(a, a2, v("x"))), a, a);
  return instance("galois_unit", sig, p,
                  {ineq("unit", j, dr_s(sig, rules::ur(a, a2, "x", "x"), a))});
}

inline TheoremInstance galois_counit(const Signature& sig, const Params& p) {
  const Type &a = p[0], &a2 = p[1];
  Judgment j =
      judgment({{"y", "y", a2, a2}}, Term::up(a, a2, Term::dn(a2, a, v("y"))), v("y"), a2, a2);
  return instance("galois_counit", sig, p,
                  {ineq("counit", j, ul_s(sig, rules::dl(a, a2, "y"), a2))});
}

inline TheoremInstance cast_congruence(const Signature& sig, const Params& p) {
  const Type &a = p[0], &a2 = p[1], &b = p[2], &b2 = p[3];
  DynCtx lo{{"x", "y", a, b}};
  Judgment ju = judgment(lo, Term::up(a, a2, v("x")), Term::up(b, b2, v("y")), a2, b2);
  DynCtx hi{{"x", "y", a2, b2}};
  Judgment jd = judgment(hi, Term::dn(a2, a, v("x")), Term::dn(b2, b, v("y")), a, b);
  return instance(
      "cast_congruence", sig, p,
      {ineq("up", ju, ul_s(sig, ur_s(sig, rules::var(lo, 0), b2), a2)),
       ineq("dn", jd, dr_s(sig, dl_s(sig, rules::var(hi, 0), a), b))});
}

// Casts between equi-dynamic types are mutually inverse.
inline TheoremInstance equidyn_iso(const Signature& sig, const Params& p) {
  const Type &a = p[0], &b = p[1];
  std::vector<TheoremClaim> claims;
  auto refl = [&](const std::string& x, const Type& t) {
    return rules::refl(sig, {{x, t}}, v(x));
  };
  auto one = [&](const std::string& label, const Type& a, const Type& b) {
    Judgment j = judgment({{"x", "x", a, a}}, Term::up(b, a, Term::up(a, b, v("x"))), v("x"), a, a);
    claims.push_back(equi(label, j, ul_s(sig, ul_s(sig, refl("x", a), b), a),
                          ur_s(sig, ur_s(sig, refl("x", a), b), a)));
  };
  auto two = [&](const std::string& label, const Type& a, const Type& b) {
    Judgment j = judgment({{"x", "x", a, a}}, Term::dn(b, a, Term::dn(a, b, v("x"))), v("x"), a, a);
    claims.push_back(equi(label, j, dl_s(sig, dl_s(sig, refl("x", a), b), a),
                          dr_s(sig, dr_s(sig, refl("x", a), b), a)));
  };
  auto three = [&](const std::string& label, const Type& a, const Type& b) {
    Judgment j = judgment({{"x", "x", a, a}}, Term::dn(b, a, Term::up(a, b, v("x"))), v("x"), a, a);
    claims.push_back(equi(label, j, dl_s(sig, ul_s(sig, refl("x", a), b), a),
                          dr_s(sig, ur_s(sig, refl("x", a), b), a)));
  };
  auto four = [&](const std::string& label, const Type& a, const Type& b) {
    // y : B |- up[B => A] y == dn[B => A] y : A
    Judgment j = judgment({{"y", "y", b, b}}, Term::up(b, a, v("y")), Term::dn(b, a, v("y")), a, a);
    claims.push_back(equi(label, j, dr_s(sig, ul_s(sig, refl("y", b), a), a),
                          ur_s(sig, dl_s(sig, refl("y", b), a), a)));
  };
  one("iso_1", a, b);
  one("iso_1'", b, a);
  two("iso_2", a, b);
  two("iso_2'", b, a);
  three("iso_3", a, b);
  three("iso_3'", b, a);
  four("iso_4", a, b);
  four("iso_4'", b, a);
  return instance("equidyn_iso", sig, p, std::move(claims));
}

// --- oblique casts -------------------------------------------------------------

inline TheoremInstance cast_r(const Signature& sig, const Params& p) {
  const Type &a1 = p[0], &a2 = p[1], &b2 = p[2];
  DynCtx phi{{"x", "y", a1, a2}};
  Term rhs = Term::dn(Type::dyn(), b2, Term::up(a2, Type::dyn(), v("y")));
  Judgment j = judgment(phi, v("x"), rhs, a1, b2);
  return instance("cast_r", sig, p, {ineq("r", j, cast_r_rule(sig, rules::var(phi, 0), b2))});
}

// x : A |- dn[? => B] up[A => ?] x <= dn[C => B] up[A => C] x : B, for A, B <= C.
inline Derivation oblique_through(const Signature& sig, const Type& a, const Type& b,
                                  const Type& c) {
  const Type dyn = Type::dyn();
  Context gamma{{"x", a}};
  DynCtx phi = refl_ctx(gamma);
  Term up_ac = Term::up(a, c, v("x"));
  Term up_c = Term::up(c, dyn, up_ac);

  // up[A => ?] x <= up[C => ?] up[A => C] x
  Derivation d1 = ul_s(sig, ur_s(sig, rules::ur(a, c, "x", "x"), dyn), dyn);
  Derivation s1 = dn_mon(sig, std::move(d1), b);

  Derivation split = dr_s(sig, dr_s(sig, rules::dl(b, dyn, "z"), c), b);
  Derivation s2 = rules::comp(std::move(split), {rules::refl(sig, gamma, up_c)}, phi);

  Derivation ret = rules::comp(rules::retract(c, dyn, "w"), {rules::refl(sig, gamma, up_ac)}, phi);
  Derivation s3 = dn_mon(sig, std::move(ret), b);
  return rules::trans(std::move(s1), rules::trans(std::move(s2), std::move(s3)));
}

inline TheoremInstance cast_l(const Signature& sig, const Params& p) {
  const Type &a1 = p[0], &b1 = p[1], &a2 = p[2];
  DynCtx phi{{"x", "y", a1, a2}};
  Term lhs = Term::dn(Type::dyn(), b1, Term::up(a1, Type::dyn(), v("x")));
  Judgment j = judgment(phi, lhs, v("y"), b1, a2);
  Derivation d = rules::trans(oblique_through(sig, a1, b1, a2),
                              dl_s(sig, ul_s(sig, rules::var(phi, 0), a2), b1));
  return instance("cast_l", sig, p, {ineq("l", j, std::move(d))});
}

}  // namespace thm

inline const std::vector<TheoremSpec>& theorem_registry() {
  using thm::need;
  using P = thm::Params;
  static const std::vector<TheoremSpec> specs = [] {
    const Type d = Type::dyn();
    std::vector<TheoremSpec> s;
    auto always = [](const Signature&, const P&) -> thm::Hyp { return std::nullopt; };
    auto chain2 = [](const Signature& sig, const P& p) { return need(sig, {{p[0], p[1]}}); };
    auto chain3 = [](const Signature& sig, const P& p) {
      return need(sig, {{p[0], p[1]}, {p[1], p[2]}});
    };
    auto fn_pair = [](const Signature& sig, const P& p) -> thm::Hyp {
      if (!p[0].is_fn() || !p[1].is_fn()) return "both parameters must be function types";
      return need(sig, {{p[0], p[1]}});
    };
    auto prod_pair = [](const Signature& sig, const P& p) -> thm::Hyp {
      if (!p[0].is_prod() || !p[1].is_prod()) return "both parameters must be product types";
      return need(sig, {{p[0], p[1]}});
    };
    s.push_back({"identity_up", {"A"}, false, true, always, thm::identity_up});
    s.push_back({"identity_dn", {"A"}, false, true, always, thm::identity_dn});
    s.push_back({"decompose_up", {"A", "A'", "A''"}, false, true, chain3, thm::decompose_up});
    s.push_back({"decompose_dn", {"A", "A'", "A''"}, false, true, chain3, thm::decompose_dn});
    s.push_back({"fn_cast_up", {"A->B", "A'->B'"}, false, true, fn_pair, thm::fn_cast_up});
    s.push_back({"fn_cast_dn", {"A->B", "A'->B'"}, false, true, fn_pair, thm::fn_cast_dn});
    s.push_back({"prod_cast_up", {"A1*A2", "A1'*A2'"}, false, true, prod_pair, thm::prod_cast_up});
    s.push_back({"prod_cast_dn", {"A1*A2", "A1'*A2'"}, false, true, prod_pair, thm::prod_cast_dn});
    s.push_back({"fun_ext", {"A->B", "A'->B'"}, false, false, fn_pair, thm::fun_ext_thm});
    s.push_back({"strict_up", {"A", "A'"}, false, true, chain2, thm::strict_up});
    s.push_back({"strict_dn", {"A", "A'"}, true, true, chain2, thm::strict_dn});
    s.push_back({"err_elim", {"S"}, false, true,
                 [](const Signature&, const P& p) -> thm::Hyp {
                   if (!p[0].is_fn() && !p[0].is_prod())
                     return "parameter must be a function or product type";
                   return std::nullopt;
                 },
                 thm::err_elim});
    s.push_back({"uniqueness", {"A", "A'"}, false, false, chain2, thm::uniqueness});
    s.push_back({"galois_unit", {"A", "A'"}, false, false, chain2, thm::galois_unit});
    s.push_back({"galois_counit", {"A", "A'"}, false, false, chain2, thm::galois_counit});
    s.push_back({"cast_congruence", {"A", "A'", "B", "B'"}, false, false,
                 [](const Signature& sig, const P& p) {
                   return need(sig, {{p[0], p[1]}, {p[2], p[3]}, {p[0], p[2]}, {p[1], p[3]}});
                 },
                 thm::cast_congruence});
    s.push_back({"equidyn_iso", {"A", "B"}, false, false,
                 [](const Signature& sig, const P& p) {
                   return need(sig, {{p[0], p[1]}, {p[1], p[0]}});
                 },
                 thm::equidyn_iso});
    s.push_back({"cast_r", {"A1", "A2", "B2"}, false, false,
                 [d](const Signature& sig, const P& p) {
                   return need(sig, {{p[0], p[1]}, {p[0], p[2]}, {p[1], d}, {p[2], d}});
                 },
                 thm::cast_r});
    s.push_back({"cast_l", {"A1", "B1", "A2"}, true, false,
                 [d](const Signature& sig, const P& p) {
                   return need(sig, {{p[0], p[2]}, {p[1], p[2]}, {p[0], d}, {p[1], d}, {p[2], d}});
                 },
                 thm::cast_l});
    return s;
  }();
  return specs;
}

inline const TheoremSpec* find_theorem(const std::string& name) {
  for (const TheoremSpec& s : theorem_registry())
    if (s.name == name) return &s;
  return nullptr;
}

// Builds the derivations of a named theorem at the given types. Throws
// DerivationError for an unknown name or wrong arity, HypothesisError when the
// hypotheses fail, FlagError when a required axiom is disabled.
inline TheoremInstance derive_theorem(const Signature& sig, const std::string& name,
                                      const std::vector<Type>& params) {
  const TheoremSpec* spec = find_theorem(name);
  if (!spec) throw DerivationError("unknown theorem `" + name + "`");
  if (params.size() != spec->param_names.size())
    throw DerivationError(name + " takes " + std::to_string(spec->param_names.size()) +
                          " type parameters, got " + std::to_string(params.size()));
  for (const Type& t : params)
    if (!check_type_wf(sig, t)) throw HypothesisError("type " + to_string(t) + " is not well-formed");
  if (auto why = spec->hypothesis(sig, params)) throw HypothesisError(name + ": " + *why);
  if (spec->requires_retract && !sig.retract_axiom)
    throw FlagError(name + " needs the retract axiom, which is disabled");
  return spec->build(sig, params);
}

// Checks proof i of claim c: it must pass the checker and conclude the
// statement (or its converse for proofs[1]). Returns the problems found.
inline std::vector<std::string> verify_proof(const TheoremInstance& inst, const TheoremClaim& c,
                                             std::size_t i) {
  std::vector<std::string> problems;
  const Derivation& d = c.proofs.at(i);
  Judgment want = i == 0 ? c.statement : converse(c.statement);
  std::string where = c.label + (i == 0 ? " (<=)" : " (>=)");
  if (d.conclusion != want)
    problems.push_back(where + ": proves " + to_string(d.conclusion) + ", expected " +
                       to_string(want));
  CheckReport r = check_derivation_report(inst.signature, d);
  if (!r.ok()) problems.push_back(where + ": rejected\n" + r.format());
  return problems;
}

inline std::vector<std::string> verify_instance(const TheoremInstance& inst) {
  std::vector<std::string> problems;
  for (const TheoremClaim& c : inst.claims)
    for (std::size_t i = 0; i < c.proofs.size(); ++i)
      for (std::string& p : verify_proof(inst, c, i)) problems.push_back(std::move(p));
  return problems;
}

}  // namespace gtt
