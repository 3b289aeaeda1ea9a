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

// Signatures, type inference, and the type/context dynamism relations.

#pragma once

#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gtt/syntax.hpp"

namespace gtt {

class TypeError : public Error {
 public:
  using Error::Error;
};

// Malformed or unsupported signature.
class ConfigError : public Error {
 public:
  using Error::Error;
};

struct FnSymbol {
  std::vector<Type> inputs;
  Type output;
};

// Term dynamism axiom  left_ctx |- left <= right_ctx |- right.
struct TermAxiom {
  Context left_ctx;
  Term left;
  Context right_ctx;
  Term right;
};

// Half-open range of leaf codes interpreting a base type in the tree model.
struct CodeRange {
  std::uint64_t lo;
  std::uint64_t hi;
  std::uint64_t size() const { return hi - lo; }
};

enum class TyDynMode {
  Decide,  // complete procedure; type dynamism axioms must relate base types
  Search,  // bounded derivation search; allows composite axioms, may miss deep chains
};

using TypePredicate = std::function<bool(const Type&)>;

inline bool mentions_fn(const Type& t) {
  if (t.is_fn()) return true;
  if (t.is_prod()) return mentions_fn(t.left()) || mentions_fn(t.right());
  return false;
}

// Restriction admitting only types without function constructors below ?.
inline TypePredicate first_order_only() {
  return [](const Type& t) { return !mentions_fn(t); };
}

struct Signature {
  bool nat_builtin = true;
  std::set<std::string> base_types;
  std::vector<std::pair<Type, Type>> tydyn_axioms;
  std::map<std::string, FnSymbol> fn_symbols;
  std::vector<TermAxiom> tmdyn_axioms;
  bool retract_axiom = true;
  bool disjointness = true;
  // Empty means every type sits below ?.
  TypePredicate dyn_top_restriction;
  TyDynMode tydyn_mode = TyDynMode::Decide;
  std::size_t search_depth = 8;
  std::map<std::string, CodeRange> base_codes;

  // Base types Nat (with numerals), no axioms, both flags on.
  static Signature standard() { return Signature{}; }

  bool has_base(const std::string& name) const {
    return (nat_builtin && name == kNatName) || base_types.count(name) > 0;
  }
  bool dyn_top_allows(const Type& t) const {
    return !dyn_top_restriction || dyn_top_restriction(t);
  }
  bool composite_axioms() const {
    for (const auto& [a, b] : tydyn_axioms)
      if (!a.is_base() || !b.is_base()) return true;
    return false;
  }
};

inline bool check_type_wf(const Signature& sig, const Type& a) {
  switch (a.kind()) {
    case Type::Kind::Base:
      return sig.has_base(a.name());
    case Type::Kind::Fn:
      return check_type_wf(sig, a.domain()) && check_type_wf(sig, a.codomain());
    case Type::Kind::Prod:
      return check_type_wf(sig, a.left()) && check_type_wf(sig, a.right());
    default:
      return true;
  }
}

inline bool check_context_wf(const Signature& sig, const Context& gamma) {
  std::set<std::string> seen;
  for (const Binding& b : gamma) {
    if (!seen.insert(b.name).second) return false;
    if (!check_type_wf(sig, b.type)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Type dynamism.

namespace detail {

// Reflexive-transitive closure of the base axioms, queried by BFS.
inline bool base_reachable(const Signature& sig, const std::string& from, const std::string& to) {
  if (from == to) return true;
  std::set<std::string> seen{from};
  std::deque<std::string> queue{from};
  while (!queue.empty()) {
    std::string cur = queue.front();
    queue.pop_front();
    for (const auto& [a, b] : sig.tydyn_axioms) {
      if (a.name() != cur || !seen.insert(b.name()).second) continue;
      if (b.name() == to) return true;
      queue.push_back(b.name());
    }
  }
  return false;
}

inline bool tydyn_decide(const Signature& sig, const Type& a, const Type& b) {
  if (a == b) return true;
  if (b.is_dyn()) return sig.dyn_top_allows(a);
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Type::Kind::Base:
      return base_reachable(sig, a.name(), b.name());
    case Type::Kind::Fn:
      return tydyn_decide(sig, a.domain(), b.domain()) &&
             tydyn_decide(sig, a.codomain(), b.codomain());
    case Type::Kind::Prod:
      return tydyn_decide(sig, a.left(), b.left()) && tydyn_decide(sig, a.right(), b.right());
    default:
      return false;
  }
}

// Every derivation is a chain of congruence steps, ?Top, and axioms; we split
// the chain at its first axiom. Depth bounds the number of splits.
inline bool tydyn_search(const Signature& sig, const Type& a, const Type& b, std::size_t depth) {
  if (a == b) return true;
  if (b.is_dyn() && sig.dyn_top_allows(a)) return true;
  if (depth == 0) return false;
  if (a.kind() == b.kind()) {
    if (a.is_fn() && tydyn_search(sig, a.domain(), b.domain(), depth - 1) &&
        tydyn_search(sig, a.codomain(), b.codomain(), depth - 1))
      return true;
    if (a.is_prod() && tydyn_search(sig, a.left(), b.left(), depth - 1) &&
        tydyn_search(sig, a.right(), b.right(), depth - 1))
      return true;
  }
  for (const auto& [c, d] : sig.tydyn_axioms)
    if (tydyn_search(sig, a, c, depth - 1) && tydyn_search(sig, d, b, depth - 1)) return true;
  return false;
}

}  // namespace detail

// Decides A <= A'. Under the default mode the answer is complete when the
// dyn-top restriction is downward closed.
inline bool check_type_dyn(const Signature& sig, const Type& a, const Type& b) {
  if (sig.tydyn_mode == TyDynMode::Search) return detail::tydyn_search(sig, a, b, sig.search_depth);
  if (sig.composite_axioms())
    throw ConfigError(
        "type dynamism axioms between non-base types are not supported by the decision "
        "procedure; set `tydyn_mode = search` to use bounded derivation search");
  return detail::tydyn_decide(sig, a, b);
}

struct DynEntry {
  std::string left;
  std::string right;
  Type left_type;
  Type right_type;
  friend bool operator==(const DynEntry& x, const DynEntry& y) {
    return x.left == y.left && x.right == y.right && x.left_type == y.left_type &&
           x.right_type == y.right_type;
  }
};
using DynCtx = std::vector<DynEntry>;

// Distinct ground tags neither of which sits below the other. Related base
// tags share tree codes in the model, so disjointness cannot apply to them.
inline bool tags_disjoint(const Signature& sig, const Type& g, const Type& g2) {
  return g != g2 && !check_type_dyn(sig, g, g2) && !check_type_dyn(sig, g2, g);
}

inline Context left_ctx(const DynCtx& phi) {
  Context out;
  for (const DynEntry& e : phi) out.push_back({e.left, e.left_type});
  return out;
}
inline Context right_ctx(const DynCtx& phi) {
  Context out;
  for (const DynEntry& e : phi) out.push_back({e.right, e.right_type});
  return out;
}

// Reflexive dynamism context  Gamma <= Gamma.
inline DynCtx refl_ctx(const Context& gamma) {
  DynCtx out;
  for (const Binding& b : gamma) out.push_back({b.name, b.name, b.type, b.type});
  return out;
}

inline bool is_refl_ctx(const DynCtx& phi) {
  for (const DynEntry& e : phi)
    if (e.left != e.right || e.left_type != e.right_type) return false;
  return true;
}

inline std::optional<DynCtx> check_ctx_dyn(const Signature& sig, const Context& gamma,
                                           const Context& gamma2) {
  if (gamma.size() != gamma2.size()) return std::nullopt;
  DynCtx out;
  for (std::size_t i = 0; i < gamma.size(); ++i) {
    if (!check_type_dyn(sig, gamma[i].type, gamma2[i].type)) return std::nullopt;
    out.push_back({gamma[i].name, gamma2[i].name, gamma[i].type, gamma2[i].type});
  }
  return out;
}

// Empty when phi is a valid dynamism context, otherwise the reason.
inline std::optional<std::string> dyn_ctx_error(const Signature& sig, const DynCtx& phi) {
  if (!check_context_wf(sig, left_ctx(phi))) return "left context is not well-formed";
  if (!check_context_wf(sig, right_ctx(phi))) return "right context is not well-formed";
  for (const DynEntry& e : phi)
    if (!check_type_dyn(sig, e.left_type, e.right_type))
      return "context entry " + e.left + " <= " + e.right + " : " + to_string(e.left_type) +
             " <= " + to_string(e.right_type) + " has underivable type dynamism";
  return std::nullopt;
}

inline std::string to_string(const DynCtx& phi) {
  std::string out;
  for (std::size_t i = 0; i < phi.size(); ++i) {
    if (i) out += ", ";
    out += phi[i].left + " <= " + phi[i].right + " : " + to_string(phi[i].left_type) + " <= " +
           to_string(phi[i].right_type);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Type inference.

namespace detail {

inline Type infer(const Signature& sig, Context& gamma, const Term& t);

inline std::string quote(const Term& t) { return "`" + to_string(t) + "`"; }

inline Type infer(const Signature& sig, Context& gamma, const Term& t) {
  using K = Term::Kind;
  switch (t.kind()) {
    case K::Var: {
      const Type* a = lookup(gamma, t.name());
      if (!a) throw TypeError("unbound variable `" + t.name() + "`");
      return *a;
    }
    case K::Bound:
      throw TypeError("dangling bound variable in " + quote(t));
    case K::FnApp: {
      if (t.is_numeral()) {
        if (!sig.nat_builtin) throw TypeError("numeral " + quote(t) + " requires the built-in Nat");
        return Type::nat();
      }
      auto it = sig.fn_symbols.find(t.name());
      if (it == sig.fn_symbols.end()) throw TypeError("unknown function symbol in " + quote(t));
      const FnSymbol& f = it->second;
      if (f.inputs.size() != t.args().size())
        throw TypeError("arity mismatch in " + quote(t) + ": expected " +
                        std::to_string(f.inputs.size()) + " arguments, got " +
                        std::to_string(t.args().size()));
      for (std::size_t i = 0; i < f.inputs.size(); ++i) {
        Type got = infer(sig, gamma, t.args()[i]);
        if (got != f.inputs[i])
          throw TypeError("argument " + std::to_string(i + 1) + " of " + quote(t) +
                          " has type " + to_string(got) + ", expected " + to_string(f.inputs[i]));
      }
      return f.output;
    }
    case K::Lam: {
      if (!check_type_wf(sig, t.annot()))
        throw TypeError("ill-formed annotation " + to_string(t.annot()) + " in " + quote(t));
      std::set<std::string> avoid = names_of(gamma);
      std::string x = fresh_name(t.name(), avoid);
      gamma.push_back({x, t.annot()});
      Type b = infer(sig, gamma, open_lam(t, x));
      gamma.pop_back();
      return Type::fn(t.annot(), b);
    }
    case K::App: {
      Type f = infer(sig, gamma, t.fn());
      if (!f.is_fn())
        throw TypeError("applying a non-function of type " + to_string(f) + " in " + quote(t));
      Type a = infer(sig, gamma, t.arg());
      if (a != f.domain())
        throw TypeError("argument of " + quote(t) + " has type " + to_string(a) + ", expected " +
                        to_string(f.domain()));
      return f.codomain();
    }
    case K::Pair:
      return Type::prod(infer(sig, gamma, t.first()), infer(sig, gamma, t.second()));
    case K::Proj: {
      Type p = infer(sig, gamma, t.tuple());
      if (!p.is_prod())
        throw TypeError("projecting from a non-product of type " + to_string(p) + " in " +
                        quote(t));
      return t.proj_index() == 1 ? p.left() : p.right();
    }
    case K::UnitVal:
      return Type::unit();
    case K::Up:
    case K::Dn: {
      for (const Type* e : {&t.from(), &t.to()})
        if (!check_type_wf(sig, *e))
          throw TypeError("ill-formed cast endpoint " + to_string(*e) + " in " + quote(t));
      const Type& lo = t.is(K::Up) ? t.from() : t.to();
      const Type& hi = t.is(K::Up) ? t.to() : t.from();
      if (!check_type_dyn(sig, lo, hi))
        throw TypeError("cast endpoints " + to_string(lo) + " <= " + to_string(hi) +
                        " are not in the dynamism relation in " + quote(t));
      Type b = infer(sig, gamma, t.body());
      if (b != t.from())
        throw TypeError("cast body of " + quote(t) + " has type " + to_string(b) +
                        ", expected " + to_string(t.from()));
      return t.to();
    }
    case K::Err:
      if (!check_type_wf(sig, t.err_type()))
        throw TypeError("ill-formed type in " + quote(t));
      return t.err_type();
  }
  throw TypeError("unreachable");
}

}  // namespace detail

inline Type infer_type(const Signature& sig, const Context& gamma, const Term& t) {
  if (!check_context_wf(sig, gamma)) throw TypeError("context is not well-formed: " + to_string(gamma));
  Context scratch = gamma;
  return detail::infer(sig, scratch, t);
}

inline std::optional<Type> try_infer_type(const Signature& sig, const Context& gamma,
                                          const Term& t) {
  try {
    return infer_type(sig, gamma, t);
  } catch (const TypeError&) {
    return std::nullopt;
  }
}

// Checks the signature invariants; throws ConfigError.
inline void validate_signature(const Signature& sig) {
  for (const auto& [a, b] : sig.tydyn_axioms)
    if (!check_type_wf(sig, a) || !check_type_wf(sig, b))
      throw ConfigError("type dynamism axiom " + to_string(a) + " <= " + to_string(b) +
                        " mentions an undeclared base type");
  for (const auto& [name, f] : sig.fn_symbols) {
    for (const Type& a : f.inputs)
      if (!check_type_wf(sig, a))
        throw ConfigError("function symbol `" + name + "` has ill-formed input " + to_string(a));
    if (!check_type_wf(sig, f.output))
      throw ConfigError("function symbol `" + name + "` has ill-formed output " +
                        to_string(f.output));
  }
  for (std::size_t i = 0; i < sig.tmdyn_axioms.size(); ++i) {
    const TermAxiom& ax = sig.tmdyn_axioms[i];
    std::string where = "term dynamism axiom " + std::to_string(i) + ": ";
    try {
      Type a = infer_type(sig, ax.left_ctx, ax.left);
      Type b = infer_type(sig, ax.right_ctx, ax.right);
      if (!check_ctx_dyn(sig, ax.left_ctx, ax.right_ctx))
        throw ConfigError(where + "contexts are not related by dynamism");
      if (!check_type_dyn(sig, a, b))
        throw ConfigError(where + "types " + to_string(a) + " <= " + to_string(b) +
                          " are not related by dynamism");
    } catch (const TypeError& e) {
      throw ConfigError(where + e.what());
    }
  }
  for (const auto& [name, range] : sig.base_codes) {
    if (!sig.base_types.count(name))
      throw ConfigError("code range for undeclared base type `" + name + "`");
    if (range.hi <= range.lo) throw ConfigError("empty code range for `" + name + "`");
  }
}

}  // namespace gtt
