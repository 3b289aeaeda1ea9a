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

// Runs every theorem at every type tuple within a size bound: builds the
// derivations, checks them, and cross-checks reduction theorems against the
// normalizer and first-order instances against the model.

#pragma once

#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gtt/elaboration.hpp"
#include "gtt/model.hpp"
#include "gtt/theorems.hpp"

namespace gtt {

// All well-formed types of size at most max_size, smallest first.
inline std::vector<Type> enumerate_types(const Signature& sig, std::size_t max_size) {
  std::vector<std::vector<Type>> by_size(max_size + 1);
  if (max_size == 0) return {};
  if (sig.nat_builtin) by_size[1].push_back(Type::nat());
  for (const std::string& b : sig.base_types) by_size[1].push_back(Type::base(b));
  by_size[1].push_back(Type::dyn());
  by_size[1].push_back(Type::unit());
  for (std::size_t n = 3; n <= max_size; n += 2)
    for (std::size_t l = 1; l + 1 < n; l += 2)
      for (const Type& a : by_size[l])
        for (const Type& b : by_size[n - 1 - l]) {
          by_size[n].push_back(Type::fn(a, b));
          by_size[n].push_back(Type::prod(a, b));
        }
  std::vector<Type> out;
  for (const auto& v : by_size) out.insert(out.end(), v.begin(), v.end());
  return out;
}

// Every parameter tuple for spec that passes its hypotheses, in
// lexicographic order of the enumeration.
inline std::vector<std::vector<Type>> enumerate_instances(const Signature& sig, const TheoremSpec& spec,
                                                          const std::vector<Type>& types) {
  std::vector<std::vector<Type>> out;
  std::size_t n = spec.param_names.size();
  if (types.empty()) return out;
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    std::vector<Type> ps;
    for (std::size_t i : idx) ps.push_back(types[i]);
    if (!spec.hypothesis(sig, ps)) out.push_back(std::move(ps));
    std::size_t k = n;
    while (k > 0 && ++idx[k - 1] == types.size()) idx[--k] = 0;
    if (k == 0) break;
  }
  return out;
}

struct CorpusOptions {
  std::size_t type_size = 3;
  std::size_t bound = 2;
  bool reductions = true;
  bool semantics = true;
  std::set<std::string> only;  // empty means every theorem
};

struct CorpusEntry {
  enum class Status { Pass, Fail, SkippedFlag };
  std::string theorem;
  std::vector<Type> params;
  Status status = Status::Pass;
  std::vector<std::string> problems;
};

struct CorpusReport {
  std::vector<CorpusEntry> entries;
  std::size_t instances = 0;
  std::size_t derivations = 0;
  std::size_t derivations_ok = 0;
  std::size_t reductions = 0;
  std::size_t reductions_ok = 0;
  std::size_t semantic = 0;
  std::size_t semantic_ok = 0;
  std::size_t semantic_skipped = 0;
  std::size_t skipped_flag = 0;
  std::size_t failures = 0;

  bool ok() const { return failures == 0; }

  // Line-oriented: one SKIPPED or FAIL line per affected instance, then a
  // RESULT summary.
  std::string format() const {
    std::ostringstream out;
    for (const CorpusEntry& e : entries) {
      if (e.status == CorpusEntry::Status::Pass) continue;
      std::string head = e.theorem;
      for (const Type& t : e.params) head += " " + to_string(t);
      if (e.status == CorpusEntry::Status::SkippedFlag) {
        out << "SKIPPED(flag) " << head << "\n";
      } else {
        for (const std::string& p : e.problems) out << "FAIL " << head << ": " << p << "\n";
      }
    }
    out << "RESULT " << (ok() ? "PASS" : "FAIL") << " instances=" << instances
        << " derivations=" << derivations_ok << "/" << derivations << " reductions=" << reductions_ok
        << "/" << reductions << " semantic=" << semantic_ok << "/" << semantic
        << " semantic_not_denotable=" << semantic_skipped << " skipped_flag=" << skipped_flag
        << " failures=" << failures << "\n";
    return out.str();
  }
};

inline std::string format_params(const std::vector<Type>& ps) {
  std::string s;
  for (const Type& t : ps) s += (s.empty() ? "" : ", ") + to_string(t);
  return s;
}

inline CorpusReport run_corpus(const Signature& sig, const CorpusOptions& opts = {}) {
  CorpusReport rep;
  std::vector<Type> types = enumerate_types(sig, opts.type_size);
  Model model(sig, opts.bound);
  for (const TheoremSpec& spec : theorem_registry()) {
    if (!opts.only.empty() && !opts.only.count(spec.name)) continue;
    for (std::vector<Type>& ps : enumerate_instances(sig, spec, types)) {
      ++rep.instances;
      CorpusEntry e{spec.name, ps};
      if (spec.requires_retract && !sig.retract_axiom) {
        e.status = CorpusEntry::Status::SkippedFlag;
        ++rep.skipped_flag;
        rep.entries.push_back(std::move(e));
        continue;
      }
      try {
        TheoremInstance inst = derive_theorem(sig, spec.name, ps);
        for (const TheoremClaim& c : inst.claims)
          for (std::size_t i = 0; i < c.proofs.size(); ++i) {
            ++rep.derivations;
            std::vector<std::string> found = verify_proof(inst, c, i);
            if (found.empty()) ++rep.derivations_ok;
            e.problems.insert(e.problems.end(), found.begin(), found.end());
          }
        for (const TheoremClaim& c : inst.claims) {
          if (opts.reductions && spec.reduction && c.equidynamic) {
            ++rep.reductions;
            Context gamma = left_ctx(c.statement.phi);
            if (equal_terms(inst.signature, gamma, c.statement.left, c.statement.right))
              ++rep.reductions_ok;
            else
              e.problems.push_back(c.label + ": sides have different normal forms");
          }
          if (opts.semantics) {
            std::vector<Judgment> js{c.statement};
            if (c.equidynamic) js.push_back(converse(c.statement));
            for (const Judgment& j : js) {
              if (model.judgment_denotable(j)) {
                ++rep.semantic_skipped;
                continue;
              }
              ++rep.semantic;
              SemanticReport s = model.check_judgment(j);
              if (s.ok())
                ++rep.semantic_ok;
              else
                e.problems.push_back(c.label + ": model counterexample " + *s.counterexample);
            }
          }
        }
      } catch (const Error& ex) {
        e.problems.push_back(ex.what());
      }
      if (!e.problems.empty()) {
        e.status = CorpusEntry::Status::Fail;
        ++rep.failures;
      }
      rep.entries.push_back(std::move(e));
    }
  }
  return rep;
}

}  // namespace gtt
