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

// The `gtt` command line front end.
//
// Term files (.gtt) hold one item per line. Besides plain terms, a line may be
//   ctx x : Nat, f : Nat -> ?            context for the following lines
//   dctx x <= y : Nat <= ?, ...          dynamism context for the following lines
//   L <= R   or   L == R                 a comparison (compare only)
// and `#` starts a comment.
//
// Exit status: 0 success, 1 negative answer, 2 usage, parse or configuration
// error.

#pragma once

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "gtt/corpus.hpp"
#include "gtt/derivation_io.hpp"
#include "gtt/elaboration.hpp"
#include "gtt/model.hpp"
#include "gtt/parser.hpp"
#include "gtt/signature_io.hpp"
#include "gtt/theorems.hpp"

namespace gtt::cli {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2 };

// An error attributed to a source location; always exit status 2.
class InputError : public Error {
 public:
  using Error::Error;
};

struct Options {
  std::string sig_file;
  std::size_t bound = 2;
  std::string retract;       // "", "on" or "off"
  std::string disjointness;  // "", "on" or "off"
  std::string out_file;
};

// One line of a term file.
struct Item {
  int line = 0;
  std::string source;
  DynCtx phi;  // current (dynamism) context
  Term left = Term::unit();
  std::optional<Term> right;
  bool equation = false;  // L == R
};

namespace detail {

inline bool flag_value(const std::string& v) { return v == "on"; }

inline Signature load(const Options& o) {
  Signature sig = o.sig_file.empty() ? Signature{} : load_signature(o.sig_file);
  if (!o.retract.empty()) sig.retract_axiom = flag_value(o.retract);
  if (!o.disjointness.empty()) sig.disjointness = flag_value(o.disjointness);
  return sig;
}

// x <= y : A <= B, ...
inline DynCtx parse_dctx(const std::string& text, int line, int col) {
  DynCtx phi;
  std::stringstream ss(text);
  std::string entry;
  while (std::getline(ss, entry, ',')) {
    auto colon = entry.find(':');
    auto names = colon == std::string::npos ? std::nullopt
                                            : split_top_level(entry.substr(0, colon), "<=");
    auto types = colon == std::string::npos ? std::nullopt
                                            : split_top_level(entry.substr(colon + 1), "<=");
    if (!names || !types) throw ParseError("expected `x <= y : A <= B`", line, col);
    std::string l = gtt::detail::trim(names->first), r = gtt::detail::trim(names->second);
    if (l.empty() || r.empty()) throw ParseError("expected variable names", line, col);
    phi.push_back({l, r, parse_type(types->first, line, col), parse_type(types->second, line, col)});
  }
  return phi;
}

inline std::vector<Item> parse_items(const std::string& text, bool comparisons) {
  std::vector<Item> items;
  DynCtx phi;
  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = gtt::detail::strip_comment(raw);
    std::string body = gtt::detail::trim(line);
    if (body.empty()) continue;
    int col = gtt::detail::indent_col(line);
    if (body.rfind("ctx ", 0) == 0) {
      phi = refl_ctx(parse_context(body.substr(4), lineno, col + 4));
      continue;
    }
    if (body.rfind("dctx ", 0) == 0) {
      phi = parse_dctx(body.substr(5), lineno, col + 5);
      continue;
    }
    Item it;
    it.line = lineno;
    it.source = body;
    it.phi = phi;
    std::optional<std::pair<std::string, std::string>> parts;
    if (comparisons) {
      parts = split_top_level(body, "==");
      if (parts) {
        it.equation = true;
      } else {
        parts = split_top_level(body, "<=");
      }
      if (!parts) throw ParseError("expected `L <= R` or `L == R`", lineno, col);
      it.left = parse_term(parts->first, lineno, col);
      it.right = parse_term(parts->second, lineno,
                            col + static_cast<int>(parts->first.size()) + 2);
    } else {
      it.left = parse_term(body, lineno, col);
    }
    items.push_back(std::move(it));
  }
  return items;
}

inline std::string located(const std::string& file, int line, const std::string& msg) {
  return (file.empty() ? "<input>" : file) + ":" + std::to_string(line) + ": " + msg;
}

// Values of function type are shown as their table over the enumeration.
inline std::string show_value(Model& m, const Type& a, const Value& v) {
  if (a.is_fn()) {
    std::string s = "{";
    bool first = true;
    for (const Value& x : m.values(a.domain())) {
      s += (first ? "" : "; ") + show_value(m, a.domain(), x) + " -> " +
           show_value(m, a.codomain(), v(x));
      first = false;
    }
    return s + "}";
  }
  if (a.is_prod())
    return "(" + show_value(m, a.left(), v.first()) + ", " + show_value(m, a.right(), v.second()) + ")";
  return to_string(v);
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out, std::ostream& err) : o_(o), out_(out), err_(err) {}

  // Reads the named file, or joins the -e expressions into one item per line.
  std::string input(const std::string& file, const std::vector<std::string>& exprs,
                    const char* joiner) {
    if (!exprs.empty()) {
      std::string s;
      for (std::size_t i = 0; i < exprs.size(); ++i) s += (i ? joiner : "") + exprs[i];
      return s + "\n";
    }
    if (file.empty()) throw CLI::ValidationError("input", "give a FILE or -e EXPR");
    file_ = file;
    return read_file(file);
  }

  int check(const std::string& file, const std::vector<std::string>& exprs) {
    Signature sig = detail::load(o_);
    int status = kOk;
    for (const Item& it : parse_items(input(file, exprs, "\n"), false)) {
      try {
        out_ << to_string(infer_type(sig, left_ctx(it.phi), it.left)) << "\n";
      } catch (const TypeError& e) {
        err_ << located(file_, it.line, std::string("type error: ") + e.what()) << "\n";
        status = kNegative;
      }
    }
    return status;
  }

  int dyncheck(const std::vector<std::string>& args) {
    Signature sig = detail::load(o_);
    std::vector<std::pair<std::string, int>> lines;
    if (args.size() == 2) {
      lines.emplace_back(args[0] + " <= " + args[1], 1);
    } else if (args.size() == 1) {
      file_ = args[0];
      std::istringstream in(read_file(args[0]));
      std::string raw;
      int n = 0;
      while (std::getline(in, raw)) {
        ++n;
        std::string body = gtt::detail::trim(gtt::detail::strip_comment(raw));
        if (!body.empty()) lines.emplace_back(body, n);
      }
    } else {
      throw CLI::ValidationError("dyncheck", "expects `A B` or a file of `A <= B` lines");
    }
    int status = kOk;
    for (const auto& [text, n] : lines) {
      auto parts = split_top_level(text, "<=");
      if (!parts) throw ParseError("expected `A <= B`", n, 1, file_);
      Type a = parse_type(parts->first, n, 1), b = parse_type(parts->second, n, 1);
      for (const Type& t : {a, b})
        if (!check_type_wf(sig, t))
          throw InputError(located(file_, n, "type " + to_string(t) + " is not well-formed"));
      bool ok = check_type_dyn(sig, a, b);
      out_ << "RESULT " << to_string(a) << " <= " << to_string(b) << ": "
           << (ok ? "derivable" : "not derivable") << "\n";
      if (!ok) status = kNegative;
    }
    return status;
  }

  int prove(const std::string& file) {
    Signature sig = detail::load(o_);
    std::vector<Derivation> ds = read_derivations(read_file(file), file);
    if (ds.empty()) throw InputError(file + ": no derivations");
    int status = kOk;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      CheckReport r = check_derivation_report(sig, ds[i]);
      out_ << "RESULT derivation " << i << " " << (r.ok() ? "accepted" : "rejected") << ": "
           << to_string(ds[i].conclusion) << "\n";
      if (!r.ok()) {
        std::istringstream lines(r.format());
        std::string l;
        while (std::getline(lines, l)) out_ << "  " << l << "\n";
        status = kNegative;
      }
    }
    return status;
  }

  int derive(const std::string& name, const std::vector<std::string>& type_args) {
    Signature sig = detail::load(o_);
    std::vector<Type> params;
    for (std::size_t i = 0; i < type_args.size(); ++i)
      params.push_back(parse_type(type_args[i], 1, 1));
    TheoremInstance inst;
    try {
      inst = derive_theorem(sig, name, params);
    } catch (const FlagError& e) {
      out_ << "SKIPPED(flag) " << e.what() << "\n";
      return kNegative;
    } catch (const HypothesisError& e) {
      err_ << "hypothesis violated: " << e.what() << "\n";
      return kNegative;
    } catch (const DerivationError& e) {
      throw InputError(e.what());
    }
    std::string text;
    std::size_t n = 0;
    int status = kOk;
    for (const TheoremClaim& c : inst.claims)
      for (std::size_t i = 0; i < c.proofs.size(); ++i) {
        text += "; " + c.label + (i == 0 ? " (<=)" : " (>=)") + "\n";
        text += write_derivation(c.proofs[i]);
        ++n;
        for (const std::string& p : verify_proof(inst, c, i)) {
          err_ << p << "\n";
          status = kNegative;
        }
      }
    std::string summary = "RESULT " + name + " " + format_params(params) + ": " +
                          std::to_string(n) + " derivations " +
                          (status == kOk ? "accepted" : "rejected");
    if (!o_.out_file.empty()) {
      write_out(text);
      out_ << summary << "\n";
    } else {
      out_ << text << "; " << summary << "\n";
    }
    return status;
  }

  int elaborate_cmd(const std::string& file, const std::vector<std::string>& exprs, bool normal) {
    Signature sig = detail::load(o_);
    int status = kOk;
    std::string text;
    for (const Item& it : parse_items(input(file, exprs, "\n"), false)) {
      Context gamma = left_ctx(it.phi);
      try {
        Term e = elaborate(sig, gamma, it.left);
        text += to_string(normal ? normalize(sig, gamma, e) : e) + "\n";
      } catch (const TypeError& e) {
        err_ << located(file_, it.line, std::string("type error: ") + e.what()) << "\n";
        status = kNegative;
      }
    }
    emit(text);
    return status;
  }

  int eval_cmd(const std::string& file, const std::vector<std::string>& exprs) {
    Signature sig = detail::load(o_);
    Model m(sig, o_.bound);
    int status = kOk;
    std::string text;
    for (const Item& it : parse_items(input(file, exprs, "\n"), false)) {
      if (!it.phi.empty())
        throw InputError(located(file_, it.line, "eval needs a closed term (no ctx)"));
      try {
        Type a = infer_type(sig, {}, it.left);
        text += show_value(m, a, m.eval({}, it.left)) + " : " + to_string(a) + "\n";
      } catch (const TypeError& e) {
        err_ << located(file_, it.line, std::string("type error: ") + e.what()) << "\n";
        status = kNegative;
      } catch (const ModelError& e) {
        throw InputError(located(file_, it.line, e.what()));
      }
    }
    emit(text);
    return status;
  }

  int compare(const std::string& file, const std::vector<std::string>& exprs, bool semantic) {
    Signature sig = detail::load(o_);
    Model m(sig, o_.bound);
    int status = kOk;
    std::string joiner = semantic ? " <= " : " == ";
    if (!exprs.empty() && exprs.size() != 2)
      throw CLI::ValidationError("compare", "-e must be given exactly twice");
    for (const Item& it : parse_items(input(file, exprs, joiner.c_str()), true)) {
      std::string where = located(file_, it.line, "");
      Context gl = left_ctx(it.phi), gr = right_ctx(it.phi);
      try {
        if (!semantic) {
          if (!is_refl_ctx(it.phi))
            throw InputError(where + "syntactic comparison needs a ctx, not a dctx");
          bool eq = equal_terms(sig, gl, it.left, *it.right);
          out_ << "RESULT " << (eq ? "equal" : "different") << ": " << it.source << "\n";
          if (!eq) status = kNegative;
          continue;
        }
        Judgment j{it.phi, it.left, *it.right, infer_type(sig, gl, it.left),
                   infer_type(sig, gr, *it.right)};
        if (auto e = presupposition_error(sig, j)) {
          err_ << where << *e << "\n";
          status = kNegative;
          continue;
        }
        std::vector<Judgment> js{j};
        if (it.equation) js.push_back(converse(j));
        bool ok = true;
        for (const Judgment& q : js) {
          if (auto why = m.judgment_denotable(q)) throw InputError(where + *why);
          SemanticReport r = m.check_judgment(q);
          if (!r.ok()) {
            out_ << "COUNTEREXAMPLE " << to_string(q.left) << " <= " << to_string(q.right)
                 << " at " << *r.counterexample << "\n";
            ok = false;
          }
        }
        out_ << "RESULT " << (ok ? "PASS" : "FAIL") << ": " << it.source
             << (ok ? " (no counterexample within bound " + std::to_string(o_.bound) + ")" : "")
             << "\n";
        if (!ok) status = kNegative;
      } catch (const TypeError& e) {
        err_ << where << "type error: " << e.what() << "\n";
        status = kNegative;
      }
    }
    return status;
  }

  int test_model() {
    Signature sig = detail::load(o_);
    Model m(sig, o_.bound);
    int status = kOk;
    // The tree order is a partial order at depth 3.
    std::vector<Tree> ts = enumerate_trees(3, {0, 1}, false);
    std::size_t bad = 0;
    for (const Tree& a : ts) {
      if (!tree_leq(a, a)) ++bad;
      for (const Tree& b : ts) {
        bool ab = tree_leq(a, b);
        if (ab && tree_leq(b, a) && a != b) ++bad;
        if (!ab) continue;
        for (const Tree& c : ts)
          if (tree_leq(b, c) && !tree_leq(a, c)) ++bad;
      }
    }
    out_ << "RESULT tree-order " << (bad ? "FAIL" : "PASS") << " trees=" << ts.size() << "\n";
    if (bad) status = kNegative;
    std::vector<Type> types;
    for (const Type& t : enumerate_types(sig, 3))
      if (!mentions_fn(t) && m.denotable(t)) types.push_back(t);
    std::size_t pairs = 0, failed = 0;
    for (const Type& a : types)
      for (const Type& b : types) {
        if (!check_type_dyn(sig, a, b)) continue;
        ++pairs;
        EquipmentReport r = m.check_equipment(a, b);
        if (!r.ok()) {
          ++failed;
          for (const std::string& c : r.counterexamples)
            out_ << "COUNTEREXAMPLE " << to_string(a) << " <= " << to_string(b) << ": " << c << "\n";
        }
      }
    out_ << "RESULT equipment " << (failed ? "FAIL" : "PASS") << " pairs=" << pairs
         << " failed=" << failed << " (no counterexample within bound " << o_.bound << ")\n";
    if (failed) status = kNegative;
    return status;
  }

  int test_theorems(std::size_t size) {
    Signature sig = detail::load(o_);
    CorpusOptions opts;
    opts.type_size = size;
    opts.bound = o_.bound;
    CorpusReport r = run_corpus(sig, opts);
    emit(r.format());
    return r.ok() ? kOk : kNegative;
  }

 private:
  void write_out(const std::string& text) {
    std::ofstream f(o_.out_file, std::ios::binary);
    if (!f) throw ConfigError("cannot write `" + o_.out_file + "`");
    f << text;
  }
  void emit(const std::string& text) {
    if (o_.out_file.empty())
      out_ << text;
    else
      write_out(text);
  }

  const Options& o_;
  std::ostream& out_;
  std::ostream& err_;
  std::string file_;
};

}  // namespace detail

// Runs the command line given by args (without the program name).
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Gradual type theory kernel: type, dynamism and derivation checking, cast "
               "elaboration, and a finite tree model."};
  app.name("gtt");
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--sig", o.sig_file, "Signature file (.gttsig); default: Nat only");
  app.add_option("--bound", o.bound, "Enumeration bound for the model")
      ->capture_default_str()
      ->check(CLI::Range(1, 64));
  app.add_option("--retract", o.retract, "Override the retract axiom")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--disjointness", o.disjointness, "Override the disjointness axioms")
      ->check(CLI::IsMember({"on", "off"}));
  app.add_option("--out", o.out_file, "Write the main output to this file");

  std::string file;
  std::vector<std::string> exprs, rest;
  std::string name;
  std::size_t size = 3;
  bool syntactic = false, semantic = false;

  auto term_input = [&](CLI::App* sub) {
    sub->add_option("file", file, "Term file (.gtt)");
    sub->add_option("-e,--expr", exprs, "Inline term instead of a file");
  };
  CLI::App* check = app.add_subcommand("check", "Infer the type of each term");
  term_input(check);
  CLI::App* dyncheck = app.add_subcommand("dyncheck", "Decide type dynamism A <= B");
  dyncheck->add_option("args", rest, "A B, or a file of `A <= B` lines")->required();
  CLI::App* prove = app.add_subcommand("prove", "Check derivations in a .gttd file");
  prove->add_option("file", file, "Derivation file")->required();
  CLI::App* derive = app.add_subcommand("derive", "Build and check a named theorem's derivations");
  std::string names;
  for (const TheoremSpec& s : theorem_registry()) names += (names.empty() ? "" : ", ") + s.name;
  derive->add_option("name", name, "Theorem: " + names)->required();
  derive->add_option("types", rest, "Type parameters");
  CLI::App* elab = app.add_subcommand("elaborate", "Rewrite casts into ground casts");
  term_input(elab);
  CLI::App* norm = app.add_subcommand("normalize", "Elaborate, then normalize");
  term_input(norm);
  CLI::App* eval = app.add_subcommand("eval", "Evaluate closed terms in the tree model");
  term_input(eval);
  CLI::App* compare = app.add_subcommand("compare", "Compare term pairs");
  term_input(compare);
  compare->add_flag("--syntactic", syntactic, "Equal normal forms");
  compare->add_flag("--semantic", semantic, "Ordering in the tree model");
  CLI::App* test_model = app.add_subcommand("test-model", "Check tree order and equipment laws");
  CLI::App* test_theorems = app.add_subcommand("test-theorems", "Run the theorem corpus");
  test_theorems->add_option("--size", size, "Largest type size")->capture_default_str();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n" << "run `gtt --help` for usage\n";
    return kUsage;
  }

  detail::Runner r(o, out, err);
  try {
    if (*check) return r.check(file, exprs);
    if (*dyncheck) return r.dyncheck(rest);
    if (*prove) return r.prove(file);
    if (*derive) return r.derive(name, rest);
    if (*elab) return r.elaborate_cmd(file, exprs, false);
    if (*norm) return r.elaborate_cmd(file, exprs, true);
    if (*eval) return r.eval_cmd(file, exprs);
    if (*compare) {
      if (syntactic == semantic) {
        err << "usage error: compare needs exactly one of --syntactic, --semantic\n";
        return kUsage;
      }
      return r.compare(file, exprs, semantic);
    }
    if (*test_model) return r.test_model();
    if (*test_theorems) return r.test_theorems(size);
  } catch (const CLI::ValidationError& e) {
    err << "usage error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigError& e) {
    err << "configuration error: " << e.what() << "\n";
    return kUsage;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const TypeError& e) {
    err << "type error: " << e.what() << "\n";
    return kNegative;
  } catch (const ModelError& e) {
    err << "model error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace gtt::cli
