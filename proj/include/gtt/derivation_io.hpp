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

// Reader and writer for .gttd derivation files, an s-expression format:
//
//   (trans
//     (conclusion (ctx ("x" "x'" "Nat" "?")) (left "x") (right "up[Nat => ?] x")
//                 (types "Nat" "?"))
//     (middle (ctx ("x" "Nat")) (term "x") (type "Nat"))
//     (var ...)
//     (ur ...))
//
// The head of each derivation is a rule name. The optional aux forms are
// (middle ...) for trans, (axiom N) for ax and (dir le|ge) for beta/eta rules.
// Every other list after the conclusion is a premise. A file may hold several
// top-level derivations; `;` starts a comment.

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gtt/dynamism.hpp"
#include "gtt/parser.hpp"

namespace gtt {

struct SExpr {
  enum class Kind { Symbol, String, List };
  Kind kind = Kind::List;
  std::string text;  // symbol name or decoded string
  std::vector<SExpr> items;
  int line = 1;
  int column = 1;

  bool is_list() const { return kind == Kind::List; }
  bool is_string() const { return kind == Kind::String; }
  bool is_symbol(const std::string& s = "") const {
    return kind == Kind::Symbol && (s.empty() || text == s);
  }
  // The head symbol of a list, or "".
  std::string head() const {
    return is_list() && !items.empty() && items[0].is_symbol() ? items[0].text : "";
  }
};

namespace detail {

class SExprReader {
 public:
  SExprReader(const std::string& text, std::string file) : s_(text), file_(std::move(file)) {}

  std::vector<SExpr> read_all() {
    std::vector<SExpr> out;
    skip();
    while (i_ < s_.size()) {
      out.push_back(read());
      skip();
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line_, col_, file_); }

  void bump() {
    if (s_[i_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++i_;
  }

  void skip() {
    while (i_ < s_.size()) {
      if (s_[i_] == ';') {
        while (i_ < s_.size() && s_[i_] != '\n') bump();
      } else if (std::isspace(static_cast<unsigned char>(s_[i_]))) {
        bump();
      } else {
        break;
      }
    }
  }

  SExpr read() {
    SExpr e;
    e.line = line_;
    e.column = col_;
    char c = s_[i_];
    if (c == '(') {
      bump();
      skip();
      while (i_ < s_.size() && s_[i_] != ')') {
        e.items.push_back(read());
        skip();
      }
      if (i_ >= s_.size()) throw ParseError("unclosed '('", e.line, e.column, file_);
      bump();
      return e;
    }
    if (c == ')') fail("unexpected ')'");
    if (c == '"') {
      e.kind = SExpr::Kind::String;
      bump();
      while (i_ < s_.size() && s_[i_] != '"') {
        if (s_[i_] == '\\' && i_ + 1 < s_.size() && (s_[i_ + 1] == '"' || s_[i_ + 1] == '\\')) bump();
        e.text += s_[i_];
        bump();
      }
      if (i_ >= s_.size()) throw ParseError("unterminated string", e.line, e.column, file_);
      bump();
      return e;
    }
    e.kind = SExpr::Kind::Symbol;
    while (i_ < s_.size() && !std::isspace(static_cast<unsigned char>(s_[i_])) && s_[i_] != '(' &&
           s_[i_] != ')' && s_[i_] != '"' && s_[i_] != ';') {
      e.text += s_[i_];
      bump();
    }
    return e;
  }

  const std::string& s_;
  std::string file_;
  std::size_t i_ = 0;
  int line_ = 1;
  int col_ = 1;
};

inline std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

class DerivationReader {
 public:
  explicit DerivationReader(std::string file) : file_(std::move(file)) {}

  Derivation derivation(const SExpr& e) {
    std::string head = e.head();
    if (head.empty()) fail(e, "expected a derivation (rule ...)");
    auto rule = rule_from_name(head);
    if (!rule) fail(e.items[0], "unknown rule '" + head + "'");
    if (e.items.size() < 2 || e.items[1].head() != "conclusion")
      fail(e, "expected (conclusion ...) after the rule name");
    Derivation d{*rule, conclusion(e.items[1]), {}, {}};
    for (std::size_t i = 2; i < e.items.size(); ++i) {
      const SExpr& it = e.items[i];
      std::string h = it.head();
      if (h == "middle") {
        d.aux.middle = middle(it);
      } else if (h == "axiom") {
        if (it.items.size() != 2 || !it.items[1].is_symbol()) fail(it, "expected (axiom N)");
        try {
          d.aux.axiom = std::stoul(it.items[1].text);
        } catch (const std::exception&) {
          fail(it.items[1], "expected an axiom index");
        }
      } else if (h == "dir") {
        if (it.items.size() != 2 || !(it.items[1].is_symbol("le") || it.items[1].is_symbol("ge")))
          fail(it, "expected (dir le) or (dir ge)");
        d.aux.dir = it.items[1].text == "le" ? Direction::Le : Direction::Ge;
      } else {
        d.premises.push_back(derivation(it));
      }
    }
    return d;
  }

 private:
  [[noreturn]] void fail(const SExpr& at, const std::string& msg) const {
    throw ParseError(msg, at.line, at.column, file_);
  }

  const SExpr& string_at(const SExpr& list, std::size_t i, const char* what) const {
    if (i >= list.items.size() || !list.items[i].is_string())
      fail(list, std::string("expected a string for ") + what);
    return list.items[i];
  }

  // Embedded text is parsed with positions relative to the opening quote.
  Term term(const SExpr& s) const {
    try {
      return parse_term(s.text, s.line, s.column + 1);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), e.line(), e.column(), file_);
    }
  }
  Type type(const SExpr& s) const {
    try {
      return parse_type(s.text, s.line, s.column + 1);
    } catch (const ParseError& e) {
      throw ParseError(e.message(), e.line(), e.column(), file_);
    }
  }

  // Finds (key ...) among the items of e.
  const SExpr& field(const SExpr& e, const std::string& key) const {
    for (std::size_t i = 1; i < e.items.size(); ++i)
      if (e.items[i].head() == key) return e.items[i];
    fail(e, "missing (" + key + " ...)");
  }

  Judgment conclusion(const SExpr& e) const {
    Judgment j{{}, Term::unit(), Term::unit(), Type::unit(), Type::unit()};
    for (std::size_t i = 1; i < field(e, "ctx").items.size(); ++i) {
      const SExpr& entry = field(e, "ctx").items[i];
      if (!entry.is_list() || entry.items.size() != 4)
        fail(entry, "expected (\"x\" \"x'\" \"A\" \"A'\")");
      j.phi.push_back({string_at(entry, 0, "variable").text, string_at(entry, 1, "variable").text,
                       type(string_at(entry, 2, "type")), type(string_at(entry, 3, "type"))});
    }
    j.left = term(string_at(field(e, "left"), 1, "left"));
    j.right = term(string_at(field(e, "right"), 1, "right"));
    const SExpr& ts = field(e, "types");
    j.left_type = type(string_at(ts, 1, "left type"));
    j.right_type = type(string_at(ts, 2, "right type"));
    return j;
  }

  Middle middle(const SExpr& e) const {
    Middle m{{}, term(string_at(field(e, "term"), 1, "term")), type(string_at(field(e, "type"), 1, "type"))};
    const SExpr& ctx = field(e, "ctx");
    for (std::size_t i = 1; i < ctx.items.size(); ++i) {
      const SExpr& b = ctx.items[i];
      if (!b.is_list() || b.items.size() != 2) fail(b, "expected (\"x\" \"A\")");
      m.ctx.push_back({string_at(b, 0, "variable").text, type(string_at(b, 1, "type"))});
    }
    return m;
  }

  std::string file_;
};

inline void write(std::string& out, const Derivation& d, int indent) {
  std::string pad(indent, ' ');
  const Judgment& j = d.conclusion;
  out += pad + "(" + rule_name(d.rule) + "\n";
  out += pad + "  (conclusion (ctx";
  for (const DynEntry& e : j.phi)
    out += " (" + quote(e.left) + " " + quote(e.right) + " " + quote(to_string(e.left_type)) + " " +
           quote(to_string(e.right_type)) + ")";
  out += ")\n" + pad + "    (left " + quote(to_string(j.left)) + ") (right " +
         quote(to_string(j.right)) + ")\n" + pad + "    (types " + quote(to_string(j.left_type)) +
         " " + quote(to_string(j.right_type)) + "))";
  if (d.aux.middle) {
    const Middle& m = *d.aux.middle;
    out += "\n" + pad + "  (middle (ctx";
    for (const Binding& b : m.ctx) out += " (" + quote(b.name) + " " + quote(to_string(b.type)) + ")";
    out += ") (term " + quote(to_string(m.term)) + ") (type " + quote(to_string(m.type)) + "))";
  }
  if (d.aux.axiom) out += "\n" + pad + "  (axiom " + std::to_string(*d.aux.axiom) + ")";
  if (d.aux.dir) out += "\n" + pad + "  (dir " + (*d.aux.dir == Direction::Le ? "le" : "ge") + ")";
  for (const Derivation& p : d.premises) {
    out += "\n";
    write(out, p, indent + 2);
  }
  out += ")";
}

}  // namespace detail

inline std::vector<SExpr> read_sexprs(const std::string& text, const std::string& file = "") {
  return detail::SExprReader(text, file).read_all();
}

inline std::vector<Derivation> read_derivations(const std::string& text, const std::string& file = "") {
  std::vector<Derivation> out;
  detail::DerivationReader r(file);
  for (const SExpr& e : read_sexprs(text, file)) out.push_back(r.derivation(e));
  return out;
}

inline std::string write_derivation(const Derivation& d) {
  std::string out;
  detail::write(out, d, 0);
  return out + "\n";
}

}  // namespace gtt
