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

// Text grammar shared by every front end.
//
//   type  ::= prod ('->' type)?
//   prod  ::= tatom ('*' tatom)*
//   tatom ::= 'Nat' | '?' | '1' | X | '(' type ')'
//
//   term  ::= '\' x ':' type '.' term | app
//   app   ::= pre pre*
//   pre   ::= ('fst' | 'snd' | 'up[' type '=>' type ']' | 'dn[' type '=>' type ']') pre | atom
//   atom  ::= x | f(term, ...) | n | '()' | '(' term ')' | '(' term ',' term ')' | 'err[' type ']'
//
// A symbol call is an identifier immediately followed by '(' with no space;
// `f (x)` is application of the variable f.

#pragma once

#include <cctype>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "gtt/syntax.hpp"

namespace gtt {

class ParseError : public Error {
 public:
  ParseError(const std::string& msg, int line, int column, const std::string& file = "")
      : Error((file.empty() ? "" : file + ":") + std::to_string(line) + ":" +
              std::to_string(column) + ": " + msg),
        message_(msg),
        line_(line),
        column_(column) {}
  // The message without the location prefix.
  const std::string& message() const noexcept { return message_; }
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  std::string message_;
  int line_;
  int column_;
};

enum class Tok {
  Ident, Number, Backslash, Colon, Dot, LParen, RParen, Comma, LBracket, RBracket,
  Arrow, FatArrow, Star, Question, Le, EqEq, Turnstile, Equals, End
};

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
  std::size_t begin;
  std::size_t end;
};

inline bool is_ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_';
}
inline bool is_ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\'';
}

// Tokenizes text; positions are reported relative to (line, column).
inline std::vector<Token> tokenize(std::string_view text, int line = 1, int column = 1) {
  std::vector<Token> out;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (text[i] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
      ++i;
    }
  };
  while (i < text.size()) {
    char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Token tok{Tok::End, "", line, column, i, i};
    auto two = text.substr(i, 2);
    if (is_ident_start(c)) {
      std::size_t j = i;
      while (j < text.size() && is_ident_char(text[j])) ++j;
      tok.kind = Tok::Ident;
      tok.text = std::string(text.substr(i, j - i));
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
      tok.kind = Tok::Number;
      tok.text = std::string(text.substr(i, j - i));
    } else if (two == "->") {
      tok = {Tok::Arrow, "->", line, column, i, i};
    } else if (two == "=>") {
      tok = {Tok::FatArrow, "=>", line, column, i, i};
    } else if (two == "<=") {
      tok = {Tok::Le, "<=", line, column, i, i};
    } else if (two == "==") {
      tok = {Tok::EqEq, "==", line, column, i, i};
    } else if (two == "|-") {
      tok = {Tok::Turnstile, "|-", line, column, i, i};
    } else {
      static const std::string singles = "\\:.(),[]*?=";
      static const Tok kinds[] = {Tok::Backslash, Tok::Colon,    Tok::Dot,      Tok::LParen,
                                  Tok::RParen,    Tok::Comma,    Tok::LBracket, Tok::RBracket,
                                  Tok::Star,      Tok::Question, Tok::Equals};
      auto pos = singles.find(c);
      if (pos == std::string::npos)
        throw ParseError(std::string("unexpected character '") + c + "'", line, column);
      tok = {kinds[pos], std::string(1, c), line, column, i, i};
    }
    std::size_t len = tok.kind == Tok::Ident || tok.kind == Tok::Number ? tok.text.size()
                      : (tok.kind == Tok::Arrow || tok.kind == Tok::FatArrow ||
                         tok.kind == Tok::Le || tok.kind == Tok::EqEq || tok.kind == Tok::Turnstile)
                          ? 2
                          : 1;
    tok.end = i + len;
    advance(len);
    out.push_back(std::move(tok));
  }
  out.push_back(Token{Tok::End, "end of input", line, column, i, i});
  return out;
}

inline bool is_keyword(const std::string& s) {
  return s == "fst" || s == "snd" || s == "up" || s == "dn" || s == "err" || s == kNatName;
}

class Parser {
 public:
  explicit Parser(std::string_view text, int line = 1, int column = 1)
      : toks_(tokenize(text, line, column)) {}

  Type type() {
    Type left = prod_type();
    if (accept(Tok::Arrow)) return Type::fn(left, type());
    return left;
  }

  Term term() {
    if (peek().kind == Tok::Backslash) {
      next();
      std::string x = ident("variable");
      expect(Tok::Colon, "':'");
      Type a = type();
      expect(Tok::Dot, "'.'");
      Term body = term();
      return Term::lam(x, a, body);
    }
    Term head = prefix();
    while (starts_prefix()) head = Term::app(head, prefix());
    return head;
  }

  // x : T, y : U   (possibly empty)
  Context context() {
    Context gamma;
    if (peek().kind != Tok::Ident) return gamma;
    do {
      const Token& at = peek();
      std::string x = ident("variable");
      expect(Tok::Colon, "':'");
      Type a = type();
      for (const Binding& b : gamma)
        if (b.name == x) fail("duplicate variable `" + x + "` in context", at);
      gamma.push_back({x, a});
    } while (accept(Tok::Comma));
    return gamma;
  }

  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }
  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(std::string("expected ") + what + ", found '" + peek().text + "'", peek());
  }
  void expect_end() {
    if (peek().kind != Tok::End) fail("unexpected '" + peek().text + "'", peek());
  }
  bool at_end() const { return peek().kind == Tok::End; }

  [[noreturn]] static void fail(const std::string& msg, const Token& at) {
    throw ParseError(msg, at.line, at.column);
  }

 private:
  std::string ident(const char* what) {
    const Token& t = peek();
    if (t.kind != Tok::Ident || is_keyword(t.text))
      fail(std::string("expected ") + what + ", found '" + t.text + "'", t);
    return next().text;
  }

  Type prod_type() {
    Type left = atom_type();
    while (accept(Tok::Star)) left = Type::prod(left, atom_type());
    return left;
  }

  Type atom_type() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Question:
        next();
        return Type::dyn();
      case Tok::Number:
        if (t.text != "1") fail("expected a type, found '" + t.text + "'", t);
        next();
        return Type::unit();
      case Tok::LParen: {
        next();
        Type inner = type();
        expect(Tok::RParen, "')'");
        return inner;
      }
      case Tok::Ident:
        if (t.text == kNatName) {
          next();
          return Type::nat();
        }
        if (is_keyword(t.text)) fail("expected a type, found '" + t.text + "'", t);
        return Type::base(next().text);
      default:
        fail("expected a type, found '" + t.text + "'", t);
    }
  }

  bool starts_prefix() const {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident:
      case Tok::Number:
      case Tok::LParen:
        return true;
      default:
        return false;
    }
  }

  std::pair<Type, Type> cast_types() {
    expect(Tok::LBracket, "'['");
    Type a = type();
    expect(Tok::FatArrow, "'=>'");
    Type b = type();
    expect(Tok::RBracket, "']'");
    return {a, b};
  }

  Term prefix() {
    const Token& t = peek();
    if (t.kind == Tok::Ident) {
      if (t.text == "fst" || t.text == "snd") {
        int idx = t.text == "fst" ? 1 : 2;
        next();
        return Term::proj(idx, prefix());
      }
      if (t.text == "up" || t.text == "dn") {
        bool up = t.text == "up";
        next();
        auto [a, b] = cast_types();
        Term body = prefix();
        return up ? Term::up(a, b, body) : Term::dn(a, b, body);
      }
    }
    return atom();
  }

  Term atom() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Number:
        return Term::fn_app(next().text, {});
      case Tok::LParen: {
        next();
        if (accept(Tok::RParen)) return Term::unit();
        Term a = term();
        if (accept(Tok::Comma)) {
          Term b = term();
          expect(Tok::RParen, "')'");
          return Term::pair(a, b);
        }
        expect(Tok::RParen, "')'");
        return a;
      }
      case Tok::Ident: {
        if (t.text == "err") {
          next();
          expect(Tok::LBracket, "'['");
          Type a = type();
          expect(Tok::RBracket, "']'");
          return Term::err(a);
        }
        if (is_keyword(t.text)) fail("unexpected keyword '" + t.text + "'", t);
        Token id = next();
        if (peek().kind == Tok::LParen && peek().begin == id.end) {
          next();
          std::vector<Term> args;
          if (!accept(Tok::RParen)) {
            do args.push_back(term());
            while (accept(Tok::Comma));
            expect(Tok::RParen, "')'");
          }
          return Term::fn_app(id.text, std::move(args));
        }
        return Term::var(id.text);
      }
      default:
        fail("expected a term, found '" + t.text + "'", t);
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

inline Type parse_type(std::string_view text, int line = 1, int column = 1) {
  Parser p(text, line, column);
  Type t = p.type();
  p.expect_end();
  return t;
}

inline Term parse_term(std::string_view text, int line = 1, int column = 1) {
  Parser p(text, line, column);
  Term t = p.term();
  p.expect_end();
  return t;
}

inline Context parse_context(std::string_view text, int line = 1, int column = 1) {
  Parser p(text, line, column);
  Context c = p.context();
  p.expect_end();
  return c;
}

// Splits at the first top-level occurrence of op ("<=", "==", "|-"); returns
// nullopt when absent. Brackets and parentheses are respected.
inline std::optional<std::pair<std::string, std::string>> split_top_level(std::string_view s,
                                                                          std::string_view op) {
  int depth = 0;
  for (std::size_t i = 0; i + op.size() <= s.size(); ++i) {
    char c = s[i];
    if (c == '(' || c == '[') ++depth;
    if (c == ')' || c == ']') --depth;
    if (depth == 0 && s.substr(i, op.size()) == op) {
      if (op == "<=" && i > 0 && s[i - 1] == '=') continue;
      return std::make_pair(std::string(s.substr(0, i)), std::string(s.substr(i + op.size())));
    }
  }
  return std::nullopt;
}

}  // namespace gtt
