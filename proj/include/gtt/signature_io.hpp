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

// Loader for .gttsig files.
//
//   basetypes:
//     X
//     Y
//   tydyn:
//     X <= Y
//   fnsyms:
//     f : (Nat, X) -> Y
//   tmdyn:
//     x : X |- f(0, x) <= y : Y |- g(y)
//   flags:
//     retract = true
//     disjointness = false
//     nat = true
//     dyntop = all            # or first-order
//     tydyn_mode = decide     # or search
//   codes:
//     X = 10 .. 20            # half-open range of tree leaf codes

#pragma once

#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include "gtt/parser.hpp"
#include "gtt/typing.hpp"

namespace gtt {

namespace detail {

inline std::string trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

inline std::string strip_comment(const std::string& line) {
  auto pos = line.find('#');
  return pos == std::string::npos ? line : line.substr(0, pos);
}

inline bool parse_bool(const std::string& v, int line) {
  if (v == "true" || v == "on") return true;
  if (v == "false" || v == "off") return false;
  throw ParseError("expected true or false, found '" + v + "'", line, 1);
}

// Column of the first non-blank character, 1-based.
inline int indent_col(const std::string& line) {
  int c = 1;
  for (char ch : line) {
    if (!std::isspace(static_cast<unsigned char>(ch))) break;
    ++c;
  }
  return c;
}

}  // namespace detail

inline Signature parse_signature(const std::string& text) {
  Signature sig;
  std::istringstream in(text);
  std::string raw;
  std::string section;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = detail::strip_comment(raw);
    std::string body = detail::trim(line);
    if (body.empty()) continue;
    int col = detail::indent_col(line);
    if (body.back() == ':' && body.find(' ') == std::string::npos) {
      section = body.substr(0, body.size() - 1);
      static const std::set<std::string> known{"basetypes", "tydyn", "fnsyms", "tmdyn", "flags",
                                               "codes"};
      if (!known.count(section)) throw ParseError("unknown section '" + section + "'", lineno, col);
      continue;
    }
    if (section.empty()) throw ParseError("entry outside of any section", lineno, col);
    if (section == "basetypes") {
      std::stringstream ss(body);
      std::string name;
      while (std::getline(ss, name, ',')) {
        name = detail::trim(name);
        if (name.empty() || !is_ident_start(name[0]) || is_keyword(name))
          throw ParseError("invalid base type name '" + name + "'", lineno, col);
        for (char c : name)
          if (!is_ident_char(c)) throw ParseError("invalid base type name '" + name + "'", lineno, col);
        sig.base_types.insert(name);
      }
    } else if (section == "tydyn") {
      auto parts = split_top_level(body, "<=");
      if (!parts) throw ParseError("expected `A <= B`", lineno, col);
      sig.tydyn_axioms.emplace_back(parse_type(parts->first, lineno, col),
                                    parse_type(parts->second, lineno, col));
    } else if (section == "fnsyms") {
      Parser p(body, lineno, col);
      const Token& name_tok = p.peek();
      if (name_tok.kind != Tok::Ident || is_keyword(name_tok.text))
        Parser::fail("expected a function symbol name", name_tok);
      std::string name = p.next().text;
      p.expect(Tok::Colon, "':'");
      p.expect(Tok::LParen, "'('");
      FnSymbol f{{}, Type::unit()};
      if (!p.accept(Tok::RParen)) {
        do f.inputs.push_back(p.type());
        while (p.accept(Tok::Comma));
        p.expect(Tok::RParen, "')'");
      }
      p.expect(Tok::Arrow, "'->'");
      f.output = p.type();
      p.expect_end();
      if (!sig.fn_symbols.emplace(name, f).second)
        throw ParseError("duplicate function symbol `" + name + "`", lineno, col);
    } else if (section == "tmdyn") {
      auto sides = split_top_level(body, "<=");
      if (!sides) throw ParseError("expected `ctx |- t <= ctx' |- t'`", lineno, col);
      TermAxiom ax{{}, Term::unit(), {}, Term::unit()};
      auto side = [&](const std::string& s, Context& ctx, Term& t) {
        auto ct = split_top_level(s, "|-");
        if (!ct) throw ParseError("expected `ctx |- term`", lineno, col);
        ctx = parse_context(ct->first, lineno, col);
        t = parse_term(ct->second, lineno, col);
      };
      side(sides->first, ax.left_ctx, ax.left);
      side(sides->second, ax.right_ctx, ax.right);
      sig.tmdyn_axioms.push_back(std::move(ax));
    } else if (section == "flags") {
      auto eq = body.find('=');
      if (eq == std::string::npos) throw ParseError("expected `flag = value`", lineno, col);
      std::string key = detail::trim(body.substr(0, eq));
      std::string val = detail::trim(body.substr(eq + 1));
      if (key == "retract") {
        sig.retract_axiom = detail::parse_bool(val, lineno);
      } else if (key == "disjointness") {
        sig.disjointness = detail::parse_bool(val, lineno);
      } else if (key == "nat") {
        sig.nat_builtin = detail::parse_bool(val, lineno);
      } else if (key == "dyntop") {
        if (val == "all")
          sig.dyn_top_restriction = nullptr;
        else if (val == "first-order")
          sig.dyn_top_restriction = first_order_only();
        else
          throw ParseError("dyntop must be `all` or `first-order`", lineno, col);
      } else if (key == "tydyn_mode") {
        if (val == "decide")
          sig.tydyn_mode = TyDynMode::Decide;
        else if (val == "search")
          sig.tydyn_mode = TyDynMode::Search;
        else
          throw ParseError("tydyn_mode must be `decide` or `search`", lineno, col);
      } else {
        throw ParseError("unknown flag '" + key + "'", lineno, col);
      }
    } else if (section == "codes") {
      static const std::regex re(R"(([A-Za-z_][A-Za-z0-9_']*)\s*=\s*(\d+)\s*\.\.\s*(\d+))");
      std::smatch m;
      if (!std::regex_match(body, m, re)) throw ParseError("expected `X = lo .. hi`", lineno, col);
      sig.base_codes[m[1]] = CodeRange{std::stoull(m[2]), std::stoull(m[3])};
    }
  }
  if (sig.nat_builtin && sig.base_types.count(kNatName))
    throw ConfigError("`Nat` is built in and cannot be redeclared");
  validate_signature(sig);
  return sig;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read file `" + path + "`");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Signature load_signature(const std::string& path) {
  try {
    return parse_signature(read_file(path));
  } catch (const ParseError& e) {
    throw ParseError(e.message(), e.line(), e.column(), path);
  } catch (const ConfigError& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace gtt
