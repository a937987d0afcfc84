#pragma once

// Theory grammar (EBNF):
//
//   theory    = { statement } ;
//   statement = prop | axiom ;
//   prop      = "prop" family { "," family } [ "for" binder { "," binder } ] ";" ;
//   family    = name [ "[" name { "," name } "]" ] ;
//   binder    = name "<" bound ;
//   bound     = number | name ;                  (name = truncation parameter)
//   axiom     = "axiom" conj "|-" disj [ "for" cond { "," cond } ] ";" ;
//   conj      = "true" | atom { "&" atom } ;
//   disj      = "false" | term { "|" term } ;
//   term      = "any" binder ":" conj | conj ;
//   atom      = name [ "[" index { "," index } "]" ] ;
//   index     = name | number ;
//   cond      = binder | index ( "<" | "<=" | "=" | "!=" ) index ;
//
// `#` starts a comment. In a condition `v < b`, an unbound v introduces a
// new index ranging below b; otherwise it is a comparison. Index variables
// named in a `prop ... for` clause are global: axioms may use them freely
// and are instantiated over their ranges.

#include <cctype>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "ptop/dsl/ast.hpp"
#include "ptop/error.hpp"

namespace ptop::dsl {

namespace detail {

enum class Tok { Ident, Number, Sym, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  Loc loc;
};

inline std::vector<Token> lex(const std::string& src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1, i = 0;
  auto advance = [&](std::size_t k) {
    for (std::size_t j = 0; j < k; ++j) {
      if (src[i] == '\n') ++line, col = 1;
      else ++col;
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    Loc loc{line, col};
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::Ident, src.substr(i, j - i), loc});
      advance(j - i);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j - i > 9) throw ParseError("number too large", loc.line, loc.column);
      out.push_back({Tok::Number, src.substr(i, j - i), loc});
      advance(j - i);
      continue;
    }
    auto two = src.substr(i, 2);
    if (c == '~' || (c == '!' && two != "!=") || src.compare(i, 2, "\xc2\xac") == 0)
      throw ParseError("negation is not allowed in geometric logic", loc.line, loc.column);
    if (two == "->" || two == "=>" || src.compare(i, 3, "\xe2\x86\x92") == 0)
      throw ParseError("implication is not allowed in geometric logic", loc.line, loc.column);
    if (two == "|-" || two == "<=" || two == "!=") {
      out.push_back({Tok::Sym, two, loc});
      advance(2);
      continue;
    }
    if (std::string(";,[]&|<=:").find(c) != std::string::npos) {
      out.push_back({Tok::Sym, std::string(1, c), loc});
      advance(1);
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", loc.line, loc.column);
  }
  out.push_back({Tok::End, "", Loc{line, col}});
  return out;
}

class Parser {
 public:
  Parser(std::vector<Token> toks, std::set<std::string> globals)
      : globals_(std::move(globals)), toks_(std::move(toks)) {}

  TheoryAST theory() {
    TheoryAST ast;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (is_ident("prop")) {
        next();
        ast.props.push_back(prop());
      } else if (is_ident("axiom")) {
        next();
        ast.axioms.push_back(axiom());
      } else {
        fail(t, "expected 'prop' or 'axiom'");
      }
    }
    return ast;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_++]; }
  bool is_sym(const char* s) const { return peek().kind == Tok::Sym && peek().text == s; }
  bool is_ident(const char* s) const { return peek().kind == Tok::Ident && peek().text == s; }
  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    throw ParseError(msg + (t.kind == Tok::End ? " at end of input" : " near '" + t.text + "'"),
                     t.loc.line, t.loc.column);
  }
  void expect(const char* s) {
    if (!is_sym(s)) fail(peek(), std::string("expected '") + s + "'");
    next();
  }
  std::string name() {
    if (peek().kind != Tok::Ident) fail(peek(), "expected a name");
    static const std::set<std::string> reserved{"prop", "axiom", "for", "true", "false", "any"};
    if (reserved.count(peek().text)) fail(peek(), "reserved word");
    return next().text;
  }
  std::uint64_t number() { return std::stoull(next().text); }

  Bound bound() {
    if (peek().kind == Tok::Number) return Bound{std::nullopt, number()};
    return Bound{name(), 0};
  }
  Binder binder() {
    Loc loc = peek().loc;
    auto v = name();
    expect("<");
    return Binder{v, bound(), loc};
  }
  IndexTerm index() {
    if (peek().kind == Tok::Number) return IndexTerm::literal(number());
    return IndexTerm::variable(name());
  }

  PropDecl prop() {
    PropDecl d;
    do {
      Family f;
      f.loc = peek().loc;
      f.name = name();
      if (is_sym("[")) {
        next();
        f.index_vars.push_back(name());
        while (is_sym(",")) next(), f.index_vars.push_back(name());
        expect("]");
      }
      d.families.push_back(std::move(f));
    } while (is_sym(",") && (next(), true));
    if (is_ident("for")) {
      next();
      d.binders.push_back(binder());
      while (is_sym(",")) next(), d.binders.push_back(binder());
    }
    expect(";");
    return d;
  }

  Atom atom() {
    Atom a;
    a.loc = peek().loc;
    a.name = name();
    if (is_sym("[")) {
      next();
      a.args.push_back(index());
      while (is_sym(",")) next(), a.args.push_back(index());
      expect("]");
    }
    return a;
  }

  Conj conj() {
    Conj c;
    if (is_ident("true")) {
      next();
      return c;
    }
    c.atoms.push_back(atom());
    while (is_sym("&")) next(), c.atoms.push_back(atom());
    return c;
  }

  Disj disj() {
    Disj d;
    if (is_ident("false")) {
      next();
      return d;
    }
    do {
      Disjunct t;
      if (is_ident("any")) {
        next();
        t.any = binder();
        expect(":");
      }
      t.conj = conj();
      d.terms.push_back(std::move(t));
    } while (is_sym("|") && (next(), true));
    return d;
  }

  Condition condition(const std::set<std::string>& bound_vars) {
    Condition c;
    c.loc = peek().loc;
    if (peek().kind == Tok::Ident && !bound_vars.count(peek().text) && toks_[pos_ + 1].text == "<") {
      c.binder = binder();
      return c;
    }
    c.lhs = index();
    if (peek().kind != Tok::Sym) fail(peek(), "expected a comparison");
    const std::string op = next().text;
    if (op == "<") c.op = CmpOp::Lt;
    else if (op == "<=") c.op = CmpOp::Le;
    else if (op == "=") c.op = CmpOp::Eq;
    else if (op == "!=") c.op = CmpOp::Ne;
    else fail(toks_[pos_ - 1], "expected a comparison");
    c.rhs = index();
    return c;
  }

  Axiom axiom() {
    Axiom a;
    a.loc = toks_[pos_ - 1].loc;
    a.lhs = conj();
    expect("|-");
    a.rhs = disj();
    if (is_ident("for")) {
      next();
      std::set<std::string> vars = globals_;
      do {
        a.conditions.push_back(condition(vars));
        if (a.conditions.back().binder) vars.insert(a.conditions.back().binder->var);
      } while (is_sym(",") && (next(), true));
    }
    expect(";");
    return a;
  }

  std::set<std::string> globals_;
  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

/// Name resolution: families declared once with consistent index ranges,
/// atoms matching their family's arity, every index variable bound.
inline void resolve(const TheoryAST& ast) {
  std::map<std::string, Bound> globals;
  std::map<std::string, std::size_t> arity;
  for (const auto& d : ast.props) {
    std::map<std::string, Bound> local;
    for (const auto& b : d.binders) {
      if (local.count(b.var)) throw ParseError("index '" + b.var + "' bound twice", b.loc.line, b.loc.column);
      local[b.var] = b.bound;
      auto [it, fresh] = globals.emplace(b.var, b.bound);
      if (!fresh && !(it->second == b.bound))
        throw ParseError("index '" + b.var + "' declared with two different ranges", b.loc.line,
                         b.loc.column);
    }
    for (const auto& f : d.families) {
      if (!arity.emplace(f.name, f.index_vars.size()).second)
        throw ParseError("proposition '" + f.name + "' declared twice", f.loc.line, f.loc.column);
      for (const auto& v : f.index_vars)
        if (!local.count(v))
          throw ParseError("unbound index '" + v + "' in declaration of '" + f.name + "'",
                           f.loc.line, f.loc.column);
    }
  }
  for (const auto& ax : ast.axioms) {
    std::set<std::string> scope;
    for (const auto& [v, b] : globals) scope.insert(v);
    for (const auto& c : ax.conditions)
      if (c.binder) scope.insert(c.binder->var);
    auto check_term = [&](const IndexTerm& t, const std::set<std::string>& sc, const Loc& loc) {
      if (t.var && !sc.count(*t.var))
        throw ParseError("unbound index '" + *t.var + "'", loc.line, loc.column);
    };
    auto check_conj = [&](const Conj& c, const std::set<std::string>& sc) {
      for (const auto& a : c.atoms) {
        auto it = arity.find(a.name);
        if (it == arity.end())
          throw ParseError("undeclared proposition '" + a.name + "'", a.loc.line, a.loc.column);
        if (it->second != a.args.size())
          throw ParseError("'" + a.name + "' expects " + std::to_string(it->second) + " indices",
                           a.loc.line, a.loc.column);
        for (const auto& t : a.args) check_term(t, sc, a.loc);
      }
    };
    check_conj(ax.lhs, scope);
    for (const auto& t : ax.rhs.terms) {
      auto sc = scope;
      if (t.any) sc.insert(t.any->var);
      check_conj(t.conj, sc);
    }
    for (const auto& c : ax.conditions)
      if (!c.binder) {
        check_term(c.lhs, scope, c.loc);
        check_term(c.rhs, scope, c.loc);
      }
  }
}

}  // namespace detail

/// Parses and resolves a theory. Errors carry line and column.
inline TheoryAST parse_theory(const std::string& text) {
  auto toks = detail::lex(text);
  // Global index names come from the `prop ... for` clauses; collect them
  // first so that axiom conditions can tell binders from comparisons.
  std::set<std::string> globals;
  for (std::size_t i = 0; i + 2 < toks.size(); ++i)
    if (toks[i].kind == detail::Tok::Ident && toks[i].text == "prop") {
      std::size_t j = i + 1;
      while (j < toks.size() && toks[j].text != ";" && toks[j].text != "for") ++j;
      if (j < toks.size() && toks[j].text == "for")
        for (++j; j + 1 < toks.size() && toks[j].text != ";"; ++j)
          if (toks[j].kind == detail::Tok::Ident && toks[j + 1].text == "<") globals.insert(toks[j].text);
    }
  detail::Parser p(std::move(toks), std::move(globals));
  auto ast = p.theory();
  detail::resolve(ast);
  return ast;
}

}  // namespace ptop::dsl
