#pragma once

// Piecewise-polynomial expressions in one variable x.
//
//   expr    = term { ("+" | "-") term } ;
//   term    = unary { "*" unary } ;
//   unary   = "-" unary | power ;
//   power   = primary [ "^" natural ] ;
//   primary = "x" | rational | "(" expr ")"
//           | ("min" | "max") "(" expr "," expr ")" | "abs" "(" expr ")" ;
//
// A rational literal is `digits [ "." digits | "/" digits ]`. There is no
// division operator, so every expression is total and exact on rationals.

#include <cctype>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ptop/error.hpp"
#include "ptop/reals/interval.hpp"
#include "ptop/reals/rat.hpp"

namespace ptop::reals {

enum class Op { Var, Const, Neg, Add, Sub, Mul, Min, Max, Abs, Pow };

struct ExprNode;
using Expr = std::shared_ptr<const ExprNode>;

struct ExprNode {
  Op op;
  Rat value;              // Const
  std::uint32_t exp = 0;  // Pow
  std::vector<Expr> kids;
};

namespace ex {

inline Expr var() { return std::make_shared<ExprNode>(ExprNode{Op::Var, 0, 0, {}}); }
inline Expr lit(Rat v) { return std::make_shared<ExprNode>(ExprNode{Op::Const, std::move(v), 0, {}}); }
inline Expr unary(Op op, Expr a) { return std::make_shared<ExprNode>(ExprNode{op, 0, 0, {std::move(a)}}); }
inline Expr binary(Op op, Expr a, Expr b) {
  return std::make_shared<ExprNode>(ExprNode{op, 0, 0, {std::move(a), std::move(b)}});
}
inline Expr pow(Expr a, std::uint32_t k) { return std::make_shared<ExprNode>(ExprNode{Op::Pow, 0, k, {std::move(a)}}); }

}  // namespace ex

inline Rat pow_rat(const Rat& base, std::uint32_t k) {
  Rat r = 1;
  for (std::uint32_t i = 0; i < k; ++i) r *= base;
  return r;
}

/// Exact value at a rational point.
inline Rat eval(const Expr& e, const Rat& x) {
  switch (e->op) {
    case Op::Var: return x;
    case Op::Const: return e->value;
    case Op::Neg: return -eval(e->kids[0], x);
    case Op::Add: return eval(e->kids[0], x) + eval(e->kids[1], x);
    case Op::Sub: return eval(e->kids[0], x) - eval(e->kids[1], x);
    case Op::Mul: return eval(e->kids[0], x) * eval(e->kids[1], x);
    case Op::Min: return std::min(eval(e->kids[0], x), eval(e->kids[1], x));
    case Op::Max: return std::max(eval(e->kids[0], x), eval(e->kids[1], x));
    case Op::Abs: return abs(eval(e->kids[0], x));
    case Op::Pow: return pow_rat(eval(e->kids[0], x), e->exp);
  }
  return 0;
}

/// Natural interval extension. Encloses the range of e over box, is
/// monotone under box inclusion, and is exact on point boxes.
inline RatInterval eval_interval(const Expr& e, const RatInterval& box) {
  auto sub = [&](std::size_t i) { return eval_interval(e->kids[i], box); };
  switch (e->op) {
    case Op::Var: return box;
    case Op::Const: return RatInterval::point(e->value);
    case Op::Neg: {
      auto a = sub(0);
      return {-a.hi, -a.lo};
    }
    case Op::Add: {
      auto a = sub(0), b = sub(1);
      return {a.lo + b.lo, a.hi + b.hi};
    }
    case Op::Sub: {
      auto a = sub(0), b = sub(1);
      return {a.lo - b.hi, a.hi - b.lo};
    }
    case Op::Mul: {
      auto a = sub(0), b = sub(1);
      Rat p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
      return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
    }
    case Op::Min: {
      auto a = sub(0), b = sub(1);
      return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)};
    }
    case Op::Max: {
      auto a = sub(0), b = sub(1);
      return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)};
    }
    case Op::Abs: {
      auto a = sub(0);
      if (a.lo >= 0) return a;
      if (a.hi <= 0) return {-a.hi, -a.lo};
      return {0, std::max(Rat(-a.lo), a.hi)};
    }
    case Op::Pow: {
      auto a = sub(0);
      std::uint32_t k = e->exp;
      if (k == 0) return RatInterval::point(1);
      Rat l = pow_rat(a.lo, k), h = pow_rat(a.hi, k);
      if (k % 2 == 1) return {l, h};
      if (a.lo >= 0) return {l, h};
      if (a.hi <= 0) return {h, l};
      return {0, std::max(l, h)};
    }
  }
  return box;
}

namespace detail {

inline int precedence(Op op) {
  switch (op) {
    case Op::Add:
    case Op::Sub: return 1;
    case Op::Mul: return 2;
    case Op::Neg: return 3;
    case Op::Pow: return 4;
    default: return 5;
  }
}

inline std::string print(const Expr& e, int ctx) {
  std::string s;
  int p = precedence(e->op);
  switch (e->op) {
    case Op::Var: return "x";
    case Op::Const:
      s = to_string(e->value);
      // Negative or fractional literals are parenthesized wherever they
      // could bind differently.
      if ((e->value < 0 || s.find('/') != std::string::npos) && ctx >= 3) return "(" + s + ")";
      if (e->value < 0 && ctx >= 1) return "(" + s + ")";
      return s;
    case Op::Neg: s = "-" + print(e->kids[0], 3); break;
    case Op::Add: s = print(e->kids[0], 1) + " + " + print(e->kids[1], 2); break;
    case Op::Sub: s = print(e->kids[0], 1) + " - " + print(e->kids[1], 2); break;
    case Op::Mul: s = print(e->kids[0], 2) + "*" + print(e->kids[1], 3); break;
    case Op::Pow: s = print(e->kids[0], 5) + "^" + std::to_string(e->exp); break;
    case Op::Min: return "min(" + print(e->kids[0], 0) + ", " + print(e->kids[1], 0) + ")";
    case Op::Max: return "max(" + print(e->kids[0], 0) + ", " + print(e->kids[1], 0) + ")";
    case Op::Abs: return "abs(" + print(e->kids[0], 0) + ")";
  }
  return p < ctx ? "(" + s + ")" : s;
}

class ExprParser {
 public:
  explicit ExprParser(const std::string& s) : s_(s) {}

  Expr parse() {
    auto e = expr();
    skip();
    if (i_ != s_.size()) fail("unexpected input");
    return e;
  }

 private:
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, 1, i_ + 1); }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool eat(char c) {
    skip();
    if (i_ < s_.size() && s_[i_] == c) return ++i_, true;
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }
  bool eat_word(const char* w) {
    skip();
    std::size_t n = std::char_traits<char>::length(w);
    if (s_.compare(i_, n, w) != 0) return false;
    if (i_ + n < s_.size() && std::isalnum(static_cast<unsigned char>(s_[i_ + n]))) return false;
    i_ += n;
    return true;
  }

  Expr expr() {
    auto e = term();
    while (true) {
      if (eat('+')) e = ex::binary(Op::Add, e, term());
      else if (eat('-')) e = ex::binary(Op::Sub, e, term());
      else return e;
    }
  }
  Expr term() {
    auto e = unary();
    while (eat('*')) e = ex::binary(Op::Mul, e, unary());
    return e;
  }
  Expr unary() {
    if (eat('-')) return ex::unary(Op::Neg, unary());
    return power();
  }
  Expr power() {
    auto e = primary();
    if (eat('^')) {
      skip();
      std::size_t j = i_;
      while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      if (j == i_ || j - i_ > 4) fail("expected a small natural exponent");
      auto k = static_cast<std::uint32_t>(std::stoul(s_.substr(i_, j - i_)));
      i_ = j;
      e = ex::pow(e, k);
    }
    return e;
  }
  Expr call2(Op op) {
    expect('(');
    auto a = expr();
    expect(',');
    auto b = expr();
    expect(')');
    return ex::binary(op, a, b);
  }
  Expr primary() {
    skip();
    if (i_ >= s_.size()) fail("unexpected end of expression");
    if (eat('(')) {
      auto e = expr();
      expect(')');
      return e;
    }
    if (eat_word("min")) return call2(Op::Min);
    if (eat_word("max")) return call2(Op::Max);
    if (eat_word("abs")) {
      expect('(');
      auto e = expr();
      expect(')');
      return ex::unary(Op::Abs, e);
    }
    if (eat_word("x")) return ex::var();
    if (std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      std::size_t j = i_;
      auto digits = [&] {
        while (j < s_.size() && std::isdigit(static_cast<unsigned char>(s_[j]))) ++j;
      };
      digits();
      if (j + 1 < s_.size() && (s_[j] == '.' || s_[j] == '/') &&
          std::isdigit(static_cast<unsigned char>(s_[j + 1]))) {
        ++j;
        digits();
      }
      std::size_t start = i_;
      try {
        auto v = parse_rat(s_.substr(start, j - start));
        i_ = j;
        return ex::lit(v);
      } catch (const ParseError&) {
        fail("malformed rational literal");
      }
    }
    if (s_[i_] == '/') fail("division is not supported");
    fail(std::string("unexpected character '") + s_[i_] + "'");
  }

  const std::string& s_;
  std::size_t i_ = 0;
};

}  // namespace detail

inline Expr parse_expr(const std::string& text) { return detail::ExprParser(text).parse(); }

/// Canonical text; parse_expr(to_string(e)) is structurally equal to e.
inline std::string to_string(const Expr& e) { return detail::print(e, 0); }

inline bool structurally_equal(const Expr& a, const Expr& b) {
  if (a->op != b->op || a->value != b->value || a->exp != b->exp || a->kids.size() != b->kids.size())
    return false;
  for (std::size_t i = 0; i < a->kids.size(); ++i)
    if (!structurally_equal(a->kids[i], b->kids[i])) return false;
  return true;
}

}  // namespace ptop::reals
