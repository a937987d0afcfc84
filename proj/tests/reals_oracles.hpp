#pragma once

// Brute-force references for the reals module. Nothing here calls
// eval_interval or the optimizer.

#include <random>
#include <string>
#include <vector>

#include "ptop/reals/domain.hpp"
#include "ptop/reals/expr.hpp"

namespace oracle {

using ptop::reals::Domain;
using ptop::reals::Expr;
using ptop::reals::Op;
using ptop::reals::Rat;

/// Bound on |f| over [-m, m], by structural recursion.
inline Rat abs_bound(const Expr& e, const Rat& m) {
  switch (e->op) {
    case Op::Var: return m;
    case Op::Const: return abs(e->value);
    case Op::Neg:
    case Op::Abs: return abs_bound(e->kids[0], m);
    case Op::Add:
    case Op::Sub: return abs_bound(e->kids[0], m) + abs_bound(e->kids[1], m);
    case Op::Mul: return abs_bound(e->kids[0], m) * abs_bound(e->kids[1], m);
    case Op::Min:
    case Op::Max: return std::max(abs_bound(e->kids[0], m), abs_bound(e->kids[1], m));
    case Op::Pow: return ptop::reals::pow_rat(abs_bound(e->kids[0], m), e->exp);
  }
  return 0;
}

/// Lipschitz constant of f on [-m, m].
inline Rat lipschitz(const Expr& e, const Rat& m) {
  switch (e->op) {
    case Op::Var: return 1;
    case Op::Const: return 0;
    case Op::Neg:
    case Op::Abs: return lipschitz(e->kids[0], m);
    case Op::Add:
    case Op::Sub: return lipschitz(e->kids[0], m) + lipschitz(e->kids[1], m);
    case Op::Mul:
      return lipschitz(e->kids[0], m) * abs_bound(e->kids[1], m) +
             abs_bound(e->kids[0], m) * lipschitz(e->kids[1], m);
    case Op::Min:
    case Op::Max: return std::max(lipschitz(e->kids[0], m), lipschitz(e->kids[1], m));
    case Op::Pow:
      if (e->exp == 0) return 0;
      return Rat(e->exp) * ptop::reals::pow_rat(abs_bound(e->kids[0], m), e->exp - 1) * lipschitz(e->kids[0], m);
  }
  return 0;
}

inline Rat radius(const Domain& d) {
  return std::max(abs(d.parts().front().lo), abs(d.parts().back().hi));
}

/// The true maximum lies in [lo, hi]: lo is a grid maximum, hi adds the
/// Lipschitz slack for the half-spacing.
struct GridBracket {
  Rat lo, hi;
  Rat argmax;
};

inline GridBracket grid_max(const Expr& e, const Domain& d, unsigned per_part) {
  GridBracket g;
  bool first = true;
  Rat worst_gap = 0;
  for (const auto& part : d.parts()) {
    Rat h = part.width() / per_part;
    worst_gap = std::max(worst_gap, h / 2);
    for (unsigned i = 0; i <= per_part; ++i) {
      Rat x = part.lo + h * i;
      Rat v = ptop::reals::eval(e, x);
      if (first || v > g.lo) g.lo = v, g.argmax = x;
      first = false;
    }
  }
  g.hi = g.lo + lipschitz(e, radius(d)) * worst_gap;
  return g;
}

/// Uniform rationals in [lo, hi] with denominator `den`.
inline std::vector<Rat> sample(std::mt19937_64& rng, const Rat& lo, const Rat& hi, std::size_t n,
                               std::int64_t den = 1 << 20) {
  std::uniform_int_distribution<std::int64_t> u(0, den);
  std::vector<Rat> out{lo, hi};
  while (out.size() < n) out.push_back(lo + (hi - lo) * Rat(u(rng), den));
  return out;
}

/// Functions exercised by the reals tests and the acceptance suite.
struct CorpusEntry {
  std::string expr;
  std::string domain;
};

inline const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> c{
      {"x*(1-x)", "[0,1]"},
      {"min(x, 1-x)", "[0,1]"},
      {"abs(x - 1/3)", "[0,1]"},
      {"5", "[0,1]"},
      {"x", "[0,2]"},
      {"x^3 - x", "[-1,1] u [3/2,2]"},
      {"max(x^2, 1/2 - x)", "[-1,1]"},
      {"-(x - 1/5)^2 + 3/4", "[-2,2]"},
      {"abs(x*x - 1/2)*x", "[0,1] u [2,5/2]"},
      {"min(abs(x), 0.125) - x^4", "[-1,1]"},
  };
  return c;
}

}  // namespace oracle
