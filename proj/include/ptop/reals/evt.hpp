#pragma once

// Certified suprema of piecewise-polynomial functions over compact rational
// domains. The lower side of the computed real is only ever raised by exact
// point values; the upper side is only ever lowered by interval bounds.

#include <cstdint>
#include <optional>
#include <queue>
#include <string>
#include <vector>

#include "ptop/config.hpp"
#include "ptop/error.hpp"
#include "ptop/reals/domain.hpp"
#include "ptop/reals/expr.hpp"

namespace ptop::reals {

namespace detail {

struct Node {
  RatInterval box;
  RatInterval value;  // eval_interval over box
};

// Best-first: larger upper bound, then smaller left endpoint, then smaller
// width. Returns true when a should be served after b.
struct ServedAfter {
  bool operator()(const Node& a, const Node& b) const {
    if (a.value.hi != b.value.hi) return a.value.hi < b.value.hi;
    if (a.box.lo != b.box.lo) return a.box.lo > b.box.lo;
    return a.box.width() > b.box.width();
  }
};

using Worklist = std::priority_queue<Node, std::vector<Node>, ServedAfter>;

inline Node make_node(const Expr& e, RatInterval box) {
  auto v = eval_interval(e, box);
  return {std::move(box), std::move(v)};
}

inline std::pair<RatInterval, RatInterval> bisect(const RatInterval& b) {
  Rat m = b.mid();
  return {RatInterval(b.lo, m), RatInterval(m, b.hi)};
}

}  // namespace detail

/// Interval I inside d whose interval bound certifies f > q on all of I.
struct WitnessResult {
  std::optional<RatInterval> witness;
  Rat witness_lower;  // eval_interval(e, *witness).lo
  std::uint64_t subdivisions = 0;
  bool found() const { return witness.has_value(); }
};

/// Searches for a witness that sup f > q, bisecting at most `budget` times.
/// Not finding one is inconclusive.
inline WitnessResult positive_witness(const Expr& e, const Domain& d, const Rat& q, std::uint64_t budget) {
  if (budget == 0) throw InvalidInput("positive_witness needs a budget of at least 1");
  WitnessResult r;
  detail::Worklist work;
  for (const auto& part : d.parts()) work.push(detail::make_node(e, part));
  while (!work.empty()) {
    auto n = work.top();
    work.pop();
    if (n.value.lo > q) {
      r.witness = n.box;
      r.witness_lower = n.value.lo;
      return r;
    }
    if (n.value.hi <= q || n.box.is_point()) continue;
    if (r.subdivisions == budget) break;
    ++r.subdivisions;
    auto [a, b] = detail::bisect(n.box);
    work.push(detail::make_node(e, a));
    work.push(detail::make_node(e, b));
  }
  return r;
}

enum class CoverStatus { Certified, Exhausted, Refuted };

inline const char* to_string(CoverStatus s) {
  switch (s) {
    case CoverStatus::Certified: return "certified";
    case CoverStatus::Exhausted: return "exhausted";
    case CoverStatus::Refuted: return "refuted";
  }
  return "?";
}

/// Pieces whose union is exactly d, each with interval upper bound below q.
/// Refuted carries a point of d where f >= q exactly.
struct CoverResult {
  CoverStatus status = CoverStatus::Exhausted;
  std::vector<RatInterval> pieces;
  std::optional<Rat> refuted_at;
  std::uint64_t subdivisions = 0;
  bool certified() const { return status == CoverStatus::Certified; }
};

/// Tries to certify max f < q over d, bisecting at most `budget` times.
inline CoverResult cover_certificate(const Expr& e, const Domain& d, const Rat& q, std::uint64_t budget) {
  if (budget == 0) throw InvalidInput("cover_certificate needs a budget of at least 1");
  CoverResult r;
  std::vector<RatInterval> stack(d.parts().rbegin(), d.parts().rend());
  while (!stack.empty()) {
    auto box = std::move(stack.back());
    stack.pop_back();
    if (eval_interval(e, box).hi < q) {
      r.pieces.push_back(std::move(box));
      continue;
    }
    for (const Rat& x : {box.lo, box.mid(), box.hi})
      if (eval(e, x) >= q) {
        r.status = CoverStatus::Refuted;
        r.refuted_at = x;
        r.pieces.clear();
        return r;
      }
    if (r.subdivisions == budget) {
      r.pieces.clear();
      return r;
    }
    ++r.subdivisions;
    auto [a, b] = detail::bisect(box);
    stack.push_back(std::move(b));
    stack.push_back(std::move(a));
  }
  r.status = CoverStatus::Certified;
  return r;
}

/// True when pieces, in order, tile d exactly: each domain interval is a
/// chain of pieces sharing endpoints.
inline bool tiles_exactly(const std::vector<RatInterval>& pieces, const Domain& d) {
  std::size_t k = 0;
  for (const auto& part : d.parts()) {
    if (k == pieces.size() || pieces[k].lo != part.lo) return false;
    while (pieces[k].hi != part.hi) {
      if (k + 1 == pieces.size() || pieces[k + 1].lo != pieces[k].hi) return false;
      ++k;
    }
    ++k;
  }
  return k == pieces.size();
}

enum class Branch { Left, Right };

inline const char* to_string(Branch b) { return b == Branch::Left ? "LeftBranch" : "RightBranch"; }

/// Left: p < sup f, with a witness interval. Right: sup f < q, with a cover
/// certificate at q_cover (strictly between p and q).
struct LocateResult {
  Branch branch = Branch::Left;
  Rat p, q, q_cover;
  std::optional<RatInterval> witness;
  Rat witness_lower;
  std::vector<RatInterval> cover;
  std::uint64_t budget = 0;  // the budget at which a side certified
};

/// Decides p < sup f or sup f < q by alternating the two semidecisions
/// with doubling budgets. Terminates for continuous f since at least one
/// of p < r, r < (p+q)/2 holds strictly.
inline LocateResult locate(const Expr& e, const Domain& d, const Rat& p, const Rat& q, const Limits& limits = {}) {
  if (!(p < q)) throw InvalidInput("locate needs p < q, got p = " + to_string(p) + ", q = " + to_string(q));
  LocateResult r;
  r.p = p;
  r.q = q;
  r.q_cover = midpoint(p, q);
  for (std::uint64_t b = 1; b <= limits.locate_max_budget; b *= 2) {
    r.budget = b;
    auto w = positive_witness(e, d, p, b);
    if (w.found()) {
      r.branch = Branch::Left;
      r.witness = w.witness;
      r.witness_lower = w.witness_lower;
      return r;
    }
    auto c = cover_certificate(e, d, r.q_cover, b);
    if (c.certified()) {
      r.branch = Branch::Right;
      r.cover = std::move(c.pieces);
      return r;
    }
  }
  throw BudgetExhausted("locate(" + to_string(p) + ", " + to_string(q) + ") exceeded the budget of " +
                        std::to_string(limits.locate_max_budget) + " subdivisions");
}

struct BoundStep {
  Rat lower;
  Rat upper;
  bool operator==(const BoundStep&) const = default;
};

/// Two-sided real [lower, upper]; lower is attained at lower_witness.
struct DedekindEnclosure {
  Rat lower;
  Rat upper;
  Rat eps;
  Rat lower_witness;
  std::vector<BoundStep> trace;  // one step per expansion, when requested
  bool operator==(const DedekindEnclosure&) const = default;
};

/// Outer approximation of the set of maximizers: closed intervals of
/// width at most delta (points excepted) whose upper bound reaches lower.
struct MaximizerCover {
  std::vector<RatInterval> intervals;
  Rat delta;
  bool operator==(const MaximizerCover&) const = default;
};

struct PruneEvent {
  RatInterval box;
  Rat upper;           // interval upper bound of the pruned box
  Rat lower_at_prune;  // lower bound when it was discarded
  bool operator==(const PruneEvent&) const = default;
};

struct EvtResult {
  DedekindEnclosure enclosure;
  MaximizerCover cover;
  std::uint64_t nodes_expanded = 0;
  bool complete = true;  // false when the node budget ran out first
  std::vector<PruneEvent> pruned;
  bool operator==(const EvtResult&) const = default;
};

/// Largest power of two 2^-k with (2^-k)^2 <= eps.
inline Rat cover_width(const Rat& eps) {
  Rat delta = 1;
  while (delta * delta > eps) delta /= 2;
  return delta;
}

/// Best-first branch and bound for max f over d, stopping once
/// upper - lower <= eps, then refining the surviving boxes to width delta.
inline EvtResult evt_maximize(const Expr& e, const Domain& d, const Rat& eps, const Limits& limits = {},
                              bool record_trace = false) {
  if (!(eps > 0)) throw InvalidInput("eps must be positive, got " + to_string(eps));
  EvtResult res;
  auto& enc = res.enclosure;
  enc.eps = eps;
  res.cover.delta = cover_width(eps);

  detail::Worklist work;
  std::optional<Rat> lower;
  auto see_point = [&](const Rat& x) {
    Rat v = eval(e, x);
    if (!lower || v > *lower) {
      lower = v;
      enc.lower_witness = x;
    }
  };
  auto prune = [&](const detail::Node& n) {
    if (record_trace) res.pruned.push_back({n.box, n.value.hi, *lower});
  };
  for (const auto& part : d.parts()) {
    work.push(detail::make_node(e, part));
    see_point(part.mid());
  }
  auto step = [&] {
    enc.lower = *lower;
    enc.upper = work.top().value.hi;
    if (record_trace) enc.trace.push_back({enc.lower, enc.upper});
  };
  step();

  // A point box has an exact value, already counted in lower, so it can be
  // on top only once upper - lower <= 0.
  while (enc.upper - enc.lower > eps) {
    if (res.nodes_expanded == limits.evt_node_budget) {
      res.complete = false;
      break;
    }
    auto n = work.top();
    work.pop();
    ++res.nodes_expanded;
    auto [a, b] = detail::bisect(n.box);
    see_point(n.box.mid());
    for (auto* box : {&a, &b}) {
      auto child = detail::make_node(e, std::move(*box));
      if (child.value.hi < *lower) prune(child);
      else work.push(std::move(child));
    }
    step();
  }

  // Refinement of the survivors, left to right.
  std::vector<detail::Node> live;
  while (!work.empty()) {
    live.push_back(work.top());
    work.pop();
  }
  std::sort(live.begin(), live.end(), [](const auto& x, const auto& y) { return x.box.lo > y.box.lo; });
  std::vector<detail::Node> kept;
  while (!live.empty()) {
    auto n = std::move(live.back());
    live.pop_back();
    if (n.value.hi < *lower) {
      prune(n);
      continue;
    }
    if (!res.complete || n.box.is_point() || n.box.width() <= res.cover.delta ||
        res.nodes_expanded == limits.evt_node_budget) {
      kept.push_back(std::move(n));
      continue;
    }
    ++res.nodes_expanded;
    auto [a, b] = detail::bisect(n.box);
    see_point(n.box.mid());
    live.push_back(detail::make_node(e, std::move(b)));
    live.push_back(detail::make_node(e, std::move(a)));
  }
  Rat upper = *lower;
  for (auto& n : kept) {
    if (n.value.hi < *lower) {
      prune(n);
      continue;
    }
    upper = std::max(upper, n.value.hi);
    // Adjacent survivors merge while the run stays within delta; the
    // merged box still reaches lower by inclusion monotonicity.
    auto& iv = res.cover.intervals;
    if (!iv.empty() && iv.back().hi == n.box.lo && n.box.hi - iv.back().lo <= res.cover.delta)
      iv.back() = RatInterval(iv.back().lo, n.box.hi);
    else
      iv.push_back(std::move(n.box));
  }
  if (*lower != enc.lower || upper != enc.upper) {
    enc.lower = *lower;
    enc.upper = upper;
    if (record_trace) enc.trace.push_back({enc.lower, enc.upper});
  }
  return res;
}

struct TraceAudit {
  bool lower_nondecreasing = true;
  bool upper_nonincreasing = true;
  bool ordered = true;            // lower_k <= upper_k
  bool pruning_dominated = true;  // every pruned box had upper < lower then
  bool witness_exact = true;      // lower == f(lower_witness), witness in d
  std::string failure;
  bool ok() const { return lower_nondecreasing && upper_nonincreasing && ordered && pruning_dominated && witness_exact; }
};

inline TraceAudit audit_trace(const Expr& e, const Domain& d, const EvtResult& r) {
  TraceAudit a;
  const auto& t = r.enclosure.trace;
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (t[k].upper < t[k].lower && a.ordered) {
      a.ordered = false;
      a.failure = "step " + std::to_string(k) + " has upper < lower";
    }
    if (k == 0) continue;
    if (t[k].lower < t[k - 1].lower && a.lower_nondecreasing) {
      a.lower_nondecreasing = false;
      a.failure = "lower bound decreased at step " + std::to_string(k);
    }
    if (t[k].upper > t[k - 1].upper && a.upper_nonincreasing) {
      a.upper_nonincreasing = false;
      a.failure = "upper bound increased at step " + std::to_string(k);
    }
  }
  for (const auto& p : r.pruned)
    if (!(p.upper < p.lower_at_prune) || p.lower_at_prune > r.enclosure.lower ||
        !(eval_interval(e, p.box).hi == p.upper)) {
      a.pruning_dominated = false;
      a.failure = "pruned box " + p.box.to_string() + " was not dominated";
      break;
    }
  if (!d.contains(r.enclosure.lower_witness) || eval(e, r.enclosure.lower_witness) != r.enclosure.lower) {
    a.witness_exact = false;
    a.failure = "lower bound is not attained at its witness";
  }
  return a;
}

struct ProbeOutcome {
  Rat p, q;
  Branch branch = Branch::Left;
  bool admissible = true;   // branch agrees with [lower, upper]
  bool certificate = true;  // the returned certificate re-checks
  std::string detail;
};

struct CutReport {
  std::vector<ProbeOutcome> probes;
  TraceAudit trace;
  std::size_t inconsistencies = 0;
  bool ok() const { return inconsistencies == 0 && trace.ok(); }
};

/// Re-checks an enclosure against locate on each probe (p, q). Left is
/// admissible only if p < upper; Right only if lower < q.
inline CutReport cut_validate(const Expr& e, const Domain& d, const EvtResult& r,
                              const std::vector<std::pair<Rat, Rat>>& probes, const Limits& limits = {}) {
  CutReport rep;
  rep.trace = audit_trace(e, d, r);
  const auto& enc = r.enclosure;
  for (const auto& [p, q] : probes) {
    ProbeOutcome o;
    o.p = p;
    o.q = q;
    auto loc = locate(e, d, p, q, limits);
    o.branch = loc.branch;
    if (loc.branch == Branch::Left) {
      o.admissible = p < enc.upper;
      const auto& w = *loc.witness;
      o.certificate = d.contains(w) && eval_interval(e, w).lo > p && eval(e, w.lo) > p && eval(e, w.mid()) > p &&
                      eval(e, w.hi) > p;
    } else {
      o.admissible = enc.lower < q;
      o.certificate = loc.q_cover < q && tiles_exactly(loc.cover, d);
      for (const auto& piece : loc.cover) o.certificate = o.certificate && eval_interval(e, piece).hi < loc.q_cover;
    }
    if (!o.admissible) o.detail = std::string(to_string(o.branch)) + " contradicts the enclosure";
    else if (!o.certificate) o.detail = "certificate does not re-check";
    if (!o.admissible || !o.certificate) ++rep.inconsistencies;
    rep.probes.push_back(std::move(o));
  }
  return rep;
}

}  // namespace ptop::reals
