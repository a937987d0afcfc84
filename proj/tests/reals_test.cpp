#include <random>

#include <gtest/gtest.h>

#include "ptop/reals/evt.hpp"
#include "reals_oracles.hpp"

using namespace ptop;
using namespace ptop::reals;

namespace {

Rat R(const std::string& s) { return parse_rat(s); }

OpenInterval oi(const char* lo, const char* hi) {
  return {std::string(lo) == "-inf" ? std::nullopt : std::optional<Rat>(R(lo)),
          std::string(hi) == "inf" ? std::nullopt : std::optional<Rat>(R(hi))};
}

}  // namespace

// ---------------------------------------------------------------- Rat

TEST(Rat, ParsesExactly) {
  EXPECT_EQ(R("0.25"), Rat(1, 4));
  EXPECT_EQ(R("-3/6"), Rat(-1, 2));
  EXPECT_EQ(R("+7"), Rat(7));
  EXPECT_EQ(R("0.000001"), Rat(1, 1000000));
  EXPECT_EQ(to_string(R("10/4")), "5/2");
  EXPECT_EQ(to_string(R("-4/2")), "-2");
  for (const char* bad : {"", "-", "1/0", "1.", ".5", "1/", "abc", "1/2/3", "1e3", "0x1"})
    EXPECT_THROW(parse_rat(bad), ParseError) << bad;
}

TEST(Rat, DecimalDisplay) {
  EXPECT_EQ(to_decimal(Rat(1, 3), 4), "0.3333");
  EXPECT_EQ(to_decimal(Rat(2, 3), 2), "0.67");
  EXPECT_EQ(to_decimal(Rat(-1, 8), 2), "-0.13");
  EXPECT_EQ(to_decimal(Rat(-1, 1000), 2), "0.00");
  EXPECT_EQ(to_decimal(Rat(5), 0), "5");
}

// ---------------------------------------------------------------- ROpen

TEST(ROpen, Examples) {
  auto j = ropen_join(ROpen::of(oi("0", "1")), ROpen::of(oi("1", "2")));
  EXPECT_EQ(j.components().size(), 2u);
  EXPECT_FALSE(j.contains(1));
  EXPECT_EQ(ropen_meet(ROpen::of(oi("0", "2")), ROpen::of(oi("1", "3"))), ROpen::of(oi("1", "2")));
  EXPECT_TRUE(ropen_join(ROpen::of(OpenInterval::below(1)), ROpen::of(OpenInterval::above(0))).is_whole());
  // Disjointness: below(q) meets above(p) in nothing when p >= q.
  EXPECT_TRUE(ropen_meet(ROpen::of(OpenInterval::below(1)), ROpen::of(OpenInterval::above(1))).empty());
  EXPECT_TRUE(ROpen::of(oi("2", "2")).empty());
}

namespace {

ROpen random_open(std::mt19937& rng) {
  std::uniform_int_distribution<int> n(0, 3), end(-4, 4), inf(0, 6);
  std::vector<OpenInterval> parts;
  for (int k = n(rng); k > 0; --k) {
    OpenInterval i;
    if (inf(rng)) i.lo = Rat(end(rng), 2);
    if (inf(rng)) i.hi = Rat(end(rng), 2);
    parts.push_back(i);
  }
  return ROpen(parts);
}

// Every endpoint on the half-grid, quarter points between them, and far
// points. Enough to separate any two opens generated above.
std::vector<Rat> probe_points() {
  std::vector<Rat> out;
  for (int k = -40; k <= 40; ++k) out.push_back(Rat(k, 4));
  return out;
}

}  // namespace

TEST(ROpen, LatticeLawsAgainstMembership) {
  std::mt19937 rng(5);
  auto pts = probe_points();
  for (int it = 0; it < 300; ++it) {
    auto a = random_open(rng), b = random_open(rng), c = random_open(rng);
    for (const auto& x : pts) {
      ASSERT_EQ(ropen_join(a, b).contains(x), a.contains(x) || b.contains(x));
      ASSERT_EQ(ropen_meet(a, b).contains(x), a.contains(x) && b.contains(x));
    }
    EXPECT_EQ(ropen_join(a, b), ropen_join(b, a));
    EXPECT_EQ(ropen_meet(a, b), ropen_meet(b, a));
    EXPECT_EQ(ropen_join(ropen_join(a, b), c), ropen_join(a, ropen_join(b, c)));
    EXPECT_EQ(ropen_meet(ropen_meet(a, b), c), ropen_meet(a, ropen_meet(b, c)));
    EXPECT_EQ(ropen_meet(a, ropen_join(b, c)), ropen_join(ropen_meet(a, b), ropen_meet(a, c)));
    // Canonical form: sorted, separated.
    const auto& parts = a.components();
    for (std::size_t i = 1; i < parts.size(); ++i) EXPECT_TRUE(parts[i - 1].hi && parts[i].lo && *parts[i - 1].hi <= *parts[i].lo);
  }
}

// ---------------------------------------------------------------- Expr

TEST(Expr, ParseAndEvaluate) {
  EXPECT_EQ(eval(parse_expr("x*(1-x)"), Rat(1, 2)), Rat(1, 4));
  EXPECT_EQ(eval(parse_expr("-x^2"), 2), -4);
  EXPECT_EQ(eval(parse_expr("2 - x - 1"), 1), 0);
  EXPECT_EQ(eval(parse_expr("3/7 * x"), 7), 3);
  EXPECT_EQ(eval(parse_expr("0.25 + min(x, 1) + max(x, 1) + abs(-x)"), -2), Rat(5, 4));
  EXPECT_EQ(eval(parse_expr("(x - 1)^0"), 1), 1);
  for (const char* bad : {"", "x/2", "x +", "y", "min(x)", "abs x", "x^", "(x", "2x", "x^99999"})
    EXPECT_THROW(parse_expr(bad), ParseError) << bad;
}

TEST(Expr, ErrorLocation) {
  try {
    parse_expr("x + x/2");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 6u);
  }
}

namespace {

Expr random_expr(std::mt19937& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 1 : 9), small(0, 7), den(1, 4);
  switch (pick(rng)) {
    case 0: return ex::var();
    case 1: return ex::lit(Rat(small(rng), den(rng)));
    case 2: return ex::unary(Op::Neg, random_expr(rng, depth - 1));
    case 3: return ex::binary(Op::Add, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 4: return ex::binary(Op::Sub, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 5: return ex::binary(Op::Mul, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 6: return ex::binary(Op::Min, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 7: return ex::binary(Op::Max, random_expr(rng, depth - 1), random_expr(rng, depth - 1));
    case 8: return ex::unary(Op::Abs, random_expr(rng, depth - 1));
    default: return ex::pow(random_expr(rng, depth - 1), static_cast<std::uint32_t>(small(rng) % 4));
  }
}

}  // namespace

TEST(Expr, PrintParseRoundTrip) {
  std::mt19937 rng(11);
  for (int i = 0; i < 500; ++i) {
    auto e = random_expr(rng, 4);
    auto text = to_string(e);
    Expr back;
    ASSERT_NO_THROW(back = parse_expr(text)) << text;
    EXPECT_TRUE(structurally_equal(e, back)) << text << " -> " << to_string(back);
  }
}

TEST(EvalInterval, Examples) {
  EXPECT_EQ(eval_interval(parse_expr("7/3"), RatInterval(-5, 9)), RatInterval::point(Rat(7, 3)));
  auto v = eval_interval(parse_expr("x*(1-x)"), RatInterval(0, 1));
  EXPECT_TRUE(v.contains(RatInterval(0, Rat(1, 4))));
  EXPECT_EQ(v, RatInterval(0, 1));
  EXPECT_EQ(eval_interval(parse_expr("abs(x - 1/3)"), RatInterval::point(Rat(1, 3))), RatInterval::point(0));
  EXPECT_EQ(eval_interval(parse_expr("x^2"), RatInterval(-1, 2)), RatInterval(0, 4));
  EXPECT_EQ(eval_interval(parse_expr("x^3"), RatInterval(-1, 2)), RatInterval(-1, 8));
}

TEST(EvalInterval, EnclosureOnSamples) {
  std::mt19937_64 rng(99);
  std::mt19937 erng(3);
  std::vector<Expr> exprs;
  for (const auto& c : oracle::corpus()) exprs.push_back(parse_expr(c.expr));
  for (int i = 0; i < 20; ++i) exprs.push_back(random_expr(erng, 3));
  for (const auto& e : exprs) {
    for (const auto& box : {RatInterval(0, 1), RatInterval(-2, Rat(1, 3)), RatInterval(Rat(3, 2), 2)}) {
      auto enc = eval_interval(e, box);
      for (const auto& x : oracle::sample(rng, box.lo, box.hi, 1000))
        ASSERT_TRUE(enc.contains(eval(e, x))) << to_string(e) << " at " << to_string(x);
    }
  }
}

TEST(EvalInterval, MonotoneAndExactOnPoints) {
  std::mt19937 rng(8);
  std::mt19937_64 rng64(8);
  for (int i = 0; i < 200; ++i) {
    auto e = random_expr(rng, 3);
    auto xs = oracle::sample(rng64, -2, 2, 4);
    std::sort(xs.begin(), xs.end());
    RatInterval outer(xs[0], xs[3]), inner(xs[1], xs[2]);
    EXPECT_TRUE(eval_interval(e, outer).contains(eval_interval(e, inner))) << to_string(e);
    EXPECT_EQ(eval_interval(e, RatInterval::point(xs[1])), RatInterval::point(eval(e, xs[1]))) << to_string(e);
  }
}

// ---------------------------------------------------------------- Domain

TEST(Domain, Parse) {
  auto d = parse_domain("[2,3] u [0, 1]");
  ASSERT_EQ(d.parts().size(), 2u);
  EXPECT_EQ(d.parts()[0], RatInterval(0, 1));
  EXPECT_EQ(parse_domain("[-1/2,0.5]").parts()[0], RatInterval(Rat(-1, 2), Rat(1, 2)));
  EXPECT_EQ(parse_domain("[1,1]").parts()[0], RatInterval::point(1));
  for (const char* bad : {"", "[0,1", "[1,0]", "[0,1] u", "[0,1] [2,3]", "[0,2] u [1,3]", "[0,1] u [1,2]", "[a,1]"})
    EXPECT_THROW(parse_domain(bad), InvalidInput) << bad;
}

// ---------------------------------------------------------------- semidecisions

TEST(PositiveWitness, Examples) {
  auto w = positive_witness(parse_expr("x"), parse_domain("[0,2]"), 0, 8);
  ASSERT_TRUE(w.found());
  EXPECT_GT(eval_interval(parse_expr("x"), *w.witness).lo, 0);
  for (std::uint64_t b : {1u, 16u, 1024u}) {
    EXPECT_FALSE(positive_witness(parse_expr("x*(1-x)"), parse_domain("[0,1]"), Rat(1, 4), b).found());
    EXPECT_FALSE(positive_witness(parse_expr("0"), parse_domain("[0,1]"), 1, b).found());
  }
  EXPECT_THROW(positive_witness(parse_expr("x"), parse_domain("[0,1]"), 0, 0), InvalidInput);
}

TEST(CoverCertificate, Examples) {
  auto c = cover_certificate(parse_expr("0"), parse_domain("[0,1]"), 1, 4);
  ASSERT_TRUE(c.certified());
  EXPECT_EQ(c.pieces.size(), 1u);
  auto h = cover_certificate(parse_expr("x*(1-x)"), parse_domain("[0,1]"), Rat(1, 2), 64);
  ASSERT_TRUE(h.certified());
  EXPECT_LE(h.subdivisions, 7u);
  EXPECT_TRUE(tiles_exactly(h.pieces, parse_domain("[0,1]")));
  auto x = cover_certificate(parse_expr("x"), parse_domain("[0,1]"), 1, 1024);
  EXPECT_FALSE(x.certified());
  EXPECT_EQ(x.status, CoverStatus::Refuted);
  EXPECT_EQ(x.refuted_at, Rat(1));
}

TEST(Semidecisions, CertificatesRecheckOnCorpus) {
  for (const auto& c : oracle::corpus()) {
    auto e = parse_expr(c.expr);
    auto d = parse_domain(c.domain);
    auto g = oracle::grid_max(e, d, 256);
    for (const Rat& q : std::vector<Rat>{g.lo - 1, g.lo - Rat(1, 100), g.hi + Rat(1, 100), g.hi + 1}) {
      auto w = positive_witness(e, d, q, 4096);
      if (w.found()) {
        EXPECT_TRUE(d.contains(*w.witness));
        EXPECT_GT(eval_interval(e, *w.witness).lo, q);
        for (const auto& x : {w.witness->lo, w.witness->mid(), w.witness->hi}) EXPECT_GT(eval(e, x), q);
        EXPECT_LT(q, g.hi) << c.expr;  // a witness above the true max is impossible
      }
      auto cc = cover_certificate(e, d, q, 4096);
      if (cc.certified()) {
        EXPECT_TRUE(tiles_exactly(cc.pieces, d)) << c.expr;
        for (const auto& p : cc.pieces) EXPECT_LT(eval_interval(e, p).hi, q);
        EXPECT_GT(q, g.lo) << c.expr;
      }
      // Strictly away from the max, both sides must certify.
      if (q < g.lo) EXPECT_TRUE(w.found()) << c.expr << " q=" << to_string(q);
      if (q > g.hi) EXPECT_TRUE(cc.certified()) << c.expr << " q=" << to_string(q);
    }
  }
}

TEST(Locate, Examples) {
  auto a = locate(parse_expr("x"), parse_domain("[0,2]"), 0, 1);
  EXPECT_EQ(a.branch, Branch::Left);
  ASSERT_TRUE(a.witness);
  auto b = locate(parse_expr("0"), parse_domain("[0,1]"), -1, 1);
  EXPECT_EQ(b.branch, Branch::Left);
  EXPECT_EQ(b.budget, 1u);
  EXPECT_EQ(locate(parse_expr("x*(1-x)"), parse_domain("[0,1]"), Rat(1, 8), Rat(1, 2)).branch, Branch::Left);
  auto r = locate(parse_expr("x*(1-x)"), parse_domain("[0,1]"), Rat(3, 10), Rat(1, 2));
  EXPECT_EQ(r.branch, Branch::Right);
  EXPECT_TRUE(tiles_exactly(r.cover, parse_domain("[0,1]")));
  EXPECT_THROW(locate(parse_expr("x"), parse_domain("[0,1]"), 1, 1), InvalidInput);
  Limits tiny;
  tiny.locate_max_budget = 2;
  EXPECT_THROW(locate(parse_expr("x*(1-x)"), parse_domain("[0,1]"), Rat(1, 4) - Rat(1, 1000000), Rat(1, 4),
                      tiny),
               BudgetExhausted);
}

// ---------------------------------------------------------------- EVT

TEST(Evt, ConstantIsExact) {
  auto r = evt_maximize(parse_expr("5"), parse_domain("[0,1]"), Rat(1, 10));
  EXPECT_EQ(r.enclosure.lower, 5);
  EXPECT_EQ(r.enclosure.upper, 5);
  EXPECT_TRUE(tiles_exactly(r.cover.intervals, parse_domain("[0,1]")));
}

TEST(Evt, AgreesWithGridOracle) {
  struct Case {
    const char* expr;
    const char* eps;
    Rat max;
  };
  for (const auto& c : {Case{"x*(1-x)", "1/1000000", Rat(1, 4)}, Case{"min(x, 1-x)", "1/10000", Rat(1, 2)},
                        Case{"abs(x - 1/3)", "1/10000", Rat(2, 3)}}) {
    auto e = parse_expr(c.expr);
    auto d = parse_domain("[0,1]");
    auto eps = R(c.eps);
    auto r = evt_maximize(e, d, eps, {}, true);
    auto g = oracle::grid_max(e, d, 4096);
    ASSERT_TRUE(r.complete);
    EXPECT_LE(r.enclosure.upper - r.enclosure.lower, eps);
    EXPECT_LE(r.enclosure.lower, g.hi) << c.expr;
    EXPECT_GE(r.enclosure.upper, g.lo) << c.expr;
    EXPECT_LE(r.enclosure.lower, c.max);
    EXPECT_GE(r.enclosure.upper, c.max);
    EXPECT_LT(r.nodes_expanded, 100000u);
    EXPECT_TRUE(audit_trace(e, d, r).ok()) << audit_trace(e, d, r).failure;
    // The maximizer of the grid lies in the cover.
    bool covered = false;
    for (const auto& i : r.cover.intervals) covered = covered || i.contains(g.argmax);
    EXPECT_TRUE(covered) << c.expr;
  }
}

TEST(Evt, CorpusConvergesAndAudits) {
  for (const auto& c : oracle::corpus()) {
    auto e = parse_expr(c.expr);
    auto d = parse_domain(c.domain);
    auto r = evt_maximize(e, d, Rat(1, 1000000), {}, true);
    ASSERT_TRUE(r.complete) << c.expr;
    auto g = oracle::grid_max(e, d, 1024);
    EXPECT_LE(r.enclosure.lower, g.hi) << c.expr;
    EXPECT_GE(r.enclosure.upper, g.lo) << c.expr;
    auto a = audit_trace(e, d, r);
    EXPECT_TRUE(a.ok()) << c.expr << ": " << a.failure;
    for (const auto& i : r.cover.intervals) {
      EXPECT_TRUE(d.contains(i));
      EXPECT_GE(eval_interval(e, i).hi, r.enclosure.lower);
      EXPECT_LE(i.width(), r.cover.delta);
    }
  }
}

TEST(Evt, Deterministic) {
  for (const auto& c : oracle::corpus()) {
    auto e = parse_expr(c.expr);
    auto d = parse_domain(c.domain);
    EXPECT_EQ(evt_maximize(e, d, Rat(1, 10000), {}, true), evt_maximize(e, d, Rat(1, 10000), {}, true));
  }
}

TEST(Evt, BudgetExhaustionKeepsSoundEnclosure) {
  Limits l;
  l.evt_node_budget = 5;
  auto e = parse_expr("x*(1-x)");
  auto d = parse_domain("[0,1]");
  auto r = evt_maximize(e, d, Rat(1, 1000000), l, true);
  EXPECT_FALSE(r.complete);
  EXPECT_EQ(r.nodes_expanded, 5u);
  EXPECT_LE(r.enclosure.lower, Rat(1, 4));
  EXPECT_GE(r.enclosure.upper, Rat(1, 4));
  EXPECT_TRUE(audit_trace(e, d, r).ok());
}

TEST(Evt, RejectsBadInput) {
  EXPECT_THROW(evt_maximize(parse_expr("x"), parse_domain("[0,1]"), 0), InvalidInput);
  EXPECT_THROW(Domain({}), InvalidInput);
}

TEST(Evt, CoverWidth) {
  EXPECT_EQ(cover_width(Rat(1, 1000000)), Rat(1, 1024));
  EXPECT_EQ(cover_width(Rat(1, 10)), Rat(1, 4));
  EXPECT_EQ(cover_width(Rat(2)), Rat(1));
}

// ---------------------------------------------------------------- cut_validate

TEST(CutValidate, Examples) {
  auto e = parse_expr("x*(1-x)");
  auto d = parse_domain("[0,1]");
  auto r = evt_maximize(e, d, Rat(1, 1000000), {}, true);
  const auto& enc = r.enclosure;
  auto rep = cut_validate(e, d, r,
                          {{enc.lower - 1, enc.upper + 1},
                           {enc.lower - 2, enc.lower - 1},
                           {Rat(1, 4) - Rat(1, 1000), Rat(1, 4) + Rat(1, 1000)}});
  EXPECT_TRUE(rep.ok());
  EXPECT_EQ(rep.probes[1].branch, Branch::Left);  // q <= lower forces Left
}

TEST(CutValidate, RandomProbesOnCorpus) {
  std::mt19937_64 rng(1234);
  for (const auto& c : oracle::corpus()) {
    auto e = parse_expr(c.expr);
    auto d = parse_domain(c.domain);
    auto r = evt_maximize(e, d, Rat(1, 10000), {}, true);
    std::vector<std::pair<Rat, Rat>> probes;
    auto pts = oracle::sample(rng, r.enclosure.lower - 1, r.enclosure.upper + 1, 60, 1000);
    for (std::size_t i = 0; i + 1 < pts.size(); i += 2) {
      Rat p = std::min(pts[i], pts[i + 1]), q = std::max(pts[i], pts[i + 1]);
      if (q - p < Rat(1, 1000)) q = p + Rat(1, 1000);
      probes.emplace_back(p, q);
    }
    auto rep = cut_validate(e, d, r, probes);
    EXPECT_EQ(rep.inconsistencies, 0u) << c.expr;
    EXPECT_TRUE(rep.ok()) << c.expr;
  }
}

TEST(CutValidate, DetectsForgedEnclosure) {
  auto e = parse_expr("x");
  auto d = parse_domain("[0,2]");
  auto r = evt_maximize(e, d, Rat(1, 100), {}, true);
  r.enclosure.upper = 1;  // true max is 2
  auto rep = cut_validate(e, d, r, {{Rat(3, 2), Rat(5, 2)}});
  EXPECT_EQ(rep.inconsistencies, 1u);
  r.enclosure.trace.push_back({r.enclosure.lower - 1, r.enclosure.upper});
  EXPECT_FALSE(audit_trace(e, d, r).lower_nondecreasing);
}
