#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ptop/dsl/builtins.hpp"
#include "ptop/dsl/compile.hpp"
#include "ptop/dsl/parser.hpp"
#include "ptop/dsl/printer.hpp"
#include "ptop/order/constructions.hpp"
#include "ptop/order/io.hpp"

using namespace ptop;
using namespace ptop::dsl;

namespace {

frame::PresentedFrame compile_frame(const TheoryAST& ast, const TruncationParams& t) {
  return frame::enumerate_frame(std::make_shared<const frame::FramePresentation>(compile(ast, t)));
}

frame::PresentedFrame builtin_frame(const std::string& name, const BuiltinParams& p = {}) {
  auto b = builtin(name, p);
  return compile_frame(b.ast, b.truncation);
}

TruncationParams trunc(const std::string& s) { return TruncationParams::parse(s); }

}  // namespace

// ---------------------------------------------------------------- parsing

TEST(ParseTheory, SingleAxiom) {
  auto ast = parse_theory("prop g; axiom true |- g;");
  EXPECT_EQ(ast.family_count(), 1u);
  ASSERT_EQ(ast.axioms.size(), 1u);
  EXPECT_TRUE(ast.axioms[0].lhs.atoms.empty());
  EXPECT_EQ(ast.axioms[0].rhs.terms.size(), 1u);
}

TEST(ParseTheory, CantorSource) {
  auto ast = parse_theory(kCantorSource);
  EXPECT_EQ(ast.family_count(), 2u);
  EXPECT_EQ(ast.axioms.size(), 2u);
  EXPECT_TRUE(ast.axioms[0].rhs.terms.empty());
  EXPECT_EQ(ast.props[0].binders[0].bound.param, std::optional<std::string>("N"));
}

TEST(ParseTheory, NegationRejectedWithLocation) {
  try {
    parse_theory("prop g;\naxiom true |- ~g;\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 15u);
  }
  EXPECT_THROW(parse_theory("prop g; axiom !g |- false;"), ParseError);
}

TEST(ParseTheory, ImplicationRejected) {
  try {
    parse_theory("prop g, h;\naxiom g -> h |- false;");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 9u);
  }
}

TEST(ParseTheory, ResolutionErrors) {
  EXPECT_THROW(parse_theory("prop z[i] for i<N; axiom z[j] |- false;"), ParseError);  // unbound
  EXPECT_THROW(parse_theory("prop z[i]; "), ParseError);                              // unbound in decl
  EXPECT_THROW(parse_theory("prop g; axiom h |- false;"), ParseError);                // undeclared
  EXPECT_THROW(parse_theory("prop z[i] for i<N; axiom z |- false;"), ParseError);     // arity
  EXPECT_THROW(parse_theory("prop g; prop g;"), ParseError);                           // duplicate
  EXPECT_THROW(parse_theory("prop g axiom true |- g;"), ParseError);                   // missing ;
  EXPECT_THROW(parse_theory("prop true;"), ParseError);                                // reserved
}

TEST(ParseTheory, ConditionsAndAnyBinders) {
  auto ast = parse_theory(kSurjectionSource);
  const auto& ax = ast.axioms[0];
  ASSERT_EQ(ax.conditions.size(), 2u);
  EXPECT_TRUE(ax.conditions[0].binder);
  EXPECT_FALSE(ax.conditions[1].binder);
  EXPECT_EQ(ax.conditions[1].op, CmpOp::Ne);
  EXPECT_TRUE(ast.axioms[1].rhs.terms[0].any);
}

// ---------------------------------------------------------------- round trip

namespace {

TheoryAST random_theory(std::mt19937& rng) {
  auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
  TheoryAST t;
  const std::vector<std::string> vars{"i", "j", "k"};
  const std::vector<std::string> params{"N", "M"};
  std::vector<std::pair<std::string, std::size_t>> fams;
  std::size_t nd = 1 + pick(2);
  for (std::size_t d = 0; d < nd; ++d) {
    PropDecl decl;
    // Each declaration owns one index variable so ranges never clash.
    Binder b{vars[d], pick(2) ? Bound{params[pick(2)], 0} : Bound{std::nullopt, 1 + pick(3)}, {}};
    std::size_t nf = 1 + pick(2);
    for (std::size_t f = 0; f < nf; ++f) {
      Family fam{"p" + std::to_string(fams.size()), {}, {}};
      if (pick(2)) fam.index_vars.push_back(vars[d]);
      fams.emplace_back(fam.name, fam.index_vars.size());
      decl.families.push_back(fam);
    }
    bool used = false;
    for (const auto& f : decl.families) used = used || !f.index_vars.empty();
    if (used) decl.binders.push_back(b);
    if (used || pick(2) == 0) t.props.push_back(decl);
    else t.props.push_back(PropDecl{decl.families, {}});
  }
  std::vector<std::string> globals;
  for (const auto& d : t.props)
    for (const auto& b : d.binders) globals.push_back(b.var);
  auto atom = [&](const std::string& extra) {
    auto [name, ar] = fams[pick(fams.size())];
    Atom a{name, {}, {}};
    for (std::size_t k = 0; k < ar; ++k) {
      if (!extra.empty() && pick(2)) a.args.push_back(IndexTerm::variable(extra));
      else if (!globals.empty() && pick(2)) a.args.push_back(IndexTerm::variable(globals[pick(globals.size())]));
      else a.args.push_back(IndexTerm::literal(0));
    }
    return a;
  };
  std::size_t na = pick(4);
  for (std::size_t a = 0; a < na; ++a) {
    Axiom ax;
    for (std::size_t k = pick(3); k > 0; --k) ax.lhs.atoms.push_back(atom(""));
    for (std::size_t k = pick(3); k > 0; --k) {
      Disjunct d;
      if (pick(2)) d.any = Binder{"w", Bound{std::nullopt, 2}, {}};
      for (std::size_t m = 1 + pick(2); m > 0; --m) d.conj.atoms.push_back(atom(d.any ? "w" : ""));
      ax.rhs.terms.push_back(d);
    }
    if (pick(2)) {
      Condition c;
      c.binder = Binder{"y", Bound{"M", 0}, {}};
      ax.conditions.push_back(c);
      if (!globals.empty()) {
        Condition cmp;
        cmp.lhs = IndexTerm::variable("y");
        cmp.op = static_cast<CmpOp>(pick(4));
        cmp.rhs = IndexTerm::variable(globals[0]);
        ax.conditions.push_back(cmp);
      }
    }
    t.axioms.push_back(ax);
  }
  return t;
}

}  // namespace

TEST(PrintTheory, RoundTripCorpus) {
  for (const char* src : {kSierpinskiSource, kCantorSource, kSurjectionSource,
                          "prop a, b; axiom a & b |- false; axiom true |- a | b | a & b;"}) {
    auto ast = parse_theory(src);
    EXPECT_EQ(parse_theory(print_theory(ast)), ast) << src;
  }
}

TEST(PrintTheory, RoundTripRandom) {
  std::mt19937 rng(17);
  for (int i = 0; i < 300; ++i) {
    auto t = random_theory(rng);
    auto text = print_theory(t);
    TheoryAST back;
    ASSERT_NO_THROW(back = parse_theory(text)) << text;
    EXPECT_EQ(back, t) << text;
    EXPECT_EQ(print_theory(back), text);
  }
}

// ---------------------------------------------------------------- compile

TEST(Compile, SierpinskiIsFreeOnOneGenerator) {
  auto b = builtin("sierpinski");
  EXPECT_EQ(b.ast.family_count(), 1u);
  EXPECT_TRUE(b.ast.axioms.empty());
  auto pf = compile_frame(b.ast, b.truncation);
  EXPECT_EQ(pf.frame->size(), 3u);
  EXPECT_EQ(frame::points(*pf.frame).size(), 2u);
}

TEST(Compile, CantorDepthTwo) {
  auto raw = compile_raw(parse_theory(kCantorSource), trunc("N=2"));
  EXPECT_EQ(raw.generators(), (std::vector<std::string>{"u0", "u1", "z0", "z1"}));
  EXPECT_EQ(raw.relations().size(), 4u);
  auto pf = compile_frame(parse_theory(kCantorSource), trunc("N=2"));
  EXPECT_EQ(frame::points(*pf.frame).size(), 4u);
}

TEST(Compile, CantorPointCounts) {
  for (std::uint64_t n = 1; n <= 3; ++n) {
    BuiltinParams p;
    p.depth = n;
    EXPECT_EQ(frame::points(*builtin_frame("cantor", p).frame).size(), std::size_t{1} << n);
  }
}

TEST(Compile, StoneSpectrumMatchesPrimeFilters) {
  auto chain = order::parse_lattice("elements: 0 m 1\nleq: 0<m<1\n");
  BuiltinParams p;
  p.lattice = &chain;
  EXPECT_EQ(frame::points(*builtin_frame("stone", p).frame).size(), 2u);
  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& poset : oracle::all_posets(n)) {
      auto l = order::downset_lattice(poset).lattice;
      if (l.size() > 8) continue;
      p.lattice = &l;
      EXPECT_EQ(frame::points(*builtin_frame("stone", p).frame).size(),
                order::prime_filters(l).size());
    }
}

TEST(Compile, SurjectionTwoToTwo) {
  BuiltinParams p;
  p.n = 2;
  p.codomain = 2;
  auto pf = builtin_frame("surjection", p);
  auto ms = models(pf);
  ASSERT_EQ(ms.size(), 2u);
  for (auto m : ms) {
    auto names = true_props(*pf.presentation, m);
    // f(0) and f(1) hit both values.
    EXPECT_EQ(names.size(), 2u);
  }
}

TEST(Compile, SurjectionOneToTwoHasNoModels) {
  BuiltinParams p;
  p.n = 1;
  p.codomain = 2;
  auto pf = builtin_frame("surjection", p);
  EXPECT_TRUE(models(pf).empty());
  // The truncated axioms give top <= f0_0 & f0_1 <= bot, so the frame is
  // trivial at this truncation; the check is reported, not assumed.
  EXPECT_EQ(pf.frame->size(), 1u);
}

TEST(Compile, EmptyDisjunctionIsBottom) {
  auto ast = parse_theory("prop z[i] for i<N; axiom z[i] |- any j<0: z[j];");
  auto p = compile_raw(ast, trunc("N=2"));
  for (const auto& r : p.relations()) EXPECT_TRUE(r.rhs.empty());
}

TEST(Compile, SideConditionsFilterInstances) {
  auto ast = parse_theory("prop l[p] for p<N; axiom l[q] |- l[p] for q<N, p < q;");
  auto p = compile_raw(ast, trunc("N=3"));
  EXPECT_EQ(p.relations().size(), 3u);  // (1,0), (2,0), (2,1)
}

TEST(Compile, Errors) {
  auto cantor = parse_theory(kCantorSource);
  EXPECT_THROW(compile(cantor, TruncationParams{}), InvalidInput);
  EXPECT_THROW(compile(cantor, trunc("N=5")), CapOverflow);
  EXPECT_THROW(trunc("N=0"), InvalidInput);
  EXPECT_THROW(trunc("N"), InvalidInput);
  EXPECT_THROW(trunc("N=x"), InvalidInput);
  EXPECT_THROW(compile(parse_theory("prop z[i] for i<2; axiom z[5] |- false;"), {}), InvalidInput);
  EXPECT_THROW(builtin("nope"), InvalidInput);
  EXPECT_THROW(builtin("stone"), InvalidInput);
}

// ---------------------------------------------------------------- invariants

TEST(Invariants, ModelSoundnessAndCompleteness) {
  std::vector<std::pair<TheoryAST, TruncationParams>> cases;
  for (std::uint64_t n = 1; n <= 3; ++n) {
    BuiltinParams p;
    p.depth = n;
    auto b = builtin("cantor", p);
    cases.emplace_back(b.ast, b.truncation);
  }
  for (auto [n, x] : {std::pair{2, 2}, std::pair{1, 2}, std::pair{2, 1}, std::pair{3, 2}}) {
    BuiltinParams p;
    p.n = n;
    p.codomain = x;
    auto b = builtin("surjection", p);
    cases.emplace_back(b.ast, b.truncation);
  }
  for (const auto& [ast, t] : cases) {
    auto raw = compile_raw(ast, t);
    auto pf = compile_frame(ast, t);
    auto ms = models(pf);
    for (auto m : ms) EXPECT_TRUE(satisfies(raw, m));
    // Every satisfying assignment is a point.
    std::size_t count = 0;
    for (std::uint32_t m = 0; m < (1u << raw.generator_count()); ++m) count += satisfies(raw, m);
    EXPECT_EQ(ms.size(), count);
  }
}

TEST(Invariants, CantorTruncationIsMonotone) {
  // The frame for N embeds into the frame for N+1 by a frame hom fixing
  // the shared generators.
  for (std::uint64_t n = 1; n < 3; ++n) {
    BuiltinParams small, big;
    small.depth = n;
    big.depth = n + 1;
    auto a = builtin_frame("cantor", small);
    auto b = builtin_frame("cantor", big);
    std::vector<Elem> map;
    for (Elem e = 0; e < a.frame->size(); ++e) {
      Elem v = b.frame->bottom();
      for (auto m : a.ideal(e).generators()) {
        Elem w = b.frame->top();
        for (std::size_t g = 0; g < a.presentation->generator_count(); ++g)
          if ((m.gens >> g) & 1u) {
            auto gb = b.presentation->generator_index(a.presentation->generators()[g]);
            w = b.frame->meet(w, b.generator_embedding[gb]);
          }
        v = b.frame->join(v, w);
      }
      map.push_back(v);
    }
    auto h = frame::FrameHom::make(a.frame, b.frame, map);
    std::set<Elem> image(map.begin(), map.end());
    EXPECT_EQ(image.size(), a.frame->size());
    for (std::size_t g = 0; g < a.presentation->generator_count(); ++g) {
      auto gb = b.presentation->generator_index(a.presentation->generators()[g]);
      EXPECT_EQ(h(a.generator_embedding[g]), b.generator_embedding[gb]);
    }
  }
}
