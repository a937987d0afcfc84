#include <algorithm>
#include <random>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "ptop/order/constructions.hpp"
#include "ptop/order/io.hpp"

using namespace ptop;
using namespace ptop::order;

namespace {

const char* kChain2 = "elements: 0 1\nleq: 0<1\n";
const char* kChain3 = "elements: 0 m 1\nleq: 0<m<1\n";
const char* kBool4 = "elements: 0 a b 1\nleq: 0<a<1 0<b<1\n";
const char* kOne = "elements: 0\n";
const char* kM3 = "elements: 0 a b c 1\nleq: 0<a<1 0<b<1 0<c<1\n";

DistLattice dist(const char* text) { return DistLattice::make(parse_lattice(text)); }

Bits named(const Lattice& l, std::initializer_list<const char*> names) {
  Bits b(l.size());
  for (auto n : names) b.set(l.require(n));
  return b;
}

std::vector<DistLattice> corpus() {
  std::vector<DistLattice> out{dist(kOne), dist(kChain2), dist(kChain3), dist(kBool4)};
  for (std::size_t n = 0; n <= 3; ++n)
    for (const auto& p : oracle::all_posets(n)) out.push_back(downset_lattice(p).lattice);
  return out;
}

}  // namespace

TEST(Poset, TransitiveClosureAndHasse) {
  auto p = parse_poset("elements: c a b\nleq: a<b b<c\n");
  EXPECT_EQ(p.names(), (std::vector<std::string>{"a", "b", "c"}));
  EXPECT_TRUE(p.leq(p.require("a"), p.require("c")));
  EXPECT_FALSE(p.leq(p.require("c"), p.require("a")));
  EXPECT_EQ(p.hasse_edges().size(), 2u);
  EXPECT_FALSE(p.violation());
}

TEST(Poset, RejectsCyclesAndUnknownNames) {
  EXPECT_THROW(parse_poset("elements: a b\nleq: a<b b<a\n"), InvalidInput);
  EXPECT_THROW(parse_poset("elements: a\nleq: a<z\n"), InvalidInput);
  EXPECT_THROW(parse_poset("leq: a<b\n"), ParseError);
  EXPECT_THROW(parse_poset("elements: a\nfoo: a\n"), ParseError);
}

TEST(Lattice, RejectsNonLatticeOrders) {
  // Two incomparable maximal elements have no join.
  EXPECT_THROW(parse_lattice("elements: 0 a b\nleq: 0<a 0<b\n"), InvalidInput);
}

TEST(Lattice, M3IsNotDistributive) {
  auto l = parse_lattice(kM3);
  auto t = l.distributivity_violation();
  ASSERT_TRUE(t);
  auto [a, b, c] = *t;
  EXPECT_NE(l.meet(a, l.join(b, c)), l.join(l.meet(a, b), l.meet(a, c)));
  EXPECT_THROW(DistLattice::make(l), NotDistributive);
}

TEST(DownsetLattice, Examples) {
  auto empty = downset_lattice(Poset::from_relation({}, {}));
  EXPECT_EQ(empty.lattice.size(), 1u);

  auto anti = downset_lattice(parse_poset("elements: a b\n"));
  EXPECT_EQ(anti.lattice.size(), 4u);
  std::vector<std::string> names;
  for (Elem e = 0; e < anti.lattice.size(); ++e) names.push_back(anti.lattice.name(e));
  EXPECT_EQ(names, (std::vector<std::string>{"{}", "{a}", "{b}", "{a,b}"}));

  auto chain = downset_lattice(parse_poset("elements: a b\nleq: a<b\n"));
  EXPECT_EQ(chain.lattice.size(), 3u);
  EXPECT_TRUE(chain.lattice.index("{a}"));
  EXPECT_FALSE(chain.lattice.index("{b}"));
}

TEST(DownsetLattice, AgreesWithBruteForceAndIsDistributive) {
  for (std::size_t n = 0; n <= 4; ++n) {
    for (const auto& p : oracle::all_posets(n)) {
      auto d = downset_lattice(p);
      auto brute = oracle::downsets(p);
      ASSERT_EQ(d.members.size(), brute.size());
      for (const auto& s : brute) EXPECT_NO_THROW(d.of(s));
      EXPECT_FALSE(d.lattice.distributivity_violation());
      // meet = intersection, join = union
      for (Elem a = 0; a < d.lattice.size(); ++a)
        for (Elem b = 0; b < d.lattice.size(); ++b) {
          EXPECT_EQ(d.members[d.lattice.meet(a, b)], d.members[a] & d.members[b]);
          EXPECT_EQ(d.members[d.lattice.join(a, b)], d.members[a] | d.members[b]);
        }
    }
  }
}

TEST(DownsetLattice, CapOverflow) {
  std::vector<std::string> names;
  for (int i = 0; i < 17; ++i) names.push_back("e" + std::to_string(i));
  EXPECT_THROW(downset_lattice(Poset::from_relation(names, {})), CapOverflow);
  Limits small;
  small.max_poset_elements = 2;
  EXPECT_THROW(downset_lattice(parse_poset("elements: a b c\n"), small), CapOverflow);
}

TEST(KFinJoin, Examples) {
  auto b4 = dist(kBool4);
  EXPECT_EQ(kfin_join(b4, KFinSet<std::string>{}), b4.bottom());
  EXPECT_EQ(kfin_join(b4, KFinSet<std::string>{"a", "a", "b"}), b4.top());
  EXPECT_EQ(kfin_join(b4, KFinSet<std::string>{"a"}), b4.require("a"));
  EXPECT_THROW(kfin_join(b4, KFinSet<std::string>{"q"}), InvalidInput);
}

TEST(KFinJoin, InvariantUnderPermutationAndDuplication) {
  std::mt19937 rng(7);
  for (const auto& l : corpus()) {
    for (int trial = 0; trial < 20; ++trial) {
      std::uniform_int_distribution<Elem> pick(0, static_cast<Elem>(l.size() - 1));
      std::vector<Elem> items(rng() % 5);
      for (auto& x : items) x = pick(rng);
      auto shuffled = items;
      std::shuffle(shuffled.begin(), shuffled.end(), rng);
      if (!items.empty()) shuffled.push_back(items.front());
      KFinSet<Elem> a(items), b(shuffled);
      EXPECT_EQ(a, b);
      EXPECT_EQ(kfin_join(l, a), kfin_join(l, b));
      EXPECT_EQ(kfin_join(l, a), l.join_all(std::span<const Elem>(items)));
    }
  }
}

TEST(KFinSet, KeepsListingButComparesCanonically) {
  KFinSet<std::string> s{"b", "a", "b"};
  EXPECT_EQ(s.items().size(), 3u);
  EXPECT_EQ(s.canonical(), (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(s.contains("a"));
  EXPECT_EQ(s.unite(KFinSet<std::string>{"c"}).size(), 3u);
}

TEST(FreeJoinSemilattice, SizesAndUniversalExtension) {
  EXPECT_EQ(free_join_semilattice({}).lattice.size(), 1u);
  auto f2 = free_join_semilattice({"b", "a"});
  EXPECT_EQ(f2.lattice.size(), 4u);
  EXPECT_EQ(f2.lattice.join(f2.of({"a"}), f2.of({"b"})), f2.of({"a", "b"}));

  auto f1 = free_join_semilattice({"a"});
  auto target = dist(kChain3);
  auto ext = f1.extend(target, {{"a", target.require("m")}});
  EXPECT_EQ(ext[f1.of({"a"})], target.require("m"));
  EXPECT_EQ(ext[f1.of({})], target.bottom());

  // Join preservation of the extension on the 2-generator case.
  auto ext2 = f2.extend(target, {{"a", target.require("m")}, {"b", target.top()}});
  for (Elem x = 0; x < f2.lattice.size(); ++x)
    for (Elem y = 0; y < f2.lattice.size(); ++y)
      EXPECT_EQ(ext2[f2.lattice.join(x, y)], target.join(ext2[x], ext2[y]));
  EXPECT_THROW(f2.extend(target, {{"a", 0}}), InvalidInput);
}

TEST(JoinIrreducibles, Examples) {
  auto c2 = join_irreducibles(dist(kChain2));
  EXPECT_EQ(c2.poset.names(), std::vector<std::string>{"1"});

  auto b4 = join_irreducibles(dist(kBool4));
  EXPECT_EQ(b4.poset.names(), (std::vector<std::string>{"a", "b"}));
  EXPECT_TRUE(b4.poset.hasse_edges().empty());

  auto c3 = join_irreducibles(dist(kChain3));
  ASSERT_EQ(c3.poset.size(), 2u);
  EXPECT_TRUE(c3.poset.leq(c3.poset.require("m"), c3.poset.require("1")));
}

TEST(Birkhoff, Examples) {
  auto c3 = birkhoff_iso(dist(kChain3));
  EXPECT_EQ(c3.downsets.lattice.size(), 3u);
  auto b4 = birkhoff_iso(dist(kBool4));
  EXPECT_EQ(b4.downsets.lattice.size(), 4u);
  EXPECT_TRUE(b4.irreducibles.poset.hasse_edges().empty());
  auto one = birkhoff_iso(dist(kOne));
  EXPECT_EQ(one.downsets.lattice.size(), 1u);
  EXPECT_EQ(one.to_downset, std::vector<Elem>{0});
}

TEST(Birkhoff, RoundTripsOnCorpus) {
  for (const auto& l : corpus()) {
    auto iso = birkhoff_iso(l);
    for (Elem a = 0; a < l.size(); ++a) EXPECT_EQ(iso.from_downset[iso.to_downset[a]], a);
    for (Elem d = 0; d < iso.from_downset.size(); ++d)
      EXPECT_EQ(iso.to_downset[iso.from_downset[d]], d);
  }
}

TEST(Birkhoff, ReportsNonDistributiveWitness) {
  auto m3 = parse_lattice(kM3);
  try {
    birkhoff_iso(m3);
    FAIL() << "expected NotDistributive";
  } catch (const NotDistributive& e) {
    const auto& w = e.witness();
    Elem a = m3.require(w.a), b = m3.require(w.b), c = m3.require(w.c);
    EXPECT_NE(m3.meet(a, m3.join(b, c)), m3.join(m3.meet(a, b), m3.meet(a, c)));
  }
}

TEST(PrimeFilters, Examples) {
  EXPECT_TRUE(prime_filters(dist(kOne)).empty());

  auto c3 = dist(kChain3);
  auto pf = prime_filters(c3);
  ASSERT_EQ(pf.size(), 2u);
  EXPECT_EQ(pf[0], named(c3, {"1"}));
  EXPECT_EQ(pf[1], named(c3, {"m", "1"}));

  auto b4 = dist(kBool4);
  auto pf4 = prime_filters(b4);
  ASSERT_EQ(pf4.size(), 2u);
  EXPECT_EQ(pf4[0], named(b4, {"a", "1"}));
  EXPECT_EQ(pf4[1], named(b4, {"b", "1"}));
}

TEST(PrimeFilters, MatchBruteForceAndJoinIrreducibles) {
  for (const auto& l : corpus()) {
    auto pf = prime_filters(l);
    auto brute = oracle::prime_filters(l);
    std::sort(brute.begin(), brute.end(), canonical_less);
    EXPECT_EQ(pf, brute);

    // j ↦ ↑j is a bijection from join-irreducibles onto prime filters.
    auto irr = join_irreducibles(l);
    ASSERT_EQ(pf.size(), irr.elems.size());
    for (Elem j : irr.elems)
      EXPECT_NE(std::find(pf.begin(), pf.end(), l.order().up(j)), pf.end());
  }
}

TEST(IdealCompletion, Examples) {
  auto c2 = ideal_completion(dist(kChain2));
  EXPECT_EQ(c2.ideals.size(), 2u);
  EXPECT_TRUE(c2.principal_is_iso);
  EXPECT_EQ(ideal_completion(dist(kOne)).ideals.size(), 1u);
  auto b4 = ideal_completion(dist(kBool4));
  EXPECT_EQ(b4.ideals.size(), 4u);
  EXPECT_TRUE(b4.principal_is_iso);
}

TEST(IdealCompletion, IsoToInputAndMatchesBruteForce) {
  for (const auto& l : corpus()) {
    auto ic = ideal_completion(l);
    EXPECT_TRUE(ic.principal_is_iso);
    auto brute = oracle::ideals(l);
    EXPECT_EQ(ic.members.size(), brute.size());
    EXPECT_FALSE(ic.ideals.distributivity_violation());
  }
  std::vector<std::string> names;
  for (int i = 0; i < 17; ++i) names.push_back("c" + std::to_string(100 + i));
  std::vector<std::pair<std::string, std::string>> chain;
  for (int i = 0; i + 1 < 17; ++i) chain.emplace_back(names[i], names[i + 1]);
  auto big = Lattice::from_poset(Poset::from_relation(names, chain));
  EXPECT_THROW(ideal_completion(big), CapOverflow);
}

TEST(IsDirected, Examples) {
  auto c3 = dist(kChain3);
  EXPECT_FALSE(is_directed(c3, Bits(c3.size())));
  EXPECT_TRUE(is_directed(c3, named(c3, {"0", "m", "1"})));
  auto b4 = dist(kBool4);
  EXPECT_FALSE(is_directed(b4, named(b4, {"a", "b"})));
  EXPECT_TRUE(is_directed(b4, named(b4, {"a", "b", "1"})));
}

TEST(OrderIo, JsonExport) {
  auto p = parse_poset(kBool4);
  auto j = poset_to_json(p);
  EXPECT_EQ(j["elements"].size(), 4u);
  EXPECT_EQ(j["hasse_edges"].size(), 4u);
  EXPECT_EQ(parse_poset(poset_to_text(p)).hasse_edges(), p.hasse_edges());
}
