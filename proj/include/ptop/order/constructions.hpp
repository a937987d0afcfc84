#pragma once

#include <map>
#include <string>
#include <vector>

#include "ptop/bits.hpp"
#include "ptop/config.hpp"
#include "ptop/error.hpp"
#include "ptop/order/closure.hpp"
#include "ptop/order/kfin.hpp"
#include "ptop/order/lattice.hpp"
#include "ptop/order/poset.hpp"

namespace ptop::order {

namespace detail {

inline std::string set_name(const std::vector<std::string>& names, const Bits& s) {
  std::string out = "{";
  bool first = true;
  for_each_bit(s, [&](Elem e) {
    if (!first) out += ",";
    out += names[e];
    first = false;
  });
  return out + "}";
}

inline std::vector<std::string> set_names(const std::vector<std::string>& names,
                                          const std::vector<Bits>& sets) {
  std::vector<std::string> out;
  out.reserve(sets.size());
  for (const Bits& s : sets) out.push_back(set_name(names, s));
  return out;
}

inline Elem find_set(const std::vector<Bits>& sets, const Bits& s) {
  auto it = std::lower_bound(sets.begin(), sets.end(), s, canonical_less);
  if (it == sets.end() || *it != s) throw Error("set not found in closure system");
  return static_cast<Elem>(it - sets.begin());
}

}  // namespace detail

/// The lattice of downsets of a poset together with each element's members.
struct DownsetLattice {
  DistLattice lattice;
  std::vector<Bits> members;  // members[e] ⊆ poset elements

  Elem of(const Bits& downset) const { return detail::find_set(members, downset); }
};

inline DownsetLattice downset_lattice(const Poset& p, const Limits& limits = {}) {
  if (p.size() > limits.max_poset_elements)
    throw CapOverflow("poset", p.size(), limits.max_poset_elements);
  auto close = [&](const Bits& s) {
    Bits out(p.size());
    for_each_bit(s, [&](Elem e) { out |= p.down(e); });
    return out;
  };
  auto sets = enumerate_closed_sets(p.size(), close, limits.max_lattice_elements,
                                    "downset lattice");
  auto lat = Lattice::from_closed_sets(detail::set_names(p.names(), sets), sets,
                                       [](const Bits& s) { return s; });
  return {DistLattice::assume_distributive(std::move(lat)), std::move(sets)};
}

/// Join of a Kuratowski-finite subset; the empty subset joins to bottom.
inline Elem kfin_join(const Lattice& l, const KFinSet<Elem>& s) {
  Elem acc = l.bottom();
  for (Elem e : s) {
    if (e >= l.size()) throw InvalidInput("element index out of range");
    acc = l.join(acc, e);
  }
  return acc;
}

inline Elem kfin_join(const Lattice& l, const KFinSet<std::string>& s) {
  Elem acc = l.bottom();
  for (const auto& name : s) acc = l.join(acc, l.require(name));
  return acc;
}

/// The free join-semilattice on a finite set: its Kuratowski-finite subsets
/// under union (here materialized as a lattice, intersection being the meet).
struct FreeJoinSemilattice {
  std::vector<std::string> generators;  // sorted
  std::vector<Bits> subsets;
  DistLattice lattice;

  Elem of(const KFinSet<std::string>& s) const {
    Bits b(generators.size());
    for (const auto& g : s) {
      auto it = std::lower_bound(generators.begin(), generators.end(), g);
      if (it == generators.end() || *it != g)
        throw InvalidInput("unknown generator '" + g + "'");
      b.set(it - generators.begin());
    }
    return detail::find_set(subsets, b);
  }

  /// The unique join-preserving extension of `f` (generator -> element of
  /// `target`): a subset goes to the join of the images of its members.
  std::vector<Elem> extend(const Lattice& target,
                           const std::map<std::string, Elem>& f) const {
    std::vector<Elem> image(generators.size());
    for (std::size_t i = 0; i < generators.size(); ++i) {
      auto it = f.find(generators[i]);
      if (it == f.end())
        throw InvalidInput("map undefined on generator '" + generators[i] + "'");
      image[i] = it->second;
    }
    std::vector<Elem> out;
    out.reserve(subsets.size());
    for (const Bits& s : subsets) {
      Elem acc = target.bottom();
      for_each_bit(s, [&](Elem g) { acc = target.join(acc, image[g]); });
      out.push_back(acc);
    }
    return out;
  }
};

inline FreeJoinSemilattice free_join_semilattice(std::vector<std::string> g,
                                                 const Limits& limits = {}) {
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  if (g.size() > limits.max_poset_elements)
    throw CapOverflow("generator set", g.size(), limits.max_poset_elements);
  auto sets = enumerate_closed_sets(g.size(), [](const Bits& s) { return s; },
                                    limits.max_lattice_elements,
                                    "free join-semilattice");
  auto lat = Lattice::from_closed_sets(detail::set_names(g, sets), sets,
                                       [](const Bits& s) { return s; });
  return {std::move(g), std::move(sets),
          DistLattice::assume_distributive(std::move(lat))};
}

/// Join-irreducible elements and the order they inherit.
struct JoinIrreducibles {
  std::vector<Elem> elems;  // indices into the lattice, increasing
  Poset poset;
};

inline JoinIrreducibles join_irreducibles(const Lattice& l) {
  std::vector<Elem> keep;
  const std::size_t n = l.size();
  for (Elem j = 0; j < n; ++j) {
    if (j == l.bottom()) continue;
    bool irreducible = true;
    for (Elem a = 0; a < n && irreducible; ++a)
      for (Elem b = 0; b < n && irreducible; ++b)
        if (l.join(a, b) == j && a != j && b != j) irreducible = false;
    if (irreducible) keep.push_back(j);
  }
  auto poset = l.order().induced(keep);
  return {std::move(keep), std::move(poset)};
}

/// The Birkhoff representation: a ↦ {j irreducible | j <= a} and D ↦ ⋁D.
struct BirkhoffIso {
  JoinIrreducibles irreducibles;
  DownsetLattice downsets;
  std::vector<Elem> to_downset;    // lattice element -> downsets element
  std::vector<Elem> from_downset;  // downsets element -> lattice element
};

/// Builds both maps and checks that they are mutually inverse and monotone.
/// Throws NotDistributive (with a witness triple) when they are not.
inline BirkhoffIso birkhoff_iso(const Lattice& l, const Limits& limits = {}) {
  auto irr = join_irreducibles(l);
  auto downs = downset_lattice(irr.poset, limits);
  const std::size_t k = irr.elems.size();

  std::vector<Elem> to(l.size());
  for (Elem a = 0; a < l.size(); ++a) {
    Bits below(k);
    for (std::size_t i = 0; i < k; ++i)
      if (l.leq(irr.elems[i], a)) below.set(i);
    to[a] = downs.of(below);
  }
  std::vector<Elem> from(downs.members.size());
  for (Elem d = 0; d < from.size(); ++d) {
    Elem acc = l.bottom();
    for_each_bit(downs.members[d], [&](Elem i) { acc = l.join(acc, irr.elems[i]); });
    from[d] = acc;
  }

  bool ok = from.size() == l.size();
  for (Elem a = 0; ok && a < l.size(); ++a) ok = from[to[a]] == a;
  for (Elem d = 0; ok && d < from.size(); ++d) ok = to[from[d]] == d;
  for (Elem a = 0; ok && a < l.size(); ++a)
    for (Elem b = 0; ok && b < l.size(); ++b)
      if (l.leq(a, b) != downs.lattice.leq(to[a], to[b])) ok = false;
  if (!ok) {
    if (auto t = l.distributivity_violation()) throw NotDistributive(l.witness_names(*t));
    throw Error("Birkhoff maps are not inverse on a distributive lattice");
  }
  return {std::move(irr), std::move(downs), std::move(to), std::move(from)};
}

/// Checks the five prime-filter conditions for a subset F of l.
inline bool is_prime_filter(const Lattice& l, const Bits& f) {
  const std::size_t n = l.size();
  if (!f.test(l.top()) || f.test(l.bottom())) return false;
  for (Elem a = 0; a < n; ++a) {
    for (Elem b = 0; b < n; ++b) {
      if (f.test(a) && l.leq(a, b) && !f.test(b)) return false;
      if (f.test(a) && f.test(b) && !f.test(l.meet(a, b))) return false;
      if (f.test(l.join(a, b)) && !f.test(a) && !f.test(b)) return false;
    }
  }
  return true;
}

/// Prime filters, canonically ordered. A filter of a finite lattice is the
/// principal filter of its meet, so candidates are the sets ↑a.
inline std::vector<Bits> prime_filters(const Lattice& l) {
  std::vector<Bits> out;
  for (Elem a = 0; a < l.size(); ++a)
    if (is_prime_filter(l, l.order().up(a))) out.push_back(l.order().up(a));
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

/// The lattice of ideals (downsets containing bottom, closed under binary
/// joins) with the principal-ideal map a ↦ ↓a.
struct IdealCompletion {
  DistLattice ideals;
  std::vector<Bits> members;
  std::vector<Elem> principal;  // lattice element -> ideal
  bool principal_is_iso = false;
};

inline IdealCompletion ideal_completion(const Lattice& l, const Limits& limits = {}) {
  if (l.size() > limits.max_poset_elements)
    throw CapOverflow("lattice", l.size(), limits.max_poset_elements);
  const std::size_t n = l.size();
  auto close = [&](Bits s) {
    s.set(l.bottom());
    for (bool changed = true; changed;) {
      changed = false;
      Bits next = s;
      for_each_bit(s, [&](Elem a) {
        next |= l.order().down(a);
        for_each_bit(s, [&](Elem b) { next.set(l.join(a, b)); });
      });
      if (next != s) {
        s = std::move(next);
        changed = true;
      }
    }
    return s;
  };
  auto sets = enumerate_closed_sets(n, close, limits.max_lattice_elements,
                                    "ideal completion");
  auto lat = Lattice::from_closed_sets(detail::set_names(l.order().names(), sets),
                                       sets, close);
  IdealCompletion out{DistLattice::assume_distributive(std::move(lat)), sets, {}, false};
  out.principal.resize(n);
  for (Elem a = 0; a < n; ++a) out.principal[a] = detail::find_set(sets, l.order().down(a));
  bool iso = sets.size() == n;
  for (Elem a = 0; iso && a < n; ++a)
    for (Elem b = 0; iso && b < n; ++b)
      iso = l.leq(a, b) == out.ideals.leq(out.principal[a], out.principal[b]);
  out.principal_is_iso = iso;
  return out;
}

/// Inhabited, and every pair has an upper bound inside the subset.
inline bool is_directed(const Lattice& l, const Bits& s) {
  if (s.none()) return false;
  bool ok = true;
  for_each_bit(s, [&](Elem a) {
    for_each_bit(s, [&](Elem b) {
      if (!ok) return;
      bool bounded = false;
      for_each_bit(s, [&](Elem c) { bounded = bounded || (l.leq(a, c) && l.leq(b, c)); });
      ok = bounded;
    });
  });
  return ok;
}

}  // namespace ptop::order
