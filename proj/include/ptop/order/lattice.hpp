#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ptop/bits.hpp"
#include "ptop/config.hpp"
#include "ptop/error.hpp"
#include "ptop/order/poset.hpp"

namespace ptop::order {

/// A triple (a, b, c) with a ∧ (b ∨ c) != (a ∧ b) ∨ (a ∧ c), by name.
struct DistributivityWitness {
  std::string a, b, c;
};

class NotDistributive : public InvalidInput {
 public:
  explicit NotDistributive(DistributivityWitness w)
      : InvalidInput("lattice is not distributive: witness (" + w.a + ", " +
                     w.b + ", " + w.c + ")"),
        witness_(std::move(w)) {}
  const DistributivityWitness& witness() const noexcept { return witness_; }

 private:
  DistributivityWitness witness_;
};

/// A finite bounded lattice with precomputed meet and join tables.
class Lattice {
 public:
  Lattice() = default;

  /// Computes meets and joins from the order; rejects non-lattices.
  static Lattice from_poset(Poset order, const Limits& limits = {}) {
    const std::size_t n = order.size();
    if (n == 0) throw InvalidInput("a lattice needs at least one element");
    if (n > limits.max_lattice_elements)
      throw CapOverflow("lattice", n, limits.max_lattice_elements);
    std::vector<Elem> meet(n * n), join(n * n);
    for (Elem a = 0; a < n; ++a) {
      for (Elem b = a; b < n; ++b) {
        auto j = least_of(order, order.up(a) & order.up(b), true);
        auto m = least_of(order, order.down(a) & order.down(b), false);
        if (!j)
          throw InvalidInput("no join of '" + order.name(a) + "' and '" +
                             order.name(b) + "'");
        if (!m)
          throw InvalidInput("no meet of '" + order.name(a) + "' and '" +
                             order.name(b) + "'");
        join[a * n + b] = join[b * n + a] = *j;
        meet[a * n + b] = meet[b * n + a] = *m;
      }
    }
    return from_tables(std::move(order), std::move(meet), std::move(join));
  }

  /// Trusted construction; the tables must agree with the order.
  static Lattice from_tables(Poset order, std::vector<Elem> meet,
                             std::vector<Elem> join) {
    Lattice l;
    l.order_ = std::move(order);
    l.meet_ = std::move(meet);
    l.join_ = std::move(join);
    const std::size_t n = l.size();
    l.bottom_ = 0;
    l.top_ = 0;
    for (Elem e = 0; e < n; ++e) {
      if (l.order_.up(e).count() == n) l.bottom_ = e;
      if (l.order_.down(e).count() == n) l.top_ = e;
    }
    return l;
  }

  /// Lattice of a family of subsets, ordered by inclusion, with meet given
  /// by intersection and join by `close(a | b)`. The family must be closed
  /// under intersection and under `close` of unions.
  template <typename Close>
  static Lattice from_closed_sets(std::vector<std::string> names,
                                  const std::vector<Bits>& sets, Close&& close) {
    const std::size_t n = sets.size();
    std::map<Bits, Elem> where;
    for (std::size_t i = 0; i < n; ++i) where.emplace(sets[i], static_cast<Elem>(i));
    std::vector<Bits> down(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (sets[j].is_subset_of(sets[i])) down[i].set(j);
    std::vector<Elem> meet(n * n), join(n * n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        auto m = where.find(sets[a] & sets[b]);
        auto j = where.find(close(sets[a] | sets[b]));
        if (m == where.end() || j == where.end())
          throw Error("family of sets is not a closure system");
        meet[a * n + b] = meet[b * n + a] = m->second;
        join[a * n + b] = join[b * n + a] = j->second;
      }
    }
    return from_tables(Poset::from_down_sets(std::move(names), std::move(down)),
                       std::move(meet), std::move(join));
  }

  std::size_t size() const noexcept { return order_.size(); }
  const Poset& order() const noexcept { return order_; }
  const std::string& name(Elem e) const { return order_.name(e); }
  std::optional<Elem> index(const std::string& s) const { return order_.index(s); }
  Elem require(const std::string& s) const { return order_.require(s); }

  bool leq(Elem a, Elem b) const { return order_.leq(a, b); }
  Elem meet(Elem a, Elem b) const { return meet_[a * size() + b]; }
  Elem join(Elem a, Elem b) const { return join_[a * size() + b]; }
  Elem bottom() const noexcept { return bottom_; }
  Elem top() const noexcept { return top_; }

  Elem join_all(std::span<const Elem> xs) const {
    Elem acc = bottom_;
    for (Elem x : xs) acc = join(acc, x);
    return acc;
  }
  Elem join_all(const Bits& xs) const {
    Elem acc = bottom_;
    for_each_bit(xs, [&](Elem x) { acc = join(acc, x); });
    return acc;
  }
  Elem meet_all(std::span<const Elem> xs) const {
    Elem acc = top_;
    for (Elem x : xs) acc = meet(acc, x);
    return acc;
  }
  Elem meet_all(const Bits& xs) const {
    Elem acc = top_;
    for_each_bit(xs, [&](Elem x) { acc = meet(acc, x); });
    return acc;
  }

  /// First triple violating a ∧ (b ∨ c) = (a ∧ b) ∨ (a ∧ c), if any.
  std::optional<std::array<Elem, 3>> distributivity_violation() const {
    const std::size_t n = size();
    for (Elem a = 0; a < n; ++a)
      for (Elem b = 0; b < n; ++b)
        for (Elem c = 0; c < n; ++c)
          if (meet(a, join(b, c)) != join(meet(a, b), meet(a, c)))
            return std::array<Elem, 3>{a, b, c};
    return std::nullopt;
  }

  DistributivityWitness witness_names(const std::array<Elem, 3>& t) const {
    return {name(t[0]), name(t[1]), name(t[2])};
  }

 private:
  // For a set of upper bounds, its least element; for a set of lower bounds
  // (!upper), its greatest.
  static std::optional<Elem> least_of(const Poset& p, const Bits& cands,
                                      bool upper) {
    std::optional<Elem> found;
    for_each_bit(cands, [&](Elem k) {
      if (found) return;
      const Bits& reach = upper ? p.up(k) : p.down(k);
      if (cands.is_subset_of(reach)) found = k;
    });
    return found;
  }

  Poset order_;
  std::vector<Elem> meet_;
  std::vector<Elem> join_;
  Elem bottom_ = 0;
  Elem top_ = 0;
};

/// A finite lattice known to be distributive.
class DistLattice : public Lattice {
 public:
  DistLattice() = default;

  /// Validates distributivity by exhaustive triple scan.
  static DistLattice make(Lattice l) {
    if (auto t = l.distributivity_violation())
      throw NotDistributive(l.witness_names(*t));
    return DistLattice(std::move(l));
  }

  /// For constructions that are distributive by construction (lattices of
  /// downsets, closure systems of frames). Tests re-verify these.
  static DistLattice assume_distributive(Lattice l) {
    return DistLattice(std::move(l));
  }

 private:
  explicit DistLattice(Lattice l) : Lattice(std::move(l)) {}
};

}  // namespace ptop::order
