#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "ptop/bits.hpp"
#include "ptop/error.hpp"

namespace ptop::order {

/// A finite partial order on named elements.
///
/// `down(i)` holds every j with j <= i, `up(i)` every j with i <= j.
class Poset {
 public:
  Poset() = default;

  /// Builds the order generated by `less` (reflexive-transitive closure).
  /// Names are sorted lexicographically and deduplicated; a cycle is
  /// rejected because it would violate antisymmetry.
  static Poset from_relation(
      std::vector<std::string> names,
      const std::vector<std::pair<std::string, std::string>>& less) {
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    Poset p;
    p.init_names(std::move(names));
    const std::size_t n = p.size();
    std::vector<Bits> down(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i) down[i].set(i);
    for (const auto& [lo, hi] : less) {
      auto a = p.index(lo), b = p.index(hi);
      if (!a) throw InvalidInput("unknown element '" + lo + "'");
      if (!b) throw InvalidInput("unknown element '" + hi + "'");
      down[*b].set(*a);
    }
    // Warshall closure on the "is below" relation.
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i)
        if (down[i].test(k)) down[i] |= down[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (down[i].test(j) && down[j].test(i))
          throw InvalidInput("order relation is cyclic between '" +
                             p.names_[i] + "' and '" + p.names_[j] + "'");
    p.set_down(std::move(down));
    return p;
  }

  /// Builds a poset from an explicit relation matrix `leq[i][j] <=> i <= j`,
  /// keeping the given element order. The matrix is validated.
  static Poset from_matrix(std::vector<std::string> names,
                           const std::vector<std::vector<bool>>& leq) {
    Poset p;
    p.init_names(std::move(names));
    const std::size_t n = p.size();
    if (leq.size() != n) throw InvalidInput("relation matrix size mismatch");
    std::vector<Bits> down(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i) {
      if (leq[i].size() != n) throw InvalidInput("relation matrix size mismatch");
      for (std::size_t j = 0; j < n; ++j)
        if (leq[i][j]) down[j].set(i);
    }
    p.set_down(std::move(down));
    if (auto why = p.violation()) throw InvalidInput("not a partial order: " + *why);
    return p;
  }

  /// Trusted construction from down-sets (callers guarantee a partial order).
  static Poset from_down_sets(std::vector<std::string> names,
                              std::vector<Bits> down) {
    Poset p;
    p.init_names(std::move(names));
    p.set_down(std::move(down));
    return p;
  }

  std::size_t size() const noexcept { return names_.size(); }
  const std::string& name(Elem i) const { return names_.at(i); }
  const std::vector<std::string>& names() const noexcept { return names_; }

  std::optional<Elem> index(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  Elem require(const std::string& name) const {
    auto i = index(name);
    if (!i) throw InvalidInput("unknown element '" + name + "'");
    return *i;
  }

  bool leq(Elem a, Elem b) const { return down_[b].test(a); }
  const Bits& down(Elem i) const { return down_[i]; }
  const Bits& up(Elem i) const { return up_[i]; }

  /// Covering pairs (a, b): a < b with nothing strictly between.
  std::vector<std::pair<Elem, Elem>> hasse_edges() const {
    std::vector<std::pair<Elem, Elem>> out;
    const std::size_t n = size();
    for (Elem b = 0; b < n; ++b) {
      for (Elem a = 0; a < n; ++a) {
        if (a == b || !leq(a, b)) continue;
        // Strictly between a and b: up(a) & down(b) minus {a, b}.
        Bits between = up_[a] & down_[b];
        between.reset(a);
        between.reset(b);
        if (between.none()) out.emplace_back(a, b);
      }
    }
    return out;
  }

  /// Induced subposet on `keep` (in increasing index order).
  Poset induced(const std::vector<Elem>& keep) const {
    std::vector<std::string> names;
    for (Elem e : keep) names.push_back(names_[e]);
    std::vector<Bits> down(keep.size(), Bits(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
      for (std::size_t j = 0; j < keep.size(); ++j)
        if (leq(keep[j], keep[i])) down[i].set(j);
    return from_down_sets(std::move(names), std::move(down));
  }

  /// First violated partial-order axiom, if any (exhaustive scan).
  std::optional<std::string> violation() const {
    const std::size_t n = size();
    for (Elem i = 0; i < n; ++i)
      if (!leq(i, i)) return "not reflexive at '" + names_[i] + "'";
    for (Elem i = 0; i < n; ++i)
      for (Elem j = 0; j < n; ++j)
        if (i != j && leq(i, j) && leq(j, i))
          return "not antisymmetric at '" + names_[i] + "', '" + names_[j] + "'";
    for (Elem i = 0; i < n; ++i)
      for (Elem j = 0; j < n; ++j)
        for (Elem k = 0; k < n; ++k)
          if (leq(i, j) && leq(j, k) && !leq(i, k))
            return "not transitive at '" + names_[i] + "', '" + names_[j] +
                   "', '" + names_[k] + "'";
    return std::nullopt;
  }

 private:
  void init_names(std::vector<std::string> names) {
    names_ = std::move(names);
    index_.clear();
    for (std::size_t i = 0; i < names_.size(); ++i) {
      if (!index_.emplace(names_[i], static_cast<Elem>(i)).second)
        throw InvalidInput("duplicate element '" + names_[i] + "'");
    }
  }

  void set_down(std::vector<Bits> down) {
    down_ = std::move(down);
    const std::size_t n = size();
    up_.assign(n, Bits(n));
    for (std::size_t i = 0; i < n; ++i)
      for_each_bit(down_[i], [&](Elem j) { up_[j].set(i); });
  }

  std::vector<std::string> names_;
  std::unordered_map<std::string, Elem> index_;
  std::vector<Bits> down_;
  std::vector<Bits> up_;
};

}  // namespace ptop::order
