#pragma once

#include <algorithm>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ptop/bits.hpp"
#include "ptop/error.hpp"
#include "ptop/order/closure.hpp"
#include "ptop/order/io.hpp"
#include "ptop/order/lattice.hpp"

namespace ptop::frame {

/// A finite frame: a finite distributive lattice, where every subset has a
/// join and finite meets distribute over them.
class FiniteFrame {
 public:
  explicit FiniteFrame(order::DistLattice l) : lat_(std::move(l)) {}

  static FiniteFrame from_lattice(const order::Lattice& l) {
    return FiniteFrame(order::DistLattice::make(l));
  }
  static FiniteFrame parse(const std::string& text, const Limits& limits = {}) {
    return from_lattice(order::parse_lattice(text, limits));
  }

  const order::DistLattice& lattice() const noexcept { return lat_; }
  std::size_t size() const noexcept { return lat_.size(); }
  const std::string& name(Elem e) const { return lat_.name(e); }
  Elem require(const std::string& s) const { return lat_.require(s); }

  bool leq(Elem a, Elem b) const { return lat_.leq(a, b); }
  Elem meet(Elem a, Elem b) const { return lat_.meet(a, b); }
  Elem join(Elem a, Elem b) const { return lat_.join(a, b); }
  Elem top() const noexcept { return lat_.top(); }
  Elem bottom() const noexcept { return lat_.bottom(); }
  const Bits& up(Elem e) const { return lat_.order().up(e); }
  const Bits& down(Elem e) const { return lat_.order().down(e); }

  /// Arbitrary join (every subset of a finite frame is finite).
  Elem join_all(const Bits& s) const { return lat_.join_all(s); }
  Elem join_all(std::span<const Elem> s) const { return lat_.join_all(s); }
  Elem meet_all(const Bits& s) const { return lat_.meet_all(s); }

  /// Checks a ∧ ⋁B = ⋁{a ∧ b | b ∈ B} for every a and every subset B when
  /// the frame has at most `subset_cap` elements, else for all binary B
  /// (equivalent for finite lattices). Returns a failing (a, B) if any.
  std::optional<std::pair<Elem, Bits>> frame_law_violation(std::size_t subset_cap = 10) const {
    const std::size_t n = size();
    if (n <= subset_cap) {
      for (unsigned long long m = 0; m < (1ULL << n); ++m) {
        Bits b(n);
        for (std::size_t i = 0; i < n; ++i)
          if ((m >> i) & 1ULL) b.set(i);
        Elem jb = join_all(b);
        for (Elem a = 0; a < n; ++a) {
          Elem acc = bottom();
          for_each_bit(b, [&](Elem x) { acc = join(acc, meet(a, x)); });
          if (meet(a, jb) != acc) return std::make_pair(a, b);
        }
      }
      return std::nullopt;
    }
    if (auto t = lat_.distributivity_violation()) {
      Bits b(n);
      b.set((*t)[1]);
      b.set((*t)[2]);
      return std::make_pair((*t)[0], b);
    }
    return std::nullopt;
  }

 private:
  order::DistLattice lat_;
};

using FrameRef = std::shared_ptr<const FiniteFrame>;

inline FrameRef share(FiniteFrame f) { return std::make_shared<const FiniteFrame>(std::move(f)); }

/// Chain 0 < 1 < ... < n-1, named c0..c{n-1}; the 1-, 2- and 3-element cases
/// are the trivial frame, the truth-value frame and Sierpiński space.
inline FrameRef chain_frame(std::size_t n) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> less;
  for (std::size_t i = 0; i < n; ++i) names.push_back("c" + std::to_string(i));
  for (std::size_t i = 0; i + 1 < n; ++i) less.emplace_back(names[i], names[i + 1]);
  return share(FiniteFrame::from_lattice(
      order::Lattice::from_poset(order::Poset::from_relation(names, less))));
}

/// Opens of the discrete space on k points: the powerset of {p0..p{k-1}}.
inline FrameRef discrete_frame(std::size_t k) {
  std::vector<std::string> gens;
  for (std::size_t i = 0; i < k; ++i) gens.push_back("p" + std::to_string(i));
  auto sets = order::enumerate_closed_sets(k, [](const Bits& s) { return s; },
                                           std::size_t{1} << k, "discrete frame");
  std::vector<std::string> names;
  for (const auto& s : sets) {
    std::string nm = "{";
    bool first = true;
    for_each_bit(s, [&](Elem e) {
      nm += (first ? "" : ",") + gens[e];
      first = false;
    });
    names.push_back(nm + "}");
  }
  return share(FiniteFrame(order::DistLattice::assume_distributive(
      order::Lattice::from_closed_sets(names, sets, [](const Bits& s) { return s; }))));
}

/// A map between finite frames preserving top, binary meets and all joins.
class FrameHom {
 public:
  /// Validates the homomorphism laws exhaustively (joins: empty and binary).
  static FrameHom make(FrameRef source, FrameRef target, std::vector<Elem> map) {
    FrameHom h(std::move(source), std::move(target), std::move(map));
    if (auto why = h.violation()) throw InvalidInput("not a frame homomorphism: " + *why);
    return h;
  }
  static FrameHom unchecked(FrameRef source, FrameRef target, std::vector<Elem> map) {
    return FrameHom(std::move(source), std::move(target), std::move(map));
  }
  static FrameHom identity(const FrameRef& f) {
    std::vector<Elem> id(f->size());
    for (Elem e = 0; e < id.size(); ++e) id[e] = e;
    return FrameHom(f, f, std::move(id));
  }

  const FrameRef& source() const noexcept { return source_; }
  const FrameRef& target() const noexcept { return target_; }
  const std::vector<Elem>& map() const noexcept { return map_; }
  Elem operator()(Elem e) const { return map_.at(e); }

  std::optional<std::string> violation() const {
    const auto& s = *source_;
    const auto& t = *target_;
    if (map_.size() != s.size()) return "map has wrong domain size";
    for (Elem v : map_)
      if (v >= t.size()) return "map value out of range";
    if (map_[s.top()] != t.top()) return "top not preserved";
    if (map_[s.bottom()] != t.bottom()) return "empty join not preserved";
    for (Elem a = 0; a < s.size(); ++a)
      for (Elem b = 0; b < s.size(); ++b) {
        if (map_[s.meet(a, b)] != t.meet(map_[a], map_[b]))
          return "meet of '" + s.name(a) + "' and '" + s.name(b) + "' not preserved";
        if (map_[s.join(a, b)] != t.join(map_[a], map_[b]))
          return "join of '" + s.name(a) + "' and '" + s.name(b) + "' not preserved";
      }
    return std::nullopt;
  }

 private:
  FrameHom(FrameRef s, FrameRef t, std::vector<Elem> m)
      : source_(std::move(s)), target_(std::move(t)), map_(std::move(m)) {}

  FrameRef source_;
  FrameRef target_;
  std::vector<Elem> map_;
};

/// Completely prime filter test: top in F, bottom (the empty join) not in F,
/// upward and meet closed, and a ∨ b ∈ F ⇒ a ∈ F or b ∈ F. For finite
/// frames these cover the condition for every join.
inline bool is_completely_prime_filter(const FiniteFrame& f, const Bits& s) {
  if (!s.test(f.top()) || s.test(f.bottom())) return false;
  const std::size_t n = f.size();
  for (Elem a = 0; a < n; ++a) {
    if (s.test(a) && !f.up(a).is_subset_of(s)) return false;
    for (Elem b = 0; b < n; ++b) {
      if (s.test(a) && s.test(b) && !s.test(f.meet(a, b))) return false;
      if (s.test(f.join(a, b)) && !s.test(a) && !s.test(b)) return false;
    }
  }
  return true;
}

/// All points (completely prime filters), canonically ordered. Every filter
/// of a finite frame is principal, so the candidates are the sets ↑a.
inline std::vector<Bits> points(const FiniteFrame& f) {
  std::vector<Bits> out;
  for (Elem a = 0; a < f.size(); ++a)
    if (is_completely_prime_filter(f, f.up(a))) out.push_back(f.up(a));
  std::sort(out.begin(), out.end(), order::canonical_less);
  return out;
}

/// The frame homomorphism into the two-element frame {c0 < c1} that a
/// point induces.
inline FrameHom point_hom(const FrameRef& f, const Bits& point) {
  auto two = chain_frame(2);
  std::vector<Elem> map(f->size());
  for (Elem e = 0; e < f->size(); ++e) map[e] = point.test(e) ? two->top() : two->bottom();
  return FrameHom::make(f, two, std::move(map));
}

}  // namespace ptop::frame
