#pragma once

// Frame congruences on finite frames, represented as partitions. A
// congruence is the carrier of a sublocale: the quotient frame is the frame
// of opens of the sublocale.

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ptop/bits.hpp"
#include "ptop/config.hpp"
#include "ptop/error.hpp"
#include "ptop/frame/finite_frame.hpp"

namespace ptop::frame {

class Congruence {
 public:
  /// `class_of[e]` must be the least element index of e's class.
  Congruence(FrameRef f, std::vector<Elem> class_of)
      : frame_(std::move(f)), class_of_(std::move(class_of)) {}

  static Congruence identity(const FrameRef& f) {
    std::vector<Elem> c(f->size());
    std::iota(c.begin(), c.end(), Elem{0});
    return Congruence(f, std::move(c));
  }
  static Congruence all_pairs(const FrameRef& f) {
    return Congruence(f, std::vector<Elem>(f->size(), Elem{0}));
  }

  const FrameRef& frame() const noexcept { return frame_; }
  bool related(Elem u, Elem v) const { return class_of_.at(u) == class_of_.at(v); }
  Elem class_id(Elem u) const { return class_of_.at(u); }
  const std::vector<Elem>& class_ids() const noexcept { return class_of_; }

  /// Classes as element sets, ordered by least member.
  std::vector<Bits> classes() const {
    const std::size_t n = class_of_.size();
    std::vector<Bits> out;
    std::vector<std::size_t> slot(n, n);
    for (Elem e = 0; e < n; ++e) {
      Elem c = class_of_[e];
      if (slot[c] == n) {
        slot[c] = out.size();
        out.emplace_back(n);
      }
      out[slot[c]].set(e);
    }
    return out;
  }

  /// Largest element of u's class (its join; classes are join closed).
  Elem representative(Elem u) const {
    const auto& f = *frame_;
    Elem r = f.bottom();
    for (Elem e = 0; e < class_of_.size(); ++e)
      if (class_of_[e] == class_of_[u]) r = f.join(r, e);
    return r;
  }

  bool is_identity() const {
    for (Elem e = 0; e < class_of_.size(); ++e)
      if (class_of_[e] != e) return false;
    return true;
  }
  bool is_all_pairs() const {
    return std::all_of(class_of_.begin(), class_of_.end(), [](Elem c) { return c == 0; });
  }

  /// First failure of the congruence laws (classes closed under ∧w, ∨w).
  std::optional<std::string> violation() const {
    const auto& f = *frame_;
    const std::size_t n = f.size();
    if (class_of_.size() != n) return "partition has the wrong size";
    for (Elem u = 0; u < n; ++u) {
      if (class_of_[u] > u || class_of_[class_of_[u]] != class_of_[u])
        return "class ids are not least members";
      for (Elem w = 0; w < n; ++w) {
        Elem v = class_of_[u];
        if (!related(f.meet(u, w), f.meet(v, w)) || !related(f.join(u, w), f.join(v, w)))
          return "not closed under meet/join with '" + f.name(w) + "'";
      }
    }
    return std::nullopt;
  }

  friend bool operator==(const Congruence& a, const Congruence& b) {
    return a.class_of_ == b.class_of_;
  }

 private:
  FrameRef frame_;
  std::vector<Elem> class_of_;
};

namespace detail {

struct UnionFind {
  std::vector<Elem> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Elem{0}); }
  Elem find(Elem x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  // Smaller root wins so that roots are least class members.
  bool unite(Elem a, Elem b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

inline void require_same_frame(const Congruence& a, const Congruence& b) {
  if (a.frame() != b.frame() && a.frame()->size() != b.frame()->size())
    throw MixedOperands("congruences live on different frames");
}

}  // namespace detail

/// Least congruence containing `pairs`.
inline Congruence congruence_generate(const FrameRef& f,
                                      const std::vector<std::pair<Elem, Elem>>& pairs) {
  const std::size_t n = f->size();
  detail::UnionFind uf(n);
  for (auto [u, v] : pairs) {
    if (u >= n || v >= n) throw InvalidInput("pair element out of range");
    uf.unite(u, v);
  }
  // Every class is connected through (u, root u); closing these pairs under
  // translation by each w yields closure under binary meets and joins.
  for (bool changed = true; changed;) {
    changed = false;
    for (Elem u = 0; u < n; ++u) {
      Elem r = uf.find(u);
      if (r == u) continue;
      for (Elem w = 0; w < n; ++w) {
        changed |= uf.unite(f->meet(u, w), f->meet(r, w));
        changed |= uf.unite(f->join(u, w), f->join(r, w));
      }
    }
  }
  std::vector<Elem> c(n);
  for (Elem e = 0; e < n; ++e) c[e] = uf.find(e);
  return Congruence(f, std::move(c));
}

/// Kernel of an arbitrary function on elements.
template <typename F>
Congruence kernel(const FrameRef& f, F&& fn) {
  const std::size_t n = f->size();
  std::vector<Elem> c(n);
  for (Elem u = 0; u < n; ++u) {
    c[u] = u;
    auto fu = fn(u);
    for (Elem v = 0; v < u; ++v)
      if (fn(v) == fu) {
        c[u] = v;
        break;
      }
  }
  return Congruence(f, std::move(c));
}

/// Δ_a: kernel of u ↦ u ∧ a (the open sublocale of a).
inline Congruence open_congruence(const FrameRef& f, Elem a) {
  if (a >= f->size()) throw InvalidInput("element out of range");
  return kernel(f, [&](Elem u) { return f->meet(u, a); });
}

/// ∇_a: kernel of u ↦ u ∨ a (the closed sublocale complementing a).
inline Congruence closed_congruence(const FrameRef& f, Elem a) {
  if (a >= f->size()) throw InvalidInput("element out of range");
  return kernel(f, [&](Elem u) { return f->join(u, a); });
}

inline bool congruence_leq(const Congruence& a, const Congruence& b) {
  detail::require_same_frame(a, b);
  for (Elem u = 0; u < a.class_ids().size(); ++u)
    if (!b.related(u, a.class_id(u))) return false;
  return true;
}

/// Intersection of relations.
inline Congruence congruence_meet(const Congruence& a, const Congruence& b) {
  detail::require_same_frame(a, b);
  return kernel(a.frame(), [&](Elem u) { return std::make_pair(a.class_id(u), b.class_id(u)); });
}

/// Least congruence containing every member of `cs`; identity when empty.
inline Congruence congruence_join(const FrameRef& f, const std::vector<Congruence>& cs) {
  std::vector<std::pair<Elem, Elem>> pairs;
  for (const auto& c : cs) {
    if (c.class_ids().size() != f->size()) throw MixedOperands("congruence on a different frame");
    for (Elem u = 0; u < f->size(); ++u)
      if (c.class_id(u) != u) pairs.emplace_back(u, c.class_id(u));
  }
  return congruence_generate(f, pairs);
}

/// c1 ∩ c2 is the identity and c1 ∪ c2 generates all pairs.
inline bool is_complementary(const Congruence& a, const Congruence& b) {
  detail::require_same_frame(a, b);
  return congruence_meet(a, b).is_identity() &&
         congruence_join(a.frame(), {a, b}).is_all_pairs();
}

struct Quotient {
  FrameRef frame;
  FrameHom hom;
  std::vector<Elem> representatives;  // quotient element -> largest source element
};

/// Quotient frame on the largest class members, with the quotient map.
inline Quotient quotient(const Congruence& c) {
  const auto& f = *c.frame();
  const std::size_t n = f.size();
  std::vector<Elem> rep_of(n);
  std::vector<Elem> reps;
  for (Elem u = 0; u < n; ++u) {
    rep_of[u] = c.representative(u);
    if (rep_of[u] == u) reps.push_back(u);
  }
  const std::size_t m = reps.size();
  std::vector<Elem> pos(n, 0);
  for (std::size_t i = 0; i < m; ++i) pos[reps[i]] = static_cast<Elem>(i);
  std::vector<Elem> meet(m * m), join(m * m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      meet[i * m + j] = pos[rep_of[f.meet(reps[i], reps[j])]];
      join[i * m + j] = pos[rep_of[f.join(reps[i], reps[j])]];
    }
  auto lat = order::Lattice::from_tables(f.lattice().order().induced(reps), std::move(meet),
                                         std::move(join));
  auto q = share(FiniteFrame(order::DistLattice::assume_distributive(std::move(lat))));
  std::vector<Elem> map(n);
  for (Elem u = 0; u < n; ++u) map[u] = pos[rep_of[u]];
  return Quotient{q, FrameHom::unchecked(c.frame(), q, std::move(map)), std::move(reps)};
}

/// Image of a sublocale along the locale map whose frame map is h: consumes
/// a congruence on h.target and returns {(u,v) | (h u, h v) ∈ c} on h.source.
inline Congruence image_congruence(const FrameHom& h, const Congruence& c) {
  if (c.class_ids().size() != h.target()->size())
    throw MixedOperands("congruence is not on the target frame");
  return kernel(h.source(), [&](Elem u) { return c.class_id(h(u)); });
}

/// Preimage of a sublocale: consumes a congruence on h.source and returns
/// the congruence on h.target generated by {(h u, h v) | (u,v) ∈ c}.
inline Congruence preimage_congruence(const FrameHom& h, const Congruence& c) {
  if (c.class_ids().size() != h.source()->size())
    throw MixedOperands("congruence is not on the source frame");
  std::vector<std::pair<Elem, Elem>> pairs;
  for (Elem u = 0; u < h.source()->size(); ++u)
    if (c.class_id(u) != u) pairs.emplace_back(h(u), h(c.class_id(u)));
  return congruence_generate(h.target(), pairs);
}

/// Checks that a ↦ ∇_a sends top to all-pairs, binary meets to
/// intersections, and joins to congruence joins. Joins are checked over
/// every subset when the frame has at most `join_scan_cap` elements, else
/// over the empty and binary ones.
inline std::optional<std::string> nabla_homomorphism_violation(const FrameRef& f,
                                                               const Limits& limits = {}) {
  const std::size_t n = f->size();
  std::vector<Congruence> nabla;
  for (Elem a = 0; a < n; ++a) nabla.push_back(closed_congruence(f, a));
  if (!nabla[f->top()].is_all_pairs()) return "nabla(top) is not all-pairs";
  for (Elem a = 0; a < n; ++a)
    for (Elem b = 0; b < n; ++b) {
      if (!(nabla[f->meet(a, b)] == congruence_meet(nabla[a], nabla[b])))
        return "nabla does not preserve the meet of '" + f->name(a) + "' and '" + f->name(b) + "'";
    }
  auto check_join = [&](const std::vector<Elem>& s) -> std::optional<std::string> {
    std::vector<Congruence> cs;
    Elem j = f->bottom();
    for (Elem e : s) {
      cs.push_back(nabla[e]);
      j = f->join(j, e);
    }
    if (!(nabla[j] == congruence_join(f, cs))) return "nabla does not preserve a join";
    return std::nullopt;
  };
  if (n <= limits.join_scan_cap) {
    for (unsigned long long m = 0; m < (1ULL << n); ++m) {
      std::vector<Elem> s;
      for (Elem e = 0; e < n; ++e)
        if ((m >> e) & 1ULL) s.push_back(e);
      if (auto why = check_join(s)) return why;
    }
    return std::nullopt;
  }
  if (auto why = check_join({})) return why;
  for (Elem a = 0; a < n; ++a)
    for (Elem b = a + 1; b < n; ++b)
      if (auto why = check_join({a, b})) return why;
  return std::nullopt;
}

}  // namespace ptop::frame
