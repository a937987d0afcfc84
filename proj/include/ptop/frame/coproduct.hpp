#pragma once

// Binary coproducts of finite frames, built as the suplattice tensor
// product: downsets D of L × M containing every (0, m) and (l, 0) and closed
// under joins within each row and each column.

#include <algorithm>
#include <string>
#include <vector>

#include "ptop/bits.hpp"
#include "ptop/config.hpp"
#include "ptop/error.hpp"
#include "ptop/frame/finite_frame.hpp"
#include "ptop/order/closure.hpp"

namespace ptop::frame {

struct Coproduct {
  FrameRef left;
  FrameRef right;
  FrameRef frame;
  FrameHom inl;
  FrameHom inr;
  std::vector<Bits> members;  // element -> set of pairs, pair (l, m) at l * |M| + m

  std::size_t pair_index(Elem l, Elem m) const { return l * right->size() + m; }

  Elem element_of(const Bits& d) const {
    auto it = std::lower_bound(members.begin(), members.end(), d, order::canonical_less);
    if (it == members.end() || *it != d) throw InvalidInput("not an element of the coproduct");
    return static_cast<Elem>(it - members.begin());
  }

  /// Basic rectangle u ⊕ v = inl(u) ∧ inr(v).
  Elem rect(Elem u, Elem v) const { return frame->meet(inl(u), inr(v)); }
};

namespace detail {

/// Closure on subsets of L × M described above.
inline Bits tensor_close(const FiniteFrame& l, const FiniteFrame& m, Bits d) {
  const std::size_t nl = l.size(), nm = m.size();
  auto at = [nm](Elem a, Elem b) { return a * nm + b; };
  for (Elem b = 0; b < nm; ++b) d.set(at(l.bottom(), b));
  for (Elem a = 0; a < nl; ++a) d.set(at(a, m.bottom()));
  for (bool changed = true; changed;) {
    changed = false;
    for (Elem b = 0; b < nm; ++b) {
      Elem j = l.bottom();
      for (Elem a = 0; a < nl; ++a)
        if (d.test(at(a, b))) j = l.join(j, a);
      if (!d.test(at(j, b))) d.set(at(j, b)), changed = true;
    }
    for (Elem a = 0; a < nl; ++a) {
      Elem j = m.bottom();
      for (Elem b = 0; b < nm; ++b)
        if (d.test(at(a, b))) j = m.join(j, b);
      if (!d.test(at(a, j))) d.set(at(a, j)), changed = true;
    }
    // Downward closure.
    for (Elem a = 0; a < nl; ++a)
      for (Elem b = 0; b < nm; ++b) {
        if (!d.test(at(a, b))) continue;
        for_each_bit(l.down(a), [&](Elem x) {
          for_each_bit(m.down(b), [&](Elem y) {
            if (!d.test(at(x, y))) d.set(at(x, y)), changed = true;
          });
        });
      }
  }
  return d;
}

inline std::string tensor_name(const FiniteFrame& l, const FiniteFrame& m, const Bits& d) {
  const std::size_t nm = m.size();
  std::string out;
  for_each_bit(d, [&](Elem p) {
    Elem a = p / nm, b = p % nm;
    if (a == l.bottom() || b == m.bottom()) return;
    // Maximal among the pairs of d with no bottom component.
    for (Elem x = 0; x < l.size(); ++x)
      for (Elem y = 0; y < nm; ++y)
        if ((x != a || y != b) && l.leq(a, x) && m.leq(b, y) && d.test(x * nm + y)) return;
    if (!out.empty()) out += " | ";
    out += "(" + l.name(a) + "," + m.name(b) + ")";
  });
  return out.empty() ? "bot" : out;
}

}  // namespace detail

inline Coproduct coproduct(const FrameRef& l, const FrameRef& m, const Limits& limits = {}) {
  const std::size_t universe = l->size() * m->size();
  if (universe > limits.max_lattice_elements)
    throw CapOverflow("coproduct carrier L x M", universe, limits.max_lattice_elements);
  auto close = [&](const Bits& s) { return detail::tensor_close(*l, *m, s); };
  auto sets = order::enumerate_closed_sets(universe, close, limits.max_lattice_elements,
                                           "coproduct frame");
  std::vector<std::string> names;
  for (const auto& s : sets) names.push_back(detail::tensor_name(*l, *m, s));
  auto frame = share(FiniteFrame(order::DistLattice::assume_distributive(
      order::Lattice::from_closed_sets(std::move(names), sets, close))));
  auto find = [&](const Bits& d) {
    auto it = std::lower_bound(sets.begin(), sets.end(), d, order::canonical_less);
    return static_cast<Elem>(it - sets.begin());
  };
  auto rect_set = [&](Elem u, Elem v) {
    Bits d(universe);
    d.set(u * m->size() + v);
    return close(d);
  };
  std::vector<Elem> inl(l->size()), inr(m->size());
  for (Elem u = 0; u < l->size(); ++u) inl[u] = find(rect_set(u, m->top()));
  for (Elem v = 0; v < m->size(); ++v) inr[v] = find(rect_set(l->top(), v));
  return Coproduct{l,
                   m,
                   frame,
                   FrameHom::unchecked(l, frame, std::move(inl)),
                   FrameHom::unchecked(m, frame, std::move(inr)),
                   std::move(sets)};
}

/// For Ω ⊗ L with Ω the two-element frame: λ(D) = ⋁{ℓ | (top, ℓ) ∈ D}.
/// Returns λ as a map from coproduct elements to elements of L.
inline std::vector<Elem> unit_map(const Coproduct& c) {
  const auto& omega = *c.left;
  if (omega.size() != 2) throw InvalidInput("left factor is not the two-element frame");
  std::vector<Elem> out;
  for (const auto& d : c.members) {
    Elem j = c.right->bottom();
    for (Elem v = 0; v < c.right->size(); ++v)
      if (d.test(c.pair_index(omega.top(), v))) j = c.right->join(j, v);
    out.push_back(j);
  }
  return out;
}

}  // namespace ptop::frame
