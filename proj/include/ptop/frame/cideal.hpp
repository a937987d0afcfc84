#pragma once

// Elements of a presented frame as C-ideals: sets of formal meets that are
// downward closed in the generator semilattice and closed under every
// stabilized cover rule (T ⊆ D ⇒ c ∈ D). By the coverage theorem these,
// ordered by inclusion, form the presented frame.

#include <memory>
#include <string>
#include <vector>

#include "ptop/bits.hpp"
#include "ptop/config.hpp"
#include "ptop/error.hpp"
#include "ptop/frame/finite_frame.hpp"
#include "ptop/frame/presentation.hpp"
#include "ptop/order/closure.hpp"

namespace ptop::frame {

using PresentationRef = std::shared_ptr<const FramePresentation>;

class CIdeal {
 public:
  CIdeal(PresentationRef p, Bits members) : pres_(std::move(p)), members_(std::move(members)) {}

  const PresentationRef& presentation() const noexcept { return pres_; }
  const Bits& members() const noexcept { return members_; }
  bool contains(FormalMeet m) const { return members_.test(m.gens); }

  /// Formal meets generating the ideal: its members with no proper subset
  /// mask (i.e. the maximal formal meets it contains).
  std::vector<FormalMeet> generators() const {
    std::vector<FormalMeet> out;
    for_each_bit(members_, [&](Elem m) {
      for (std::uint32_t b = 1; b <= m; b <<= 1)
        if ((m & b) && members_.test(m & ~b)) return;
      out.push_back(FormalMeet{m});
    });
    return out;
  }

  /// "bot", or the generating formal meets joined by " | ", leaving out
  /// those that collapse to bottom.
  std::string to_string() const;

  friend bool operator==(const CIdeal& a, const CIdeal& b) {
    return a.members_ == b.members_ &&
           (a.pres_ == b.pres_ || *a.pres_ == *b.pres_);
  }

 private:
  PresentationRef pres_;
  Bits members_;
};

namespace detail {

inline void require_stabilized(const FramePresentation& p) {
  if (!p.stabilized()) throw InvalidInput("presentation must be stabilized first");
}

inline void require_same(const CIdeal& a, const CIdeal& b) {
  if (a.presentation() != b.presentation() && !(*a.presentation() == *b.presentation()))
    throw MixedOperands("C-ideals belong to different presentations");
}

/// Adds every superset mask (everything below in the formal-meet order).
inline void close_downward(Bits& s) {
  const std::size_t size = s.size();
  for (std::size_t m = 0; m < size; ++m) {
    if (!s.test(m)) continue;
    for (std::size_t b = 1; b < size; b <<= 1)
      if (!(m & b)) s.set(m | b);
  }
}

/// Least C-ideal containing `s` (raw bitset form).
inline Bits saturate_bits(const FramePresentation& p, Bits s) {
  close_downward(s);
  const auto& rules = p.covers();
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& r : rules) {
      if (s.test(r.lhs.gens)) continue;
      bool covered = true;
      for (auto t : r.rhs)
        if (!s.test(t.gens)) {
          covered = false;
          break;
        }
      if (covered) {
        s.set(r.lhs.gens);
        changed = true;
      }
    }
    if (changed) close_downward(s);
  }
  return s;
}

}  // namespace detail

inline std::string CIdeal::to_string() const {
  const Bits bottom = detail::saturate_bits(*pres_, Bits(pres_->meet_count()));
  std::string out;
  for (auto m : generators()) {
    if (bottom.test(m.gens)) continue;
    if (!out.empty()) out += " | ";
    out += pres_->to_string(m);
  }
  return out.empty() ? "bot" : out;
}

/// Least C-ideal containing the given formal meets. A closure operator.
inline CIdeal saturate(const PresentationRef& p, const std::vector<FormalMeet>& d) {
  detail::require_stabilized(*p);
  Bits s(p->meet_count());
  for (auto m : d) {
    if (m.gens >= p->meet_count()) throw InvalidInput("formal meet out of range");
    s.set(m.gens);
  }
  return CIdeal(p, detail::saturate_bits(*p, std::move(s)));
}

inline CIdeal saturate(const PresentationRef& p, const Bits& d) {
  detail::require_stabilized(*p);
  if (d.size() != p->meet_count()) throw InvalidInput("bitset has the wrong size");
  return CIdeal(p, detail::saturate_bits(*p, d));
}

inline bool cideal_leq(const CIdeal& a, const CIdeal& b) {
  detail::require_same(a, b);
  return a.members().is_subset_of(b.members());
}

/// Intersection; already saturated.
inline CIdeal cideal_meet(const CIdeal& a, const CIdeal& b) {
  detail::require_same(a, b);
  return CIdeal(a.presentation(), a.members() & b.members());
}

/// Saturation of the union. The empty family needs the presentation.
inline CIdeal cideal_join(const PresentationRef& p, const std::vector<CIdeal>& s) {
  Bits u(p->meet_count());
  for (const auto& c : s) {
    if (c.presentation() != p && !(*c.presentation() == *p))
      throw MixedOperands("C-ideals belong to different presentations");
    u |= c.members();
  }
  return saturate(p, u);
}

inline CIdeal cideal_join(const CIdeal& a, const CIdeal& b) {
  detail::require_same(a, b);
  return cideal_join(a.presentation(), {a, b});
}

/// a ⇒ b = {g | ↓g ∩ a ⊆ b}, ↓g being all formal meets below g.
inline CIdeal cideal_heyting(const CIdeal& a, const CIdeal& b) {
  detail::require_same(a, b);
  const std::size_t size = a.members().size();
  Bits out(size);
  const std::size_t full = size - 1;
  for (std::size_t g = 0; g < size; ++g) {
    bool ok = true;
    // Enumerate supersets of g: g | sub for sub ⊆ complement(g).
    const std::size_t comp = full & ~g;
    for (std::size_t sub = comp;; sub = (sub - 1) & comp) {
      std::size_t m = g | sub;
      if (a.members().test(m) && !b.members().test(m)) {
        ok = false;
        break;
      }
      if (sub == 0) break;
    }
    if (ok) out.set(g);
  }
  return CIdeal(a.presentation(), std::move(out));
}

inline CIdeal cideal_top(const PresentationRef& p) {
  detail::require_stabilized(*p);
  Bits all(p->meet_count());
  all.set();
  return CIdeal(p, std::move(all));
}

inline CIdeal cideal_bottom(const PresentationRef& p) { return saturate(p, Bits(p->meet_count())); }

/// The generator g as a frame element: saturate({g}).
inline CIdeal generator_ideal(const PresentationRef& p, std::size_t g) {
  return saturate(p, std::vector<FormalMeet>{FormalMeet{1u << g}});
}

/// The finite frame of all C-ideals of a stabilized presentation.
struct PresentedFrame {
  PresentationRef presentation;
  std::vector<Bits> ideals;                 // canonical order; index = element
  FrameRef frame;
  std::vector<Elem> generator_embedding;    // generator index -> element

  Elem element_of(const CIdeal& c) const {
    auto it = std::lower_bound(ideals.begin(), ideals.end(), c.members(), order::canonical_less);
    if (it == ideals.end() || *it != c.members()) throw InvalidInput("not a C-ideal of this frame");
    return static_cast<Elem>(it - ideals.begin());
  }
  CIdeal ideal(Elem e) const { return CIdeal(presentation, ideals.at(e)); }
};

inline PresentedFrame enumerate_frame(const PresentationRef& p, const Limits& limits = {}) {
  detail::require_stabilized(*p);
  if (p->generator_count() > limits.max_generators)
    throw CapOverflow("generator set", p->generator_count(), limits.max_generators);
  auto close = [&](const Bits& s) { return detail::saturate_bits(*p, s); };
  auto sets = order::enumerate_closed_sets(p->meet_count(), close,
                                           limits.max_lattice_elements, "presented frame");
  std::vector<std::string> names;
  names.reserve(sets.size());
  for (const auto& s : sets) names.push_back(CIdeal(p, s).to_string());
  auto lat = order::Lattice::from_closed_sets(std::move(names), sets, close);
  PresentedFrame out{p, std::move(sets),
                     share(FiniteFrame(order::DistLattice::assume_distributive(std::move(lat)))),
                     {}};
  for (std::size_t g = 0; g < p->generator_count(); ++g)
    out.generator_embedding.push_back(out.element_of(generator_ideal(p, g)));
  return out;
}

}  // namespace ptop::frame
