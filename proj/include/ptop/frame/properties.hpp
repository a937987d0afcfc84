#pragma once

// Locale-theoretic properties decided on finite data: Hausdorffness of the
// diagonal, positivity and overtness certificates, compactness, and the
// Frobenius characterisations of open and closed maps.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ptop/bits.hpp"
#include "ptop/config.hpp"
#include "ptop/error.hpp"
#include "ptop/frame/cideal.hpp"
#include "ptop/frame/congruence.hpp"
#include "ptop/frame/coproduct.hpp"
#include "ptop/frame/finite_frame.hpp"
#include "ptop/order/constructions.hpp"
#include "ptop/order/kfin.hpp"

namespace ptop::frame {

// ---------------------------------------------------------------------------
// Hausdorff

struct HausdorffReport {
  bool hausdorff = false;
  std::optional<Elem> closed_witness;  // d in f ⊕ f with diagonal kernel = ∇_d
  bool open_diagonal = false;
  std::optional<Elem> open_witness;    // d in f ⊕ f with diagonal kernel = Δ_d
  // For the closed witness: Δ*(d) = 0 and u ⊕ v ≤ (u∧v) ⊕ (u∧v) ∨ d for all u, v.
  bool lemma_holds = false;
  std::string witness_name;
  std::size_t product_size = 0;
};

/// Δ*: f ⊕ f → f, the frame map of the diagonal, D ↦ ⋁{u ∧ v | (u,v) ∈ D}.
inline std::vector<Elem> diagonal_map(const Coproduct& c) {
  const auto& f = *c.left;
  std::vector<Elem> out;
  for (const auto& d : c.members) {
    Elem j = f.bottom();
    for_each_bit(d, [&](Elem p) {
      Elem u = p / c.right->size(), v = p % c.right->size();
      j = f.join(j, f.meet(u, v));
    });
    out.push_back(j);
  }
  return out;
}

inline HausdorffReport is_hausdorff(const FrameRef& f, const Limits& limits = {}) {
  auto c = coproduct(f, f, limits);
  const auto delta = diagonal_map(c);
  auto diag = kernel(c.frame, [&](Elem d) { return delta[d]; });
  HausdorffReport r;
  r.product_size = c.frame->size();
  for (Elem d = 0; d < c.frame->size(); ++d) {
    if (!r.closed_witness && closed_congruence(c.frame, d) == diag) r.closed_witness = d;
    if (!r.open_witness && open_congruence(c.frame, d) == diag) r.open_witness = d;
  }
  r.hausdorff = r.closed_witness.has_value();
  r.open_diagonal = r.open_witness.has_value();
  if (r.closed_witness) {
    Elem d = *r.closed_witness;
    r.witness_name = c.frame->name(d);
    bool ok = delta[d] == f->bottom();
    for (Elem u = 0; u < f->size() && ok; ++u)
      for (Elem v = 0; v < f->size() && ok; ++v) {
        Elem w = f->meet(u, v);
        ok = c.frame->leq(c.rect(u, v), c.frame->join(c.rect(w, w), d));
      }
    r.lemma_holds = ok;
  }
  return r;
}

inline bool has_open_diagonal(const FrameRef& f, const Limits& limits = {}) {
  return is_hausdorff(f, limits).open_diagonal;
}

// ---------------------------------------------------------------------------
// Positivity and overtness

struct CertificateCheck {
  bool upward_closed = true;  // (i)
  bool covers_ok = true;      // (ii)
  bool bottoms_ok = true;     // (iii)
  std::string failure;        // first failure, human readable

  bool ok() const { return upward_closed && covers_ok && bottoms_ok; }
};

/// Checks a candidate set P of positive formal meets against a stabilized
/// presentation:
///   (i)   P is upward closed (closed under dropping generators);
///   (ii)  for every cover c ≤ ⋁T with c ∈ P, some t ∈ T lies in P;
///   (iii) every formal meet outside P saturates to bottom.
inline CertificateCheck check_positivity_certificate(const PresentationRef& p, const Bits& in_p) {
  detail::require_stabilized(*p);
  if (in_p.size() != p->meet_count()) throw InvalidInput("certificate has the wrong size");
  CertificateCheck r;
  const std::size_t n = p->meet_count();
  for (std::size_t m = 0; m < n && r.upward_closed; ++m) {
    if (!in_p.test(m)) continue;
    for (std::size_t b = 1; b < n; b <<= 1)
      if ((m & b) && !in_p.test(m & ~b)) {
        r.upward_closed = false;
        r.failure = "(i) '" + p->to_string(FormalMeet{static_cast<std::uint32_t>(m)}) +
                    "' is in P but '" +
                    p->to_string(FormalMeet{static_cast<std::uint32_t>(m & ~b)}) + "' is not";
        break;
      }
  }
  for (const auto& rule : p->covers()) {
    if (!in_p.test(rule.lhs.gens)) continue;
    bool hit = std::any_of(rule.rhs.begin(), rule.rhs.end(),
                           [&](FormalMeet t) { return in_p.test(t.gens); });
    if (!hit) {
      r.covers_ok = false;
      if (r.failure.empty()) r.failure = "(ii) cover '" + p->to_string(rule) + "' has no positive member";
      break;
    }
  }
  const auto bottom = cideal_bottom(p);
  for (std::uint32_t m = 0; m < n; ++m) {
    if (in_p.test(m)) continue;
    if (!(saturate(p, std::vector<FormalMeet>{FormalMeet{m}}) == bottom)) {
      r.bottoms_ok = false;
      if (r.failure.empty())
        r.failure = "(iii) '" + p->to_string(FormalMeet{m}) + "' is outside P but not bottom";
      break;
    }
  }
  return r;
}

inline CertificateCheck check_positivity_certificate(const PresentationRef& p,
                                                     const std::vector<FormalMeet>& members) {
  Bits in_p(p->meet_count());
  for (auto m : members) {
    if (m.gens >= p->meet_count()) throw InvalidInput("formal meet out of range");
    in_p.set(m.gens);
  }
  return check_positivity_certificate(p, in_p);
}

struct PositivityResult {
  bool positive = false;
  bool exhaustive = false;  // false: decided by the u ≠ bottom shortcut
};

/// u is positive iff every S with u ≤ ⋁S is inhabited. Up to
/// `positivity_scan_cap` elements every subset S is scanned; above it the
/// equivalent finite-frame criterion u ≠ bottom is used.
inline PositivityResult is_positive(const FiniteFrame& f, Elem u, const Limits& limits = {}) {
  if (u >= f.size()) throw InvalidInput("element out of range");
  const std::size_t n = f.size();
  if (n > limits.positivity_scan_cap) return {u != f.bottom(), false};
  for (unsigned long long m = 0; m < (1ULL << n); ++m) {
    Elem j = f.bottom();
    for (Elem e = 0; e < n; ++e)
      if ((m >> e) & 1ULL) j = f.join(j, e);
    if (m == 0 && f.leq(u, j)) return {false, true};
  }
  return {true, true};
}

struct PositivityBase {
  std::vector<Elem> elements;
  bool is_base = false;  // every element is a join of positive elements
  bool exhaustive = false;
};

inline PositivityBase positivity_base(const FiniteFrame& f, const Limits& limits = {}) {
  PositivityBase out;
  out.exhaustive = true;
  Bits pos(f.size());
  for (Elem u = 0; u < f.size(); ++u) {
    auto r = is_positive(f, u, limits);
    out.exhaustive = out.exhaustive && r.exhaustive;
    if (r.positive) {
      out.elements.push_back(u);
      pos.set(u);
    }
  }
  out.is_base = true;
  for (Elem u = 0; u < f.size() && out.is_base; ++u)
    out.is_base = f.join_all(f.down(u) & pos) == u;
  return out;
}

// ---------------------------------------------------------------------------
// Compactness

/// A least-cardinality subset of `s` whose join is top; ties broken by the
/// lexicographically least index list. Greedy search gives the starting
/// bound, exact search over smaller subsets then minimizes it.
inline order::KFinSet<Elem> finite_subcover(const FiniteFrame& f, const std::vector<Elem>& s) {
  std::vector<Elem> items = s;
  std::sort(items.begin(), items.end());
  items.erase(std::unique(items.begin(), items.end()), items.end());
  for (Elem e : items)
    if (e >= f.size()) throw InvalidInput("element out of range");
  if (f.join_all(std::span<const Elem>(items)) != f.top())
    throw InvalidInput("the family does not cover top");
  // Greedy: repeatedly take the element that raises the running join most.
  std::vector<Elem> greedy;
  Elem acc = f.bottom();
  while (acc != f.top()) {
    Elem best = items.front();
    std::size_t best_gain = 0;
    for (Elem e : items) {
      std::size_t gain = f.down(f.join(acc, e)).count();
      if (gain > best_gain) best = e, best_gain = gain;
    }
    greedy.push_back(best);
    acc = f.join(acc, best);
  }
  std::sort(greedy.begin(), greedy.end());
  // Exact: first k-subset (lexicographic) covering top, k < |greedy|.
  const std::size_t n = items.size();
  for (std::size_t k = 0; k < greedy.size(); ++k) {
    std::vector<std::size_t> idx(k);
    for (std::size_t i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      Elem j = f.bottom();
      for (auto i : idx) j = f.join(j, items[i]);
      if (j == f.top()) {
        std::vector<Elem> out;
        for (auto i : idx) out.push_back(items[i]);
        return order::KFinSet<Elem>(std::move(out));
      }
      // Next combination.
      std::size_t i = k;
      while (i > 0 && idx[i - 1] == n - k + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t t = i; t < k; ++t) idx[t] = idx[t - 1] + 1;
    }
  }
  return order::KFinSet<Elem>(std::move(greedy));
}

struct CompactnessReport {
  bool compact = false;           // certificate: every cover is finitary
  std::string certificate;
  bool verified = false;          // verification pass ran and succeeded
  std::string method;             // "exhaustive-directed-scan", "principal-downset", "skipped"
  std::string note;
  std::size_t frame_size = 0;
};

/// Verifies on a finite frame that top lies in every directed cover of top.
/// Returns the method used, or nothing on failure.
inline std::optional<std::string> verify_directed_covers(const FiniteFrame& f,
                                                         const Limits& limits = {}) {
  const std::size_t n = f.size();
  if (n <= limits.compact_scan_cap) {
    for (unsigned long long m = 1; m < (1ULL << n); ++m) {
      Bits s(n);
      for (Elem e = 0; e < n; ++e)
        if ((m >> e) & 1ULL) s.set(e);
      if (!s.test(f.top()) && f.join_all(s) == f.top() &&
          order::is_directed(f.lattice(), s))
        return std::nullopt;
    }
    return "exhaustive-directed-scan";
  }
  // A finite directed set contains an upper bound of itself, hence its own
  // join; so it suffices that the only element whose principal downset
  // joins to top is top, and that every principal downset is directed.
  for (Elem a = 0; a < n; ++a) {
    if (a != f.top() && f.join_all(f.down(a)) == f.top()) return std::nullopt;
    if (!order::is_directed(f.lattice(), f.down(a))) return std::nullopt;
  }
  return "principal-downset";
}

inline CompactnessReport is_compact_presentation(const PresentationRef& p,
                                                 const Limits& limits = {}) {
  detail::require_stabilized(*p);
  CompactnessReport r;
  r.compact = true;
  r.certificate = "all covers finitary (" + std::to_string(p->covers().size()) + " rules)";
  try {
    auto pf = enumerate_frame(p, limits);
    r.frame_size = pf.frame->size();
    if (auto method = verify_directed_covers(*pf.frame, limits)) {
      r.verified = true;
      r.method = *method;
    } else {
      r.method = "failed";
      r.note = "a directed cover of top omits top";
    }
  } catch (const CapOverflow& e) {
    r.method = "skipped";
    r.note = e.what();
  }
  return r;
}

// ---------------------------------------------------------------------------
// Open and closed maps

struct MapCheck {
  bool adjoint_exists = true;
  bool holds = false;
  std::vector<Elem> adjoint;  // target element -> source element
  std::string failure;
};

/// Open map test for the locale map whose frame map is h: the left adjoint
/// f_!(b) = ⋀{a | b ≤ h(a)} must exist and satisfy f_!(h(a) ∧ b) = a ∧ f_!(b).
inline MapCheck check_open_map(const FrameHom& h) {
  const auto& s = *h.source();
  const auto& t = *h.target();
  MapCheck r;
  for (Elem b = 0; b < t.size(); ++b) {
    Elem m = s.top();
    for (Elem a = 0; a < s.size(); ++a)
      if (t.leq(b, h(a))) m = s.meet(m, a);
    r.adjoint.push_back(m);
  }
  for (Elem b = 0; b < t.size() && r.adjoint_exists; ++b)
    for (Elem a = 0; a < s.size(); ++a)
      if (s.leq(r.adjoint[b], a) != t.leq(b, h(a))) {
        r.adjoint_exists = false;
        r.failure = "no left adjoint: h does not preserve all meets (at '" + t.name(b) + "')";
        break;
      }
  if (!r.adjoint_exists) return r;
  for (Elem a = 0; a < s.size(); ++a)
    for (Elem b = 0; b < t.size(); ++b)
      if (r.adjoint[t.meet(h(a), b)] != s.meet(a, r.adjoint[b])) {
        r.failure = "Frobenius fails at a='" + s.name(a) + "', b='" + t.name(b) + "'";
        return r;
      }
  r.holds = true;
  return r;
}

/// Closed map test: the right adjoint f_*(b) = ⋁{a | h(a) ≤ b} must satisfy
/// f_*(h(a) ∨ b) = a ∨ f_*(b).
inline MapCheck check_closed_map(const FrameHom& h) {
  const auto& s = *h.source();
  const auto& t = *h.target();
  MapCheck r;
  for (Elem b = 0; b < t.size(); ++b) {
    Elem j = s.bottom();
    for (Elem a = 0; a < s.size(); ++a)
      if (t.leq(h(a), b)) j = s.join(j, a);
    r.adjoint.push_back(j);
  }
  for (Elem a = 0; a < s.size(); ++a)
    for (Elem b = 0; b < t.size(); ++b)
      if (r.adjoint[t.join(h(a), b)] != s.join(a, r.adjoint[b])) {
        r.failure = "closed-map identity fails at a='" + s.name(a) + "', b='" + t.name(b) + "'";
        return r;
      }
  r.holds = true;
  return r;
}

}  // namespace ptop::frame
