#pragma once

// Brute-force oracles for presented frames. The C-ideal scan checks every
// subset of formal meets directly; the quotient oracle builds the free frame
// as downsets of the formal-meet poset and divides by the congruence that
// the raw (unstabilized) relations generate.

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "ptop/frame/cideal.hpp"
#include "ptop/frame/congruence.hpp"
#include "ptop/order/constructions.hpp"

namespace oracle {

/// Every subset of formal meets that is closed under adding generators and
/// under every stabilized cover rule.
inline std::vector<Bits> cideals(const ptop::frame::FramePresentation& p) {
  const std::size_t n = p.meet_count();
  std::vector<Bits> out;
  for (unsigned long long m = 0; m < (1ULL << n); ++m) {
    auto in = [&](std::size_t x) { return ((m >> x) & 1ULL) != 0; };
    bool ok = true;
    for (std::size_t x = 0; x < n && ok; ++x)
      for (std::size_t y = 0; y < n && ok; ++y)
        if (in(x) && (x & y) == x && !in(y)) ok = false;
    for (const auto& r : p.covers()) {
      if (!ok) break;
      bool all = true;
      for (auto t : r.rhs) all = all && in(t.gens);
      if (all && !in(r.lhs.gens)) ok = false;
    }
    if (ok) out.push_back(subset_bits(n, m));
  }
  return out;
}

/// Poset of formal meets on n generators: mask a ≤ b iff a ⊇ b. Element i
/// is the mask i.
inline ptop::order::Poset formal_meet_poset(std::size_t gens) {
  const std::size_t n = std::size_t{1} << gens;
  std::vector<std::string> names;
  for (std::size_t i = 0; i < n; ++i) names.push_back("m" + std::to_string(100 + i));
  std::vector<std::vector<bool>> leq(n, std::vector<bool>(n));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) leq[a][b] = (a & b) == b;
  return ptop::order::Poset::from_matrix(names, leq);
}

/// Compares enumerate_frame(stabilize(p)) against the free-frame quotient.
/// Returns a failure description, or nothing when they are order-isomorphic
/// via D ↦ saturate(D).
inline std::optional<std::string> quotient_disagreement(
    const ptop::frame::FramePresentation& raw) {
  using namespace ptop;
  using namespace ptop::frame;
  auto stab = std::make_shared<const FramePresentation>(stabilize(raw));
  auto pf = enumerate_frame(stab);

  auto poset = formal_meet_poset(raw.generator_count());
  auto free = order::downset_lattice(poset);
  auto ff = share(FiniteFrame(free.lattice));
  const std::size_t masks = raw.meet_count();
  auto down_of = [&](std::uint32_t mask) { return poset.down(mask); };
  std::vector<std::pair<Elem, Elem>> pairs;
  for (const auto& r : raw.relations()) {
    Bits j(masks);
    for (auto t : r.rhs) j |= down_of(t.gens);
    pairs.emplace_back(free.of(j | down_of(r.lhs.gens)), free.of(j));
  }
  auto cong = congruence_generate(ff, pairs);
  auto q = quotient(cong);

  const std::size_t n = ff->size();
  std::vector<Elem> phi(n);
  for (Elem x = 0; x < n; ++x) phi[x] = pf.element_of(saturate(stab, free.members[x]));
  if (q.frame->size() != pf.frame->size())
    return "size " + std::to_string(q.frame->size()) + " vs " + std::to_string(pf.frame->size());
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      if (cong.related(x, y) != (phi[x] == phi[y])) return "kernel mismatch";
      if (q.frame->leq(q.hom(x), q.hom(y)) != pf.frame->leq(phi[x], phi[y]))
        return "order mismatch";
    }
  return std::nullopt;
}

/// Random raw presentation: 1..max_gens generators, 0..max_covers rules,
/// each rule with up to 3 right-hand meets.
inline ptop::frame::FramePresentation random_presentation(std::mt19937& rng,
                                                          std::size_t max_gens = 4,
                                                          std::size_t max_covers = 4) {
  using namespace ptop::frame;
  std::size_t gens = std::uniform_int_distribution<std::size_t>(1, max_gens)(rng);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < gens; ++i) names.push_back("g" + std::to_string(i));
  std::uniform_int_distribution<std::uint32_t> mask(0, (1u << gens) - 1);
  std::size_t covers = std::uniform_int_distribution<std::size_t>(0, max_covers)(rng);
  std::vector<CoverRule> rules;
  for (std::size_t i = 0; i < covers; ++i) {
    std::vector<FormalMeet> rhs;
    std::size_t k = std::uniform_int_distribution<std::size_t>(0, 3)(rng);
    for (std::size_t j = 0; j < k; ++j) rhs.push_back(FormalMeet{mask(rng)});
    rules.emplace_back(FormalMeet{mask(rng)}, std::move(rhs));
  }
  return FramePresentation::make(names, rules);
}

}  // namespace oracle
