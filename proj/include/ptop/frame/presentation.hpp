#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ptop/config.hpp"
#include "ptop/error.hpp"

namespace ptop::frame {

/// A formal finite meet of generators, stored as a bit mask over the
/// presentation's (sorted) generator list. The empty meet is top.
///
/// In the generator semilattice a ≤ b iff a mentions every generator of b,
/// and a ∧ b is the union of the two masks.
struct FormalMeet {
  std::uint32_t gens = 0;

  bool below(FormalMeet other) const { return (gens & other.gens) == other.gens; }
  FormalMeet meet(FormalMeet other) const { return {gens | other.gens}; }
  bool is_top() const { return gens == 0; }

  auto operator<=>(const FormalMeet&) const = default;
};

/// lhs ≤ ⋁rhs. An empty rhs makes lhs bottom.
struct CoverRule {
  FormalMeet lhs;
  std::vector<FormalMeet> rhs;  // sorted, duplicate-free

  CoverRule() = default;
  CoverRule(FormalMeet l, std::vector<FormalMeet> r) : lhs(l), rhs(std::move(r)) {
    std::sort(rhs.begin(), rhs.end());
    rhs.erase(std::unique(rhs.begin(), rhs.end()), rhs.end());
  }

  auto operator<=>(const CoverRule&) const = default;
};

/// Hard ceiling on generators: formal meets are indexed by 32-bit masks and
/// every C-ideal is a bitset over all 2^n of them.
inline constexpr std::size_t kMaxGeneratorsHard = 20;

class FramePresentation {
 public:
  FramePresentation() = default;

  /// Generators are sorted; rule masks refer to the sorted order, so callers
  /// building masks by hand should use `meet_of` on the result instead.
  static FramePresentation make(std::vector<std::string> generators,
                                std::vector<CoverRule> relations,
                                const Limits& limits = {}) {
    FramePresentation p;
    auto sorted = generators;
    std::sort(sorted.begin(), sorted.end());
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      throw InvalidInput("duplicate generator '" +
                         *std::adjacent_find(sorted.begin(), sorted.end()) + "'");
    const std::size_t n = sorted.size();
    if (n > limits.max_generators) throw CapOverflow("generator set", n, limits.max_generators);
    if (n > kMaxGeneratorsHard) throw CapOverflow("generator set", n, kMaxGeneratorsHard);
    // Remap masks from the caller's order to sorted order.
    std::vector<std::uint32_t> remap(n);
    for (std::size_t i = 0; i < n; ++i)
      remap[i] = static_cast<std::uint32_t>(
          std::lower_bound(sorted.begin(), sorted.end(), generators[i]) - sorted.begin());
    auto convert = [&](FormalMeet m) {
      if (n < 32 && (m.gens >> n) != 0) throw InvalidInput("formal meet mentions unknown generator");
      FormalMeet out;
      for (std::size_t i = 0; i < n; ++i)
        if ((m.gens >> i) & 1u) out.gens |= 1u << remap[i];
      return out;
    };
    std::set<CoverRule> rules;
    for (const auto& r : relations) {
      std::vector<FormalMeet> rhs;
      for (auto t : r.rhs) rhs.push_back(convert(t));
      rules.emplace(convert(r.lhs), std::move(rhs));
    }
    p.generators_ = std::move(sorted);
    p.relations_.assign(rules.begin(), rules.end());
    p.covers_ = p.relations_;
    return p;
  }

  /// Rules spelled with generator names: lhs is a list of generators (empty
  /// for top), rhs a list of such lists (empty for bottom).
  struct NamedRule {
    std::vector<std::string> lhs;
    std::vector<std::vector<std::string>> rhs;
  };

  static FramePresentation from_names(std::vector<std::string> generators,
                                      const std::vector<NamedRule>& rules,
                                      const Limits& limits = {}) {
    auto p = make(std::move(generators), {}, limits);
    std::set<CoverRule> out;
    for (const auto& r : rules) {
      std::vector<FormalMeet> rhs;
      for (const auto& t : r.rhs) rhs.push_back(p.meet_of(t));
      out.emplace(p.meet_of(r.lhs), std::move(rhs));
    }
    p.relations_.assign(out.begin(), out.end());
    p.covers_ = p.relations_;
    return p;
  }

  const std::vector<std::string>& generators() const noexcept { return generators_; }
  std::size_t generator_count() const noexcept { return generators_.size(); }
  std::size_t meet_count() const noexcept { return std::size_t{1} << generators_.size(); }

  /// The relations as given (before stabilization).
  const std::vector<CoverRule>& relations() const noexcept { return relations_; }
  /// The cover rules in force: equal to relations() until stabilized.
  const std::vector<CoverRule>& covers() const noexcept { return covers_; }
  bool stabilized() const noexcept { return stabilized_; }

  std::size_t generator_index(const std::string& g) const {
    auto it = std::lower_bound(generators_.begin(), generators_.end(), g);
    if (it == generators_.end() || *it != g) throw InvalidInput("unknown generator '" + g + "'");
    return static_cast<std::size_t>(it - generators_.begin());
  }

  FormalMeet meet_of(const std::vector<std::string>& gens) const {
    FormalMeet m;
    for (const auto& g : gens) m.gens |= 1u << generator_index(g);
    return m;
  }

  /// "top" for the empty meet, else generator names joined by " & ".
  std::string to_string(FormalMeet m) const {
    if (m.is_top()) return "top";
    std::string out;
    for (std::size_t i = 0; i < generators_.size(); ++i) {
      if (!((m.gens >> i) & 1u)) continue;
      if (!out.empty()) out += " & ";
      out += generators_[i];
    }
    return out;
  }

  std::string to_string(const CoverRule& r) const {
    std::string out = to_string(r.lhs) + " <= ";
    if (r.rhs.empty()) return out + "bot";
    for (std::size_t i = 0; i < r.rhs.size(); ++i) {
      if (i) out += " | ";
      out += to_string(r.rhs[i]);
    }
    return out;
  }

  friend bool operator==(const FramePresentation& a, const FramePresentation& b) {
    return a.generators_ == b.generators_ && a.covers_ == b.covers_ &&
           a.stabilized_ == b.stabilized_;
  }

  friend FramePresentation stabilize(const FramePresentation& p, const Limits& limits);

 private:
  std::vector<std::string> generators_;
  std::vector<CoverRule> relations_;
  std::vector<CoverRule> covers_;
  bool stabilized_ = false;
};

/// Closes the cover rules under meeting with every formal meet u:
/// (c, T) ↦ (u ∧ c, {u ∧ t | t ∈ T}). Idempotent.
inline FramePresentation stabilize(const FramePresentation& p, const Limits& limits = {}) {
  if (p.generator_count() > limits.max_generators)
    throw CapOverflow("generator set", p.generator_count(), limits.max_generators);
  if (p.stabilized_) return p;
  std::set<CoverRule> rules;
  const std::uint32_t meets = static_cast<std::uint32_t>(p.meet_count());
  for (const auto& r : p.covers_) {
    for (std::uint32_t u = 0; u < meets; ++u) {
      FormalMeet fu{u};
      std::vector<FormalMeet> rhs;
      rhs.reserve(r.rhs.size());
      for (auto t : r.rhs) rhs.push_back(fu.meet(t));
      rules.emplace(fu.meet(r.lhs), std::move(rhs));
    }
  }
  FramePresentation out = p;
  out.covers_.assign(rules.begin(), rules.end());
  out.stabilized_ = true;
  return out;
}

}  // namespace ptop::frame
