#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "ptop/bits.hpp"
#include "ptop/error.hpp"

namespace ptop::order {

/// Canonical order on subsets: by cardinality, then by sorted member list.
inline bool canonical_less(const Bits& a, const Bits& b) {
  auto ca = a.count(), cb = b.count();
  if (ca != cb) return ca < cb;
  auto ia = a.find_first(), ib = b.find_first();
  while (ia != Bits::npos && ib != Bits::npos) {
    if (ia != ib) return ia < ib;
    ia = a.find_next(ia);
    ib = b.find_next(ib);
  }
  return false;
}

/// All fixed points of a closure operator on subsets of {0..universe-1},
/// canonically ordered (so the least closed set comes first and the whole
/// universe, when closed, last). Every closed set is reached by adding one
/// element at a time to a smaller closed set and closing.
template <typename Close>
std::vector<Bits> enumerate_closed_sets(std::size_t universe, Close&& close,
                                        std::size_t cap, const std::string& what) {
  std::set<Bits> seen;
  std::vector<Bits> frontier{close(Bits(universe))};
  seen.insert(frontier.front());
  while (!frontier.empty()) {
    std::vector<Bits> next;
    for (const Bits& s : frontier) {
      for (std::size_t x = 0; x < universe; ++x) {
        if (s.test(x)) continue;
        Bits t = s;
        t.set(x);
        t = close(t);
        if (seen.insert(t).second) {
          if (seen.size() > cap) throw CapOverflow(what, seen.size(), cap);
          next.push_back(std::move(t));
        }
      }
    }
    frontier = std::move(next);
  }
  std::vector<Bits> out(seen.begin(), seen.end());
  std::sort(out.begin(), out.end(), canonical_less);
  return out;
}

}  // namespace ptop::order
