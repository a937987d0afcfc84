#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace ptop {

/// Index of an element inside a finite poset, lattice or frame.
using Elem = std::uint32_t;

using Bits = boost::dynamic_bitset<std::uint64_t>;

template <typename F>
void for_each_bit(const Bits& b, F&& f) {
  for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i))
    f(static_cast<Elem>(i));
}

inline std::vector<Elem> bits_to_elems(const Bits& b) {
  std::vector<Elem> out;
  out.reserve(b.count());
  for_each_bit(b, [&](Elem e) { out.push_back(e); });
  return out;
}

inline Bits elems_to_bits(std::size_t n, const std::vector<Elem>& es) {
  Bits b(n);
  for (Elem e : es) b.set(e);
  return b;
}

}  // namespace ptop
