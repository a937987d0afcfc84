// Encloses the supremum of x*(1-x) on [0,1] and answers a located cut.

#include <iostream>

#include "ptop/reals/evt.hpp"

int main() {
  using namespace ptop::reals;
  auto e = parse_expr("x*(1-x)");
  auto d = parse_domain("[0,1]");

  auto r = evt_maximize(e, d, parse_rat("1/1000000"));
  std::cout << "sup in [" << to_string(r.enclosure.lower) << ", " << to_decimal(r.enclosure.upper, 8)
            << "] after " << r.nodes_expanded << " nodes\n";
  std::cout << "maximizers within " << to_string(r.cover.delta) << ":";
  for (const auto& iv : r.cover.intervals) std::cout << " " << iv.to_string();
  std::cout << "\n";

  auto loc = locate(e, d, parse_rat("1/5"), parse_rat("1/3"));
  std::cout << "cut (1/5, 1/3): " << to_string(loc.branch) << "\n";
}
