// Builds Cantor space at depth 2 from a theory, counts its points, checks
// compactness, then takes a closed sublocale. The Hausdorff check runs at
// depth 1: the depth-2 coproduct exceeds the default lattice cap.

#include <iostream>
#include <memory>

#include "ptop/dsl/builtins.hpp"
#include "ptop/frame/io.hpp"
#include "ptop/frame/properties.hpp"

int main() {
  using namespace ptop;
  auto ast = dsl::parse_theory(
      "prop z[i], u[i] for i<N;\n"
      "axiom z[i] & u[i] |- false;\n"
      "axiom true |- z[i] | u[i];\n");
  auto t = dsl::TruncationParams::parse("N=2");
  auto pres = std::make_shared<const frame::FramePresentation>(dsl::compile(ast, t));
  auto pf = frame::enumerate_frame(pres);

  std::cout << "frame size: " << pf.frame->size() << "\n";
  std::cout << "points: " << frame::points(*pf.frame).size() << "\n";
  std::cout << "compact: " << frame::is_compact_presentation(pres).compact << "\n";

  try {
    frame::is_hausdorff(pf.frame);
  } catch (const CapOverflow& e) {
    std::cout << "depth 2: " << e.what() << "\n";
  }
  auto shallow = frame::enumerate_frame(std::make_shared<const frame::FramePresentation>(
      dsl::compile(ast, dsl::TruncationParams::parse("N=1"))));
  auto h = frame::is_hausdorff(shallow.frame);
  std::cout << "depth 1 hausdorff: " << h.hausdorff << " (witness " << h.witness_name << ")\n";

  Elem z0 = pf.generator_embedding[0];
  auto closed = frame::closed_congruence(pf.frame, z0);
  auto open = frame::open_congruence(pf.frame, z0);
  std::cout << "closed sublocale of " << pf.frame->name(z0) << " has "
            << frame::quotient(closed).frame->size() << " elements; complementary to open: "
            << frame::is_complementary(open, closed) << "\n";
}
