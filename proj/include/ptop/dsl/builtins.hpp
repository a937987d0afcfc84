#pragma once

// Example theories: Sierpiński space, Cantor space, the Stone spectrum of a
// finite distributive lattice, and surjections [n] -> X.

#include <set>
#include <string>
#include <vector>

#include "ptop/dsl/ast.hpp"
#include "ptop/dsl/compile.hpp"
#include "ptop/dsl/parser.hpp"
#include "ptop/error.hpp"
#include "ptop/order/lattice.hpp"

namespace ptop::dsl {

struct BuiltinParams {
  std::uint64_t depth = 1;       // cantor: N
  std::uint64_t n = 1;           // surjection: domain size
  std::uint64_t codomain = 1;    // surjection: |X|
  const order::Lattice* lattice = nullptr;  // stone
};

struct BuiltinTheory {
  TheoryAST ast;
  TruncationParams truncation;
  std::string source;
};

inline const char* kSierpinskiSource = "prop g;\n";

inline const char* kCantorSource =
    "prop z[i], u[i] for i<N;\n"
    "axiom z[i] & u[i] |- false;\n"
    "axiom true |- z[i] | u[i];\n";

inline const char* kSurjectionSource =
    "prop f[k,x] for k<n, x<X;\n"
    "axiom f[k,x] & f[k,y] |- false for y<X, x != y;\n"
    "axiom true |- any x<X: f[k,x];\n"
    "axiom true |- any k<n: f[k,x];\n";

/// Propositions `in_<a>` for each lattice element; the four axiom families
/// of a prime filter split into inequalities.
inline std::string stone_source(const order::Lattice& l) {
  std::vector<std::string> prop(l.size());
  std::set<std::string> seen;
  for (Elem a = 0; a < l.size(); ++a) {
    std::string s = "in_";
    for (char c : l.name(a)) s += std::isalnum(static_cast<unsigned char>(c)) ? c : '_';
    if (!seen.insert(s).second) throw InvalidInput("lattice element names collide after sanitizing: " + s);
    prop[a] = s;
  }
  std::vector<std::string> lines;
  std::set<std::string> have;
  auto add = [&](const std::string& line) {
    if (have.insert(line).second) lines.push_back(line);
  };
  std::string decl = "prop ";
  for (Elem a = 0; a < l.size(); ++a) decl += (a ? ", " : "") + prop[a];
  add("axiom true |- " + prop[l.top()] + ";");
  add("axiom " + prop[l.bottom()] + " |- false;");
  for (Elem a = 0; a < l.size(); ++a)
    for (Elem b = a + 1; b < l.size(); ++b) {
      Elem m = l.meet(a, b), j = l.join(a, b);
      add("axiom " + prop[a] + " & " + prop[b] + " |- " + prop[m] + ";");
      if (m != a) add("axiom " + prop[m] + " |- " + prop[a] + ";");
      if (m != b) add("axiom " + prop[m] + " |- " + prop[b] + ";");
      add("axiom " + prop[j] + " |- " + prop[a] + " | " + prop[b] + ";");
      if (j != a) add("axiom " + prop[a] + " |- " + prop[j] + ";");
      if (j != b) add("axiom " + prop[b] + " |- " + prop[j] + ";");
    }
  std::string out = decl + ";\n";
  for (const auto& line : lines) out += line + "\n";
  return out;
}

inline BuiltinTheory builtin(const std::string& name, const BuiltinParams& params = {}) {
  BuiltinTheory out;
  if (name == "sierpinski") {
    out.source = kSierpinskiSource;
  } else if (name == "cantor") {
    out.source = kCantorSource;
    out.truncation.set("N", params.depth);
  } else if (name == "surjection") {
    out.source = kSurjectionSource;
    out.truncation.set("n", params.n);
    out.truncation.set("X", params.codomain);
  } else if (name == "stone") {
    if (!params.lattice) throw InvalidInput("builtin 'stone' needs a lattice");
    out.source = stone_source(*params.lattice);
  } else {
    throw InvalidInput("unknown builtin '" + name + "'");
  }
  out.ast = parse_theory(out.source);
  return out;
}

}  // namespace ptop::dsl
