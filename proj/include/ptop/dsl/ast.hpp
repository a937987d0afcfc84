#pragma once

// Syntax tree for propositional geometric theories with finitely indexed
// families of basic propositions.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace ptop::dsl {

/// Source position. Locations never take part in equality, so a parsed
/// tree compares equal to the tree it was printed from.
struct Loc {
  std::size_t line = 0;
  std::size_t column = 0;
  friend bool operator==(const Loc&, const Loc&) { return true; }
};

/// Index argument: a variable or a literal.
struct IndexTerm {
  std::optional<std::string> var;
  std::uint64_t value = 0;

  static IndexTerm variable(std::string v) { return {std::move(v), 0}; }
  static IndexTerm literal(std::uint64_t n) { return {std::nullopt, n}; }
  bool operator==(const IndexTerm&) const = default;
};

/// Upper bound of a range: a literal or the name of a truncation parameter.
struct Bound {
  std::optional<std::string> param;
  std::uint64_t value = 0;
  bool operator==(const Bound&) const = default;
};

/// `v < bound`
struct Binder {
  std::string var;
  Bound bound;
  Loc loc;
  bool operator==(const Binder&) const = default;
};

struct Atom {
  std::string name;
  std::vector<IndexTerm> args;
  Loc loc;
  bool operator==(const Atom&) const = default;
};

/// Finite conjunction; empty means `true`.
struct Conj {
  std::vector<Atom> atoms;
  bool operator==(const Conj&) const = default;
};

/// One disjunct, optionally an indexed disjunction `any v<B: conj`.
struct Disjunct {
  std::optional<Binder> any;
  Conj conj;
  bool operator==(const Disjunct&) const = default;
};

/// Finite disjunction; empty means `false`.
struct Disj {
  std::vector<Disjunct> terms;
  bool operator==(const Disj&) const = default;
};

enum class CmpOp { Lt, Le, Eq, Ne };

/// Side condition on index values, or a binder introducing a new index.
struct Condition {
  std::optional<Binder> binder;
  IndexTerm lhs;
  CmpOp op = CmpOp::Lt;
  IndexTerm rhs;
  Loc loc;
  bool operator==(const Condition&) const = default;
};

struct Family {
  std::string name;
  std::vector<std::string> index_vars;
  Loc loc;
  bool operator==(const Family&) const = default;
};

/// `prop fam, fam for binders;`
struct PropDecl {
  std::vector<Family> families;
  std::vector<Binder> binders;
  bool operator==(const PropDecl&) const = default;
};

/// `axiom conj |- disj for conditions;`
struct Axiom {
  Conj lhs;
  Disj rhs;
  std::vector<Condition> conditions;
  Loc loc;
  bool operator==(const Axiom&) const = default;
};

struct TheoryAST {
  std::vector<PropDecl> props;
  std::vector<Axiom> axioms;
  bool operator==(const TheoryAST&) const = default;

  std::size_t family_count() const {
    std::size_t n = 0;
    for (const auto& p : props) n += p.families.size();
    return n;
  }
};

}  // namespace ptop::dsl
