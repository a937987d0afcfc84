#pragma once

#include <string>

#include "ptop/dsl/ast.hpp"

namespace ptop::dsl {

namespace detail {

inline std::string print_term(const IndexTerm& t) { return t.var ? *t.var : std::to_string(t.value); }

inline std::string print_binder(const Binder& b) {
  return b.var + "<" + (b.bound.param ? *b.bound.param : std::to_string(b.bound.value));
}

inline std::string print_atom(const Atom& a) {
  std::string out = a.name;
  if (a.args.empty()) return out;
  out += "[";
  for (std::size_t i = 0; i < a.args.size(); ++i) out += (i ? "," : "") + print_term(a.args[i]);
  return out + "]";
}

inline std::string print_conj(const Conj& c) {
  if (c.atoms.empty()) return "true";
  std::string out;
  for (std::size_t i = 0; i < c.atoms.size(); ++i) out += (i ? " & " : "") + print_atom(c.atoms[i]);
  return out;
}

inline std::string print_disj(const Disj& d) {
  if (d.terms.empty()) return "false";
  std::string out;
  for (std::size_t i = 0; i < d.terms.size(); ++i) {
    if (i) out += " | ";
    if (d.terms[i].any) out += "any " + print_binder(*d.terms[i].any) + ": ";
    out += print_conj(d.terms[i].conj);
  }
  return out;
}

inline const char* print_op(CmpOp op) {
  switch (op) {
    case CmpOp::Lt: return "<";
    case CmpOp::Le: return "<=";
    case CmpOp::Eq: return "=";
    case CmpOp::Ne: return "!=";
  }
  return "?";
}

}  // namespace detail

/// Canonical text; parse_theory(print_theory(t)) == t.
inline std::string print_theory(const TheoryAST& t) {
  using namespace detail;
  std::string out;
  for (const auto& d : t.props) {
    out += "prop ";
    for (std::size_t i = 0; i < d.families.size(); ++i) {
      const auto& f = d.families[i];
      out += (i ? ", " : "") + f.name;
      if (!f.index_vars.empty()) {
        out += "[";
        for (std::size_t k = 0; k < f.index_vars.size(); ++k) out += (k ? "," : "") + f.index_vars[k];
        out += "]";
      }
    }
    if (!d.binders.empty()) {
      out += " for ";
      for (std::size_t i = 0; i < d.binders.size(); ++i) out += (i ? ", " : "") + print_binder(d.binders[i]);
    }
    out += ";\n";
  }
  for (const auto& a : t.axioms) {
    out += "axiom " + print_conj(a.lhs) + " |- " + print_disj(a.rhs);
    if (!a.conditions.empty()) {
      out += " for ";
      for (std::size_t i = 0; i < a.conditions.size(); ++i) {
        const auto& c = a.conditions[i];
        out += i ? ", " : "";
        out += c.binder ? print_binder(*c.binder)
                        : print_term(c.lhs) + " " + print_op(c.op) + " " + print_term(c.rhs);
      }
    }
    out += ";\n";
  }
  return out;
}

}  // namespace ptop::dsl
