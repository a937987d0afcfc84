#pragma once

// Compilation of theories to frame presentations by instantiating every
// indexed family and axiom schema over finite truncation bounds.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "ptop/config.hpp"
#include "ptop/dsl/ast.hpp"
#include "ptop/error.hpp"
#include "ptop/frame/cideal.hpp"
#include "ptop/frame/finite_frame.hpp"
#include "ptop/frame/presentation.hpp"

namespace ptop::dsl {

/// Upper bounds for truncation parameters, each strictly positive.
struct TruncationParams {
  std::map<std::string, std::uint64_t> bounds;

  /// "N=2,X=3" (whitespace ignored).
  static TruncationParams parse(const std::string& text) {
    TruncationParams t;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
      item.erase(std::remove_if(item.begin(), item.end(), ::isspace), item.end());
      if (item.empty()) continue;
      auto eq = item.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == item.size())
        throw InvalidInput("truncation bound '" + item + "' is not of the form NAME=VALUE");
      std::string name = item.substr(0, eq), val = item.substr(eq + 1);
      if (!std::all_of(val.begin(), val.end(), ::isdigit) || val.size() > 9)
        throw InvalidInput("truncation bound for '" + name + "' is not a natural number");
      t.set(name, std::stoull(val));
    }
    return t;
  }

  void set(const std::string& name, std::uint64_t v) {
    if (v == 0) throw InvalidInput("truncation bound for '" + name + "' must be positive");
    bounds[name] = v;
  }
};

namespace detail {

/// z[0] -> "z0", f[0,1] -> "f0_1", g -> "g".
inline std::string instance_name(const std::string& family, const std::vector<std::uint64_t>& idx) {
  std::string out = family;
  for (std::size_t i = 0; i < idx.size(); ++i) out += (i ? "_" : "") + std::to_string(idx[i]);
  return out;
}

inline std::uint64_t bound_value(const Bound& b, const TruncationParams& t, const Loc& loc) {
  if (!b.param) return b.value;
  auto it = t.bounds.find(*b.param);
  if (it == t.bounds.end())
    throw InvalidInput(std::to_string(loc.line) + ":" + std::to_string(loc.column) +
                       ": no truncation bound given for '" + *b.param + "'");
  return it->second;
}

using Env = std::map<std::string, std::uint64_t>;

inline std::uint64_t eval(const IndexTerm& t, const Env& env) {
  return t.var ? env.at(*t.var) : t.value;
}

inline void collect_vars(const Conj& c, std::set<std::string>& out, const std::string& shadow = "") {
  for (const auto& a : c.atoms)
    for (const auto& t : a.args)
      if (t.var && *t.var != shadow) out.insert(*t.var);
}

/// Visits every assignment of `vars` below `ranges` in lexicographic order.
template <typename F>
void for_each_tuple(const std::vector<std::uint64_t>& ranges, F&& f) {
  for (auto r : ranges)
    if (r == 0) return;
  std::vector<std::uint64_t> cur(ranges.size(), 0);
  while (true) {
    f(cur);
    std::size_t i = ranges.size();
    while (i > 0) {
      --i;
      if (++cur[i] < ranges[i]) break;
      cur[i] = 0;
      if (i == 0) return;
    }
    if (ranges.empty()) return;
  }
}

}  // namespace detail

/// Instantiated presentation before stabilization: one generator per family
/// instance, one rule per axiom instance satisfying its side conditions.
inline frame::FramePresentation compile_raw(const TheoryAST& ast, const TruncationParams& t,
                                            const Limits& limits = {}) {
  using namespace detail;
  std::map<std::string, std::uint64_t> global_range;
  std::map<std::string, std::vector<std::uint64_t>> family_ranges;
  std::uint64_t total = 0;
  for (const auto& d : ast.props) {
    std::map<std::string, std::uint64_t> local;
    for (const auto& b : d.binders) {
      local[b.var] = bound_value(b.bound, t, b.loc);
      global_range[b.var] = local[b.var];
    }
    for (const auto& f : d.families) {
      std::vector<std::uint64_t> r;
      std::uint64_t count = 1;
      for (const auto& v : f.index_vars) {
        r.push_back(local.at(v));
        count *= r.back();
        if (count > limits.max_generators) break;
      }
      total += count;
      if (total > limits.max_generators)
        throw CapOverflow("instantiated generator set", static_cast<std::size_t>(total),
                          limits.max_generators);
      family_ranges[f.name] = std::move(r);
    }
  }
  std::vector<std::string> gens;
  for (const auto& d : ast.props)
    for (const auto& f : d.families)
      for_each_tuple(family_ranges[f.name],
                     [&](const std::vector<std::uint64_t>& idx) { gens.push_back(instance_name(f.name, idx)); });

  auto inst_atom = [&](const Atom& a, const Env& env) {
    const auto& ranges = family_ranges.at(a.name);
    std::vector<std::uint64_t> idx;
    for (std::size_t i = 0; i < a.args.size(); ++i) {
      idx.push_back(eval(a.args[i], env));
      if (idx.back() >= ranges[i])
        throw InvalidInput(std::to_string(a.loc.line) + ":" + std::to_string(a.loc.column) +
                           ": index " + std::to_string(idx.back()) + " of '" + a.name +
                           "' is outside its range");
    }
    return instance_name(a.name, idx);
  };
  auto inst_conj = [&](const Conj& c, const Env& env) {
    std::vector<std::string> out;
    for (const auto& a : c.atoms) out.push_back(inst_atom(a, env));
    return out;
  };

  std::vector<frame::FramePresentation::NamedRule> rules;
  for (const auto& ax : ast.axioms) {
    std::set<std::string> local_binders;
    std::vector<std::string> vars;
    std::vector<std::uint64_t> ranges;
    for (const auto& c : ax.conditions)
      if (c.binder) local_binders.insert(c.binder->var);
    std::set<std::string> used;
    collect_vars(ax.lhs, used);
    for (const auto& term : ax.rhs.terms) collect_vars(term.conj, used, term.any ? term.any->var : "");
    for (const auto& c : ax.conditions)
      if (!c.binder) {
        if (c.lhs.var) used.insert(*c.lhs.var);
        if (c.rhs.var) used.insert(*c.rhs.var);
      }
    for (const auto& v : used)
      if (!local_binders.count(v)) {
        vars.push_back(v);
        ranges.push_back(global_range.at(v));
      }
    for (const auto& c : ax.conditions)
      if (c.binder) {
        vars.push_back(c.binder->var);
        ranges.push_back(bound_value(c.binder->bound, t, c.binder->loc));
      }
    for_each_tuple(ranges, [&](const std::vector<std::uint64_t>& vals) {
      Env env;
      for (std::size_t i = 0; i < vars.size(); ++i) env[vars[i]] = vals[i];
      for (const auto& c : ax.conditions) {
        if (c.binder) continue;
        auto l = eval(c.lhs, env), r = eval(c.rhs, env);
        bool ok = c.op == CmpOp::Lt ? l < r : c.op == CmpOp::Le ? l <= r : c.op == CmpOp::Eq ? l == r : l != r;
        if (!ok) return;
      }
      frame::FramePresentation::NamedRule rule;
      rule.lhs = inst_conj(ax.lhs, env);
      for (const auto& term : ax.rhs.terms) {
        if (!term.any) {
          rule.rhs.push_back(inst_conj(term.conj, env));
          continue;
        }
        auto n = bound_value(term.any->bound, t, term.any->loc);
        for (std::uint64_t v = 0; v < n; ++v) {
          Env inner = env;
          inner[term.any->var] = v;
          rule.rhs.push_back(inst_conj(term.conj, inner));
        }
      }
      rules.push_back(std::move(rule));
    });
  }
  return frame::FramePresentation::from_names(std::move(gens), rules, limits);
}

/// Instantiates and stabilizes.
inline frame::FramePresentation compile(const TheoryAST& ast, const TruncationParams& t,
                                        const Limits& limits = {}) {
  return frame::stabilize(compile_raw(ast, t, limits), limits);
}

/// Truth assignment as a generator mask: does it satisfy every rule?
inline bool satisfies(const frame::FramePresentation& p, std::uint32_t truth) {
  for (const auto& r : p.relations()) {
    if ((r.lhs.gens & truth) != r.lhs.gens) continue;
    bool some = std::any_of(r.rhs.begin(), r.rhs.end(),
                            [&](frame::FormalMeet t) { return (t.gens & truth) == t.gens; });
    if (!some) return false;
  }
  return true;
}

/// Models of the compiled theory: the points of its frame, each read back
/// as the mask of basic propositions it makes true.
inline std::vector<std::uint32_t> models(const frame::PresentedFrame& pf) {
  std::vector<std::uint32_t> out;
  for (const auto& pt : frame::points(*pf.frame)) {
    std::uint32_t truth = 0;
    for (std::size_t g = 0; g < pf.generator_embedding.size(); ++g)
      if (pt.test(pf.generator_embedding[g])) truth |= 1u << g;
    out.push_back(truth);
  }
  return out;
}

inline std::vector<std::string> true_props(const frame::FramePresentation& p, std::uint32_t truth) {
  std::vector<std::string> out;
  for (std::size_t g = 0; g < p.generator_count(); ++g)
    if ((truth >> g) & 1u) out.push_back(p.generators()[g]);
  return out;
}

}  // namespace ptop::dsl
