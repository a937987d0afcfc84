#pragma once

// Presentation text format:
//
//   # comment
//   gen z0 u0
//   rel z0 & u0 <= bot
//   rel top <= z0 | u0
//   rel a = b | c
//
// `&` joins generators into one formal meet, `|` separates formal meets,
// `top` is the empty meet and `bot` the empty join. A relation with several
// meets on the left splits into one rule per meet; `=` gives both directions.

#include <cctype>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "ptop/config.hpp"
#include "ptop/error.hpp"
#include "ptop/frame/cideal.hpp"
#include "ptop/frame/presentation.hpp"

namespace ptop::frame {

namespace detail {

struct Lexer {
  std::string text;
  std::size_t line;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  bool done() {
    skip_ws();
    return pos >= text.size();
  }
  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, line, pos + 1); }
  bool eat(const std::string& tok) {
    skip_ws();
    if (text.compare(pos, tok.size(), tok) == 0) {
      pos += tok.size();
      return true;
    }
    return false;
  }
  std::string ident() {
    skip_ws();
    std::size_t start = pos;
    while (pos < text.size() && (std::isalnum(static_cast<unsigned char>(text[pos])) ||
                                 text[pos] == '_' || text[pos] == '.' || text[pos] == '\''))
      ++pos;
    if (start == pos) fail("expected a name");
    return text.substr(start, pos - start);
  }
};

using MeetNames = std::vector<std::string>;

// meet := "top" | name ("&" name)*
inline MeetNames parse_meet(Lexer& lx) {
  MeetNames out;
  std::string first = lx.ident();
  if (first == "top") return out;
  if (first == "bot") lx.fail("'bot' is not a formal meet");
  out.push_back(first);
  while (lx.eat("&")) {
    std::string g = lx.ident();
    if (g == "top" || g == "bot") lx.fail("'" + g + "' inside a formal meet");
    out.push_back(g);
  }
  return out;
}

// join := "bot" | meet ("|" meet)*
inline std::vector<MeetNames> parse_join(Lexer& lx) {
  lx.skip_ws();
  std::size_t save = lx.pos;
  if (lx.ident() == "bot") return {};
  lx.pos = save;
  std::vector<MeetNames> out{parse_meet(lx)};
  while (lx.eat("|")) out.push_back(parse_meet(lx));
  return out;
}

}  // namespace detail

inline FramePresentation parse_presentation(const std::string& text, const Limits& limits = {}) {
  std::vector<std::string> gens;
  std::vector<FramePresentation::NamedRule> rules;
  bool have_gen = false;
  std::istringstream in(text);
  std::string raw;
  std::size_t lineno = 0;
  std::size_t gen_line = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    detail::Lexer lx{raw, lineno};
    if (lx.done()) continue;
    std::string kw = lx.ident();
    if (kw == "gen") {
      if (have_gen) lx.fail("duplicate 'gen' line");
      have_gen = true;
      gen_line = lineno;
      while (!lx.done()) {
        std::string g = lx.ident();
        if (g == "top" || g == "bot") lx.fail("reserved name '" + g + "'");
        gens.push_back(g);
      }
    } else if (kw == "rel") {
      auto lhs = detail::parse_join(lx);
      bool eq;
      if (lx.eat("<=")) eq = false;
      else if (lx.eat("=")) eq = true;
      else lx.fail("expected '<=' or '='");
      auto rhs = detail::parse_join(lx);
      if (!lx.done()) lx.fail("unexpected trailing text");
      for (const auto& s : lhs) rules.push_back({s, rhs});
      if (eq)
        for (const auto& t : rhs) rules.push_back({t, lhs});
    } else {
      throw ParseError("expected 'gen' or 'rel'", lineno, 1);
    }
  }
  if (!have_gen) throw ParseError("missing 'gen' line", lineno + 1, 1);
  try {
    return FramePresentation::from_names(gens, rules, limits);
  } catch (const CapOverflow&) {
    throw;
  } catch (const InvalidInput& e) {
    throw ParseError(e.what(), gen_line, 1);
  }
}

/// One `rel` line per stored rule (relations before stabilization).
inline std::string print_presentation(const FramePresentation& p) {
  std::string out = "gen";
  for (const auto& g : p.generators()) out += " " + g;
  out += "\n";
  for (const auto& r : p.relations()) out += "rel " + p.to_string(r) + "\n";
  return out;
}

/// Element expression over generators: `|` binds looser than `&`,
/// parentheses group, `top` and `bot` are constants.
inline CIdeal parse_element(const PresentationRef& p, const std::string& text) {
  detail::Lexer lx{text, 1};
  std::function<CIdeal()> join_expr, meet_expr, atom;
  atom = [&]() -> CIdeal {
    if (lx.eat("(")) {
      auto v = join_expr();
      if (!lx.eat(")")) lx.fail("expected ')'");
      return v;
    }
    std::string name = lx.ident();
    if (name == "top") return cideal_top(p);
    if (name == "bot") return cideal_bottom(p);
    std::size_t g;
    try {
      g = p->generator_index(name);
    } catch (const InvalidInput&) {
      lx.fail("unknown generator '" + name + "'");
    }
    return generator_ideal(p, g);
  };
  meet_expr = [&]() {
    auto v = atom();
    while (lx.eat("&")) v = cideal_meet(v, atom());
    return v;
  };
  join_expr = [&]() {
    auto v = meet_expr();
    while (lx.eat("|")) v = cideal_join(v, meet_expr());
    return v;
  };
  auto v = join_expr();
  if (!lx.done()) lx.fail("unexpected trailing text");
  return v;
}

/// JSON export: `elements` (generating formal meets of each C-ideal),
/// `leq_pairs` (index pairs i ≤ j), `points` (generators true at each point).
inline nlohmann::json frame_to_json(const PresentedFrame& pf) {
  using nlohmann::json;
  const auto& f = *pf.frame;
  json elements = json::array();
  for (Elem e = 0; e < f.size(); ++e) {
    json meets = json::array();
    for (auto m : pf.ideal(e).generators()) meets.push_back(pf.presentation->to_string(m));
    elements.push_back(meets);
  }
  json leq = json::array();
  for (Elem a = 0; a < f.size(); ++a)
    for (Elem b = 0; b < f.size(); ++b)
      if (f.leq(a, b)) leq.push_back({a, b});
  json pts = json::array();
  for (const auto& pt : points(f)) {
    json truths = json::array();
    for (std::size_t g = 0; g < pf.generator_embedding.size(); ++g)
      if (pt.test(pf.generator_embedding[g])) truths.push_back(pf.presentation->generators()[g]);
    pts.push_back(truths);
  }
  return json{{"generators", pf.presentation->generators()},
              {"size", f.size()},
              {"elements", elements},
              {"leq_pairs", leq},
              {"points", pts}};
}

}  // namespace ptop::frame
