#pragma once

// Line-oriented poset/lattice format:
//
//   # comment
//   elements: a b c
//   leq: a<b b<c
//
// `leq` may repeat; chains like a<b<c are accepted. The transitive closure is
// taken automatically.

#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "ptop/error.hpp"
#include "ptop/order/lattice.hpp"
#include "ptop/order/poset.hpp"

namespace ptop::order {

inline Poset parse_poset(const std::string& text) {
  std::vector<std::string> names;
  std::vector<std::pair<std::string, std::string>> less;
  bool have_elements = false;
  std::istringstream in(text);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    auto colon = line.find(':');
    std::istringstream words(line);
    std::string first;
    if (!(words >> first)) continue;
    if (colon == std::string::npos)
      throw ParseError("expected 'elements:' or 'leq:'", lineno, 1);
    std::string key = line.substr(0, colon);
    key.erase(0, key.find_first_not_of(" \t"));
    key.erase(key.find_last_not_of(" \t") + 1);
    std::istringstream rest(line.substr(colon + 1));
    std::string tok;
    if (key == "elements") {
      have_elements = true;
      while (rest >> tok) names.push_back(tok);
    } else if (key == "leq") {
      while (rest >> tok) {
        std::vector<std::string> chain;
        std::size_t start = 0;
        for (std::size_t pos; (pos = tok.find('<', start)) != std::string::npos;
             start = pos + 1)
          chain.push_back(tok.substr(start, pos - start));
        chain.push_back(tok.substr(start));
        if (chain.size() < 2)
          throw ParseError("expected a<b in leq list, got '" + tok + "'", lineno,
                           colon + 2);
        for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
          if (chain[i].empty() || chain[i + 1].empty())
            throw ParseError("empty element name in '" + tok + "'", lineno, colon + 2);
          less.emplace_back(chain[i], chain[i + 1]);
        }
      }
    } else {
      throw ParseError("unknown key '" + key + "'", lineno, 1);
    }
  }
  if (!have_elements) throw ParseError("missing 'elements:' line", 1, 1);
  return Poset::from_relation(std::move(names), less);
}

inline Lattice parse_lattice(const std::string& text, const Limits& limits = {}) {
  return Lattice::from_poset(parse_poset(text), limits);
}

/// `{elements: [...], hasse_edges: [[lo, hi], ...]}`.
inline nlohmann::json poset_to_json(const Poset& p) {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : p.hasse_edges()) edges.push_back({p.name(a), p.name(b)});
  return {{"elements", p.names()}, {"hasse_edges", std::move(edges)}};
}

inline std::string poset_to_text(const Poset& p) {
  std::string out = "elements:";
  for (const auto& n : p.names()) out += " " + n;
  out += "\nleq:";
  for (auto [a, b] : p.hasse_edges()) out += " " + p.name(a) + "<" + p.name(b);
  return out + "\n";
}

}  // namespace ptop::order
