#pragma once

#include <algorithm>
#include <cctype>
#include <string>
#include <vector>

#include "ptop/error.hpp"
#include "ptop/reals/interval.hpp"

namespace ptop::reals {

/// Nonempty finite union of disjoint closed rational intervals, sorted.
class Domain {
 public:
  explicit Domain(std::vector<RatInterval> parts) : parts_(std::move(parts)) {
    if (parts_.empty()) throw InvalidInput("domain is empty");
    std::sort(parts_.begin(), parts_.end(), [](const auto& a, const auto& b) { return a.lo < b.lo; });
    for (std::size_t i = 1; i < parts_.size(); ++i)
      if (!(parts_[i - 1].hi < parts_[i].lo))
        throw InvalidInput("domain intervals " + parts_[i - 1].to_string() + " and " + parts_[i].to_string() +
                           " are not disjoint");
  }

  const std::vector<RatInterval>& parts() const { return parts_; }
  bool contains(const Rat& x) const {
    return std::any_of(parts_.begin(), parts_.end(), [&](const auto& i) { return i.contains(x); });
  }
  bool contains(const RatInterval& b) const {
    return std::any_of(parts_.begin(), parts_.end(), [&](const auto& i) { return i.contains(b); });
  }
  std::string to_string() const {
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? " u " : "") + parts_[i].to_string();
    return out;
  }
  bool operator==(const Domain&) const = default;

 private:
  std::vector<RatInterval> parts_;
};

/// "[0,1] u [2,3]". Endpoints are rational literals, optionally signed.
inline Domain parse_domain(const std::string& text) {
  std::vector<RatInterval> parts;
  std::size_t i = 0;
  auto skip = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  auto fail = [&](const std::string& msg) -> void { throw ParseError(msg, 1, i + 1); };
  auto number = [&](char stop) {
    skip();
    std::size_t j = i;
    while (j < text.size() && text[j] != stop && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
    std::size_t start = i;
    try {
      Rat r = parse_rat(text.substr(start, j - start));
      i = j;
      return r;
    } catch (const ParseError& e) {
      throw ParseError("bad interval endpoint", 1, start + e.column());
    }
  };
  while (true) {
    skip();
    if (i >= text.size() || text[i] != '[') fail("expected '['");
    ++i;
    Rat lo = number(',');
    skip();
    if (i >= text.size() || text[i] != ',') fail("expected ','");
    ++i;
    Rat hi = number(']');
    skip();
    if (i >= text.size() || text[i] != ']') fail("expected ']'");
    ++i;
    if (hi < lo) fail("interval endpoints out of order");
    parts.emplace_back(lo, hi);
    skip();
    if (i == text.size()) break;
    if (text[i] != 'u' && text[i] != 'U') fail("expected 'u' between intervals");
    ++i;
  }
  return Domain(std::move(parts));
}

}  // namespace ptop::reals
