#pragma once

#include <cctype>
#include <cstddef>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "ptop/error.hpp"

namespace ptop::reals {

/// Arbitrary-precision rational, always in lowest terms with positive
/// denominator. Expression templates are off so that `auto` and std::min
/// see plain values.
using Rat = boost::multiprecision::number<boost::multiprecision::cpp_rational_backend,
                                          boost::multiprecision::et_off>;
using Int = boost::multiprecision::number<boost::multiprecision::cpp_int_backend<>,
                                          boost::multiprecision::et_off>;

/// "3", "-3/7", "0.25", "-1.5", "+2". Decimals are read exactly.
inline Rat parse_rat(const std::string& text) {
  auto fail = [&](std::size_t col) {
    throw ParseError("malformed rational '" + text + "'", 1, col + 1);
  };
  std::size_t i = 0;
  bool neg = false;
  if (i < text.size() && (text[i] == '-' || text[i] == '+')) neg = text[i++] == '-';
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    return j;
  };
  std::size_t j = digits(i);
  if (j == i) fail(i);
  Int num(text.substr(i, j - i));
  Int den = 1;
  if (j < text.size() && text[j] == '.') {
    std::size_t k = digits(j + 1);
    if (k == j + 1) fail(j + 1);
    for (std::size_t t = j + 1; t < k; ++t) {
      num = num * 10 + (text[t] - '0');
      den *= 10;
    }
    j = k;
  } else if (j < text.size() && text[j] == '/') {
    std::size_t k = digits(j + 1);
    if (k == j + 1) fail(j + 1);
    den = Int(text.substr(j + 1, k - j - 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'", 1, j + 2);
    j = k;
  }
  if (j != text.size()) fail(j);
  Rat r(num, den);
  return neg ? Rat(-r) : r;
}

/// "p/q", or "p" when the denominator is 1.
inline std::string to_string(const Rat& r) {
  auto n = boost::multiprecision::numerator(r);
  auto d = boost::multiprecision::denominator(r);
  return d == 1 ? n.str() : n.str() + "/" + d.str();
}

/// Rounded to k fractional digits, half away from zero. Lossy, for display.
inline std::string to_decimal(const Rat& r, unsigned k) {
  Int scale = 1;
  for (unsigned i = 0; i < k; ++i) scale *= 10;
  Int n = Int(boost::multiprecision::numerator(r)) * scale;
  Int d = boost::multiprecision::denominator(r);
  bool neg = n < 0;
  if (neg) n = -n;
  Int q = (2 * n + d) / (2 * d);
  std::string s = q.str();
  if (k > 0) {
    if (s.size() <= k) s.insert(0, k + 1 - s.size(), '0');
    s.insert(s.size() - k, ".");
  }
  return (neg && q != 0 ? "-" : "") + s;
}

inline Rat midpoint(const Rat& a, const Rat& b) { return (a + b) / 2; }

}  // namespace ptop::reals
