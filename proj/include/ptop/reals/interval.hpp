#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "ptop/error.hpp"
#include "ptop/reals/rat.hpp"

namespace ptop::reals {

/// Closed interval [lo, hi] with finite endpoints; lo == hi is a point box.
struct RatInterval {
  Rat lo;
  Rat hi;

  RatInterval() = default;
  RatInterval(Rat l, Rat h) : lo(std::move(l)), hi(std::move(h)) {
    if (hi < lo) throw InvalidInput("interval [" + reals::to_string(lo) + "," + reals::to_string(hi) + "] is empty");
  }
  static RatInterval point(const Rat& x) { return {x, x}; }

  bool is_point() const { return lo == hi; }
  Rat width() const { return hi - lo; }
  Rat mid() const { return midpoint(lo, hi); }
  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  bool contains(const RatInterval& o) const { return lo <= o.lo && o.hi <= hi; }
  std::string to_string() const { return "[" + reals::to_string(lo) + "," + reals::to_string(hi) + "]"; }
  bool operator==(const RatInterval&) const = default;
};

/// Open interval ⦅lo, hi⦆; a missing endpoint is infinite.
struct OpenInterval {
  std::optional<Rat> lo;  // nullopt = -inf
  std::optional<Rat> hi;  // nullopt = +inf

  static OpenInterval whole() { return {}; }
  static OpenInterval below(const Rat& q) { return {std::nullopt, q}; }
  static OpenInterval above(const Rat& p) { return {p, std::nullopt}; }

  bool empty() const { return lo && hi && !(*lo < *hi); }
  bool contains(const Rat& x) const { return (!lo || *lo < x) && (!hi || x < *hi); }
  std::string to_string() const {
    return "(" + (lo ? reals::to_string(*lo) : std::string("-inf")) + "," +
           (hi ? reals::to_string(*hi) : std::string("+inf")) + ")";
  }
  bool operator==(const OpenInterval&) const = default;
};

namespace detail {

// Endpoint comparisons with -inf/+inf encoded by nullopt.
inline bool lo_less(const std::optional<Rat>& a, const std::optional<Rat>& b) {
  if (!a) return static_cast<bool>(b);
  return b && *a < *b;
}
inline bool hi_less(const std::optional<Rat>& a, const std::optional<Rat>& b) {
  if (!b) return static_cast<bool>(a);
  return a && *a < *b;
}
// Does an interval ending at `hi` overlap one starting at `lo`?
inline bool overlaps(const std::optional<Rat>& hi, const std::optional<Rat>& lo) {
  return !hi || !lo || *lo < *hi;
}

}  // namespace detail

/// Open subset of the reals: finite union of open intervals, kept sorted,
/// pairwise disjoint and merged wherever two components overlap. Touching
/// components ⦅a,b⦆, ⦅b,c⦆ stay apart since b is in neither.
class ROpen {
 public:
  ROpen() = default;
  explicit ROpen(std::vector<OpenInterval> parts) : parts_(std::move(parts)) { canonicalize(); }
  static ROpen of(OpenInterval i) { return ROpen({std::move(i)}); }
  static ROpen whole() { return of(OpenInterval::whole()); }

  const std::vector<OpenInterval>& components() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool is_whole() const { return parts_.size() == 1 && !parts_[0].lo && !parts_[0].hi; }
  bool contains(const Rat& x) const {
    return std::any_of(parts_.begin(), parts_.end(), [&](const auto& i) { return i.contains(x); });
  }
  std::string to_string() const {
    if (parts_.empty()) return "empty";
    std::string out;
    for (std::size_t i = 0; i < parts_.size(); ++i) out += (i ? " u " : "") + parts_[i].to_string();
    return out;
  }
  bool operator==(const ROpen&) const = default;

 private:
  void canonicalize() {
    std::erase_if(parts_, [](const OpenInterval& i) { return i.empty(); });
    std::sort(parts_.begin(), parts_.end(), [](const auto& a, const auto& b) {
      if (detail::lo_less(a.lo, b.lo)) return true;
      if (detail::lo_less(b.lo, a.lo)) return false;
      return detail::hi_less(a.hi, b.hi);
    });
    std::vector<OpenInterval> out;
    for (auto& i : parts_) {
      if (!out.empty() && detail::overlaps(out.back().hi, i.lo)) {
        if (detail::hi_less(out.back().hi, i.hi)) out.back().hi = i.hi;
      } else {
        out.push_back(std::move(i));
      }
    }
    parts_ = std::move(out);
  }

  std::vector<OpenInterval> parts_;
};

inline ROpen ropen_join(const ROpen& a, const ROpen& b) {
  auto parts = a.components();
  parts.insert(parts.end(), b.components().begin(), b.components().end());
  return ROpen(std::move(parts));
}

inline ROpen ropen_meet(const ROpen& a, const ROpen& b) {
  std::vector<OpenInterval> parts;
  for (const auto& x : a.components())
    for (const auto& y : b.components()) {
      OpenInterval i{detail::lo_less(x.lo, y.lo) ? y.lo : x.lo, detail::hi_less(x.hi, y.hi) ? x.hi : y.hi};
      if (!i.empty()) parts.push_back(std::move(i));
    }
  return ROpen(std::move(parts));
}

}  // namespace ptop::reals
