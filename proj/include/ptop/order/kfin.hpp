#pragma once

#include <algorithm>
#include <functional>
#include <initializer_list>
#include <vector>

namespace ptop::order {

/// A Kuratowski-finite subset: a finite listing that may contain repeats.
///
/// The raw listing is kept as given; equality, iteration and size all use the
/// canonical form (sorted under `Compare`, duplicates removed), so two
/// listings of the same subset compare equal.
template <typename T, typename Compare = std::less<T>>
class KFinSet {
 public:
  KFinSet() = default;
  explicit KFinSet(std::vector<T> items) : items_(std::move(items)) {
    canonicalize();
  }
  KFinSet(std::initializer_list<T> items) : items_(items) { canonicalize(); }

  const std::vector<T>& items() const noexcept { return items_; }
  const std::vector<T>& canonical() const noexcept { return canonical_; }

  std::size_t size() const noexcept { return canonical_.size(); }
  bool empty() const noexcept { return canonical_.empty(); }
  auto begin() const noexcept { return canonical_.begin(); }
  auto end() const noexcept { return canonical_.end(); }

  bool contains(const T& x) const {
    return std::binary_search(canonical_.begin(), canonical_.end(), x,
                              Compare{});
  }

  /// Union; the listing is the concatenation of both listings.
  KFinSet unite(const KFinSet& other) const {
    std::vector<T> all = items_;
    all.insert(all.end(), other.items_.begin(), other.items_.end());
    return KFinSet(std::move(all));
  }

  friend bool operator==(const KFinSet& a, const KFinSet& b) {
    return a.canonical_ == b.canonical_;
  }

 private:
  void canonicalize() {
    canonical_ = items_;
    Compare cmp;
    std::sort(canonical_.begin(), canonical_.end(), cmp);
    canonical_.erase(
        std::unique(canonical_.begin(), canonical_.end(),
                    [&](const T& a, const T& b) { return !cmp(a, b) && !cmp(b, a); }),
        canonical_.end());
  }

  std::vector<T> items_;
  std::vector<T> canonical_;
};

}  // namespace ptop::order
