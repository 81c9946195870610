#pragma once

// Element-type-generic kernels shared by the set algebra and the constructions.
// Every kernel is written once over T and instantiated for std::int64_t (fast
// path) and urb::Integer (exact fallback for large magnitudes).

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "urb/integer.hpp"

namespace urb::detail {

/// Magnitudes below this bound admit d1 + d2 - d3 and 2x without int64 overflow.
inline constexpr std::int64_t kNarrowLimit = std::int64_t{1} << 60;

inline std::optional<std::vector<std::int64_t>> try_narrow(std::span<const Integer> values) {
  std::vector<std::int64_t> out;
  out.reserve(values.size());
  for (const Integer& v : values) {
    if (v >= kNarrowLimit || v <= -kNarrowLimit) return std::nullopt;
    out.push_back(v.convert_to<std::int64_t>());
  }
  return out;
}

template <class T>
Integer widen(const T& v) {
  return Integer(v);
}

/// Runs `f` on a std::span<const T> of the elements, with T = int64_t when
/// every element is narrow and T = Integer otherwise.
template <class F>
decltype(auto) with_elements(std::span<const Integer> values, F&& f) {
  if (auto narrow = try_narrow(values)) {
    return f(std::span<const std::int64_t>(*narrow));
  }
  return f(values);
}

template <class T>
std::size_t to_index(const T& v) {
  if constexpr (std::is_same_v<T, std::int64_t>) {
    return static_cast<std::size_t>(v);
  } else {
    return v.template convert_to<std::size_t>();
  }
}

/// All sums a_i + a_j with i <= j, sorted ascending (duplicates kept).
template <class T>
std::vector<T> sorted_pair_sums(std::span<const T> a) {
  std::vector<T> sums;
  sums.reserve(a.size() * (a.size() + 1) / 2);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i; j < a.size(); ++j) sums.push_back(a[i] + a[j]);
  }
  std::sort(sums.begin(), sums.end());
  return sums;
}

/// Smallest value occurring at least twice in a sorted sequence.
template <class T>
std::optional<T> smallest_repeat(const std::vector<T>& sorted) {
  const auto it = std::adjacent_find(sorted.begin(), sorted.end());
  if (it == sorted.end()) return std::nullopt;
  return *it;
}

/// Number of unordered representations n = a + a' (a <= a') in a sorted set.
template <class T>
std::size_t rep_count_sorted(std::span<const T> a, const T& n) {
  if (a.empty()) return 0;
  std::size_t count = 0;
  std::size_t i = 0;
  std::size_t j = a.size() - 1;
  while (i <= j) {
    const T s = a[i] + a[j];
    if (s == n) {
      ++count;
      ++i;
      if (j == 0) break;
      --j;
    } else if (s < n) {
      ++i;
    } else {
      if (j == 0) break;
      --j;
    }
  }
  return count;
}

/// A multiset of values kept as a few sorted runs whose sizes at least double
/// from newest to oldest, so batched insertion is amortised O(log N) per value
/// and range scans touch O(log N) runs.
template <class T>
class SortedRuns {
 public:
  void insert_batch(std::vector<T> batch) {
    if (batch.empty()) return;
    std::sort(batch.begin(), batch.end());
    runs_.push_back(std::move(batch));
    while (runs_.size() >= 2 && runs_[runs_.size() - 2].size() <= 2 * runs_.back().size()) {
      std::vector<T> merged;
      auto& older = runs_[runs_.size() - 2];
      auto& newer = runs_.back();
      merged.reserve(older.size() + newer.size());
      std::merge(older.begin(), older.end(), newer.begin(), newer.end(), std::back_inserter(merged));
      runs_.pop_back();
      runs_.back() = std::move(merged);
    }
  }

  bool contains(const T& v) const {
    for (const auto& run : runs_) {
      if (std::binary_search(run.begin(), run.end(), v)) return true;
    }
    return false;
  }

  /// Calls f(v) for every stored v with lo <= v < hi.
  template <class F>
  void for_each_in(const T& lo, const T& hi, F&& f) const {
    for (const auto& run : runs_) {
      for (auto it = std::lower_bound(run.begin(), run.end(), lo); it != run.end() && *it < hi; ++it) f(*it);
    }
  }

  template <class F>
  void for_each(F&& f) const {
    for (const auto& run : runs_) {
      for (const T& v : run) f(v);
    }
  }

  std::size_t size() const {
    std::size_t n = 0;
    for (const auto& run : runs_) n += run.size();
    return n;
  }

 private:
  std::vector<std::vector<T>> runs_;
};

}  // namespace urb::detail
