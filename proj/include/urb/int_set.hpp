#pragma once

#include <algorithm>
#include <array>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "urb/detail/kernels.hpp"
#include "urb/error.hpp"
#include "urb/integer.hpp"

namespace urb {

/// Finite set of integers stored as a strictly increasing sequence.
class IntSet {
 public:
  using value_type = Integer;
  using const_iterator = std::vector<Integer>::const_iterator;

  IntSet() = default;
  IntSet(std::initializer_list<Integer> values) : IntSet(std::vector<Integer>(values)) {}

  /// Sorts and removes duplicates.
  explicit IntSet(std::vector<Integer> values) : elements_(std::move(values)) {
    std::sort(elements_.begin(), elements_.end());
    elements_.erase(std::unique(elements_.begin(), elements_.end()), elements_.end());
  }

  /// Adopts an already strictly increasing sequence; throws otherwise.
  static IntSet from_sorted(std::vector<Integer> values) {
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (!(values[i - 1] < values[i])) {
        throw InvalidArgument("sequence is not strictly increasing at position " + std::to_string(i));
      }
    }
    IntSet s;
    s.elements_ = std::move(values);
    return s;
  }

  std::size_t size() const noexcept { return elements_.size(); }
  bool empty() const noexcept { return elements_.empty(); }
  const_iterator begin() const noexcept { return elements_.begin(); }
  const_iterator end() const noexcept { return elements_.end(); }
  const Integer& operator[](std::size_t i) const { return elements_[i]; }
  const Integer& front() const { return elements_.front(); }
  const Integer& back() const { return elements_.back(); }
  std::span<const Integer> elements() const noexcept { return elements_; }

  bool contains(const Integer& x) const { return std::binary_search(elements_.begin(), elements_.end(), x); }

  void insert(const Integer& x) {
    const auto it = std::lower_bound(elements_.begin(), elements_.end(), x);
    if (it == elements_.end() || *it != x) elements_.insert(it, x);
  }

  IntSet united(const IntSet& other) const {
    std::vector<Integer> out;
    out.reserve(size() + other.size());
    std::set_union(begin(), end(), other.begin(), other.end(), std::back_inserter(out));
    return from_sorted(std::move(out));
  }

  bool is_subset_of(const IntSet& other) const {
    return std::includes(other.begin(), other.end(), begin(), end());
  }

  IntSet translated(const Integer& shift) const {
    std::vector<Integer> out;
    out.reserve(size());
    for (const Integer& x : elements_) out.push_back(x + shift);
    return from_sorted(std::move(out));
  }

  friend bool operator==(const IntSet&, const IntSet&) = default;

 private:
  std::vector<Integer> elements_;
};

/// r_A(n) together with every witness pair, ascending in the smaller summand.
struct RepRecord {
  Integer n;
  std::size_t count = 0;
  std::vector<std::pair<Integer, Integer>> witnesses;
};

inline RepRecord rep_count(const IntSet& a, const Integer& n) {
  RepRecord rec{n, 0, {}};
  if (a.empty()) return rec;
  std::size_t i = 0;
  std::size_t j = a.size() - 1;
  while (i <= j) {
    const Integer s = a[i] + a[j];
    if (s == n) {
      rec.witnesses.emplace_back(a[i], a[j]);
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
  rec.count = rec.witnesses.size();
  return rec;
}

/// r_A(n) without witnesses.
inline std::size_t rep_value(const IntSet& a, const Integer& n) {
  return detail::rep_count_sorted<Integer>(a.elements(), n);
}

/// |A ∩ [y, x]|.
inline std::size_t counting(const IntSet& a, const Integer& y, const Integer& x) {
  if (y > x) throw InvalidArgument("counting: empty interval, y > x");
  const auto lo = std::lower_bound(a.begin(), a.end(), y);
  const auto hi = std::upper_bound(lo, a.end(), x);
  return static_cast<std::size_t>(hi - lo);
}

/// The element of largest absolute value; +k beats -k.
inline Integer max_abs(const IntSet& a) {
  if (a.empty()) throw InvalidArgument("max_abs of the empty set");
  const Integer& lo = a.front();
  const Integer& hi = a.back();
  return (-lo > hi) ? lo : hi;
}

/// Integer of least |m| with r_A(m) = 0; +k beats -k.
inline Integer min_unrepresented(const IntSet& a) {
  if (a.empty()) throw InvalidArgument("min_unrepresented of the empty set");
  // At most |A|(|A|+1)/2 sums exist, so some |m| <= |A|(|A|+1)/4 + 1 is free;
  // the construction bound 2|a*| + 1 also holds.
  const Integer pigeonhole = Integer(a.size()) * (a.size() + 1) / 4 + 1;
  const Integer structural = 2 * abs_value(max_abs(a)) + 1;
  const Integer bound = std::min(pigeonhole, structural);
  return detail::with_elements(a.elements(), [&](auto elems) -> Integer {
    using T = typename decltype(elems)::value_type;
    const T limit = static_cast<T>(bound);
    for (T k = 0; k <= limit; ++k) {
      if (detail::rep_count_sorted<T>(elems, k) == 0) return detail::widen(k);
      if (k != 0 && detail::rep_count_sorted<T>(elems, T(-k)) == 0) return detail::widen(T(-k));
    }
    throw InvariantViolation("min_unrepresented: scan exceeded its bound", to_decimal(bound));
  });
}

/// {a + b : a in A, b in B}.
inline IntSet sumset(const IntSet& a, const IntSet& b) {
  std::vector<Integer> out;
  out.reserve(a.size() * b.size());
  for (const Integer& x : a) {
    for (const Integer& y : b) out.push_back(x + y);
  }
  return IntSet(std::move(out));
}

/// {a - a' : a, a' in A}.
inline IntSet diffset(const IntSet& a) {
  std::vector<Integer> out;
  out.reserve(a.size() * a.size());
  for (const Integer& x : a) {
    for (const Integer& y : a) out.push_back(x - y);
  }
  return IntSet(std::move(out));
}

struct SidonCheck {
  bool sidon = true;
  /// a + b = c + d with a <= b, c <= d, (a, b) != (c, d); smallest offending sum.
  std::optional<std::array<Integer, 4>> violation;
};

/// All pair sums s_i + s_j (i <= j) distinct; equivalently r_S(n) <= 1 for all n.
inline SidonCheck is_sidon(const IntSet& s) {
  const std::optional<Integer> repeated = detail::with_elements(s.elements(), [](auto elems) -> std::optional<Integer> {
    using T = typename decltype(elems)::value_type;
    const auto sums = detail::sorted_pair_sums<T>(elems);
    if (auto r = detail::smallest_repeat(sums)) return detail::widen(*r);
    return std::nullopt;
  });
  if (!repeated) return {};
  const RepRecord rec = rep_count(s, *repeated);
  return {false, std::array<Integer, 4>{rec.witnesses[0].first, rec.witnesses[0].second,
                                        rec.witnesses[1].first, rec.witnesses[1].second}};
}

/// Outcome of checking that A is a prefix of a unique representation basis.
struct BasisReport {
  enum class Failure { none, repeated_sum, missing_sum };
  bool pass = true;
  Failure failure = Failure::none;
  std::optional<RepRecord> counterexample;
};

/// (a) r_A(n) <= 1 for every n, then (b) r_A(n) = 1 for |n| <= H.
/// The first counterexample is the smallest repeated sum for (a), and the
/// missing n of least |n| (positive first) for (b).
inline BasisReport is_unique_basis_prefix(const IntSet& a, const Integer& h_bound) {
  if (h_bound < 0) throw InvalidArgument("is_unique_basis_prefix: H must be nonnegative");
  struct Scan {
    std::optional<Integer> repeated;
    std::optional<Integer> missing;
  };
  const Scan scan = detail::with_elements(a.elements(), [&](auto elems) -> Scan {
    using T = typename decltype(elems)::value_type;
    const auto sums = detail::sorted_pair_sums<T>(elems);
    Scan out;
    if (auto r = detail::smallest_repeat(sums)) {
      out.repeated = detail::widen(*r);
      return out;
    }
    // Sums are distinct here, so a gap appears within |sums|/2 + 1 steps.
    const Integer cap = std::min(h_bound, Integer(sums.size() / 2 + 1));
    const auto has = [&](const Integer& v) {
      if constexpr (std::is_same_v<T, Integer>) {
        return std::binary_search(sums.begin(), sums.end(), v);
      } else {
        if (v >= detail::kNarrowLimit * 2 || v <= -detail::kNarrowLimit * 2) return false;
        return std::binary_search(sums.begin(), sums.end(), v.convert_to<std::int64_t>());
      }
    };
    for (Integer k = 0; k <= cap; ++k) {
      if (!has(k)) {
        out.missing = k;
        break;
      }
      if (k != 0 && !has(-k)) {
        out.missing = Integer(-k);
        break;
      }
    }
    return out;
  });
  BasisReport report;
  if (scan.repeated) {
    report.pass = false;
    report.failure = BasisReport::Failure::repeated_sum;
    report.counterexample = rep_count(a, *scan.repeated);
  } else if (scan.missing) {
    report.pass = false;
    report.failure = BasisReport::Failure::missing_sum;
    report.counterexample = rep_count(a, *scan.missing);
  }
  return report;
}

/// Condition "r_A(n) <= 1 for every n" alone.
inline bool has_unique_sums(const IntSet& a) { return is_sidon(a).sidon; }

}  // namespace urb
