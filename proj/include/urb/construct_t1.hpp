#pragma once

// Inductive construction of a unique representation basis A with
// A(-x, x) >= x^(1/3) / 8: alternate a repair step (make the least
// unrepresented integer representable) with greedy densification against the
// forbidden set W = {d1 + d2 - d3, (d4 + d5)/2}.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <type_traits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "urb/detail/kernels.hpp"
#include "urb/error.hpp"
#include "urb/int_set.hpp"
#include "urb/repair.hpp"

namespace urb::t1 {

struct StageAudit {
  Integer m;
  Integer b;
  std::optional<Integer> b_tilde;
  /// Greedy additions n_1, ..., n_g in the order chosen.
  std::vector<Integer> greedy;
};

struct Stage {
  int h = 1;
  IntSet set;
  Integer a_star;
  /// Absent for the seed stage A_1.
  std::optional<StageAudit> audit;
};

/// |D| >= |d*|^(1/3) / 2, evaluated exactly as 8|D|^3 >= |d*|.
inline bool meets_density_threshold(std::size_t cardinality, const Integer& d_star) {
  const Integer c(cardinality);
  return 8 * c * c * c >= abs_value(d_star);
}

/// W = {d1 + d2 - d3} ∪ {(d4 + d5)/2 : d4 + d5 even}, by full enumeration.
inline IntSet forbidden_set(const IntSet& d) {
  std::vector<Integer> sums;
  for (std::size_t i = 0; i < d.size(); ++i) {
    for (std::size_t j = i; j < d.size(); ++j) sums.push_back(d[i] + d[j]);
  }
  std::sort(sums.begin(), sums.end());
  sums.erase(std::unique(sums.begin(), sums.end()), sums.end());
  std::vector<Integer> w;
  w.reserve(sums.size() * d.size() + sums.size());
  for (const Integer& s : sums) {
    for (const Integer& x : d) w.push_back(s - x);
    if (boost::multiprecision::bit_test(s, 0) == false) w.push_back(s / 2);
  }
  IntSet out(std::move(w));
  const Integer n(d.size());
  if (Integer(out.size()) > n * n * n + n * n) {
    throw InvariantViolation("forbidden_set: |W| exceeds |D|^3 + |D|^2", std::to_string(out.size()));
  }
  return out;
}

struct DensifyResult {
  IntSet set;
  std::vector<Integer> additions;
};

namespace detail {

/// Bitset over the low bits of stored sums; a clear bit proves absence.
template <class T>
class SumFilter {
 public:
  explicit SumFilter(std::size_t expected) {
    std::size_t bits = 1 << 16;
    while (bits < 16 * expected && bits < (std::size_t{1} << 31)) bits <<= 1;
    mask_ = bits - 1;
    words_.assign(bits / 64, 0);
  }
  void add(const T& v) {
    const std::size_t k = slot(v);
    words_[k >> 6] |= std::uint64_t{1} << (k & 63);
  }
  bool maybe(const T& v) const {
    const std::size_t k = slot(v);
    return (words_[k >> 6] >> (k & 63)) & 1;
  }

 private:
  std::size_t slot(const T& v) const {
    if constexpr (std::is_same_v<T, Integer>) {
      const Integer m(mask_ + 1);
      return static_cast<std::size_t>(Integer((v % m + m) % m).template convert_to<std::uint64_t>());
    } else {
      return static_cast<std::size_t>(static_cast<std::uint64_t>(v)) & mask_;
    }
  }
  std::size_t mask_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Greedy densification over element type T. `d` must be sorted with r <= 1.
///
/// Candidates are scanned by increasing |n| in segments [L, L + len) and
/// (-L - len, -L]; each segment holds a bitmap of W restricted to it, built
/// from the sorted pair sums and updated incrementally after every addition.
template <class T>
std::vector<T> greedy_fill(std::vector<T> d, const Integer& d_star_abs) {
  using urb::detail::SortedRuns;
  using urb::detail::to_index;

  const T cap = static_cast<T>(Integer(d_star_abs / 2));
  SortedRuns<T> sums;
  {
    std::vector<T> all;
    all.reserve(d.size() * (d.size() + 1) / 2);
    for (std::size_t i = 0; i < d.size(); ++i) {
      for (std::size_t j = i; j < d.size(); ++j) all.push_back(d[i] + d[j]);
    }
    sums.insert_batch(std::move(all));
  }

  // Least cardinality c with 8c^3 >= |d*|.
  std::size_t needed = static_cast<std::size_t>(std::cbrt(to_double(d_star_abs) / 8.0));
  while (needed > 0 && meets_density_threshold(needed - 1, d_star_abs)) --needed;
  while (!meets_density_threshold(needed, d_star_abs)) ++needed;
  const auto done = [&] { return d.size() >= needed; };

  SumFilter<T> filter(needed * (needed + 1) / 2);
  sums.for_each([&](const T& v) { filter.add(v); });

  std::vector<T> additions;
  constexpr std::size_t kMaxSegment = std::size_t{1} << 24;
  std::size_t seg = 4096;
  T lo = 1;
  std::vector<std::uint64_t> pos;
  std::vector<std::uint64_t> neg;

  while (!done()) {
    if (lo > cap) {
      throw InvariantViolation("densify: no admissible candidate with |n| <= |d*|/2",
                               "|D|=" + std::to_string(d.size()) + " |d*|=" + to_decimal(d_star_abs));
    }
    const T remaining = cap - lo + 1;
    const std::size_t len = remaining < static_cast<T>(seg) ? to_index(remaining) : seg;
    const T tlen = static_cast<T>(len);
    pos.assign((len + 63) / 64, 0);
    neg.assign((len + 63) / 64, 0);

    // Positive candidates occupy [lo, hi_pos); negative ones [lo_neg, -lo].
    const T hi_pos = lo + tlen;
    const T lo_neg = -lo - tlen + 1;
    const auto mark = [&](const T& v) {
      if (v >= lo && v < hi_pos) {
        const std::size_t k = to_index(T(v - lo));
        pos[k >> 6] |= std::uint64_t{1} << (k & 63);
      } else if (v >= lo_neg && v <= -lo) {
        const std::size_t k = to_index(T(-v - lo));
        neg[k >> 6] |= std::uint64_t{1} << (k & 63);
      }
    };
    const auto mark_translates = [&](const T& shift) {
      // every sum s with s - shift inside the segment
      sums.for_each_in(T(lo + shift), T(hi_pos + shift), [&](const T& s) { mark(T(s - shift)); });
      sums.for_each_in(T(lo_neg + shift), T(-lo + 1 + shift), [&](const T& s) { mark(T(s - shift)); });
    };
    const auto mark_halves = [&] {
      const auto half = [&](const T& s) {
        if (s % 2 == 0) mark(T(s / 2));
      };
      sums.for_each_in(T(2 * lo), T(2 * hi_pos), half);
      sums.for_each_in(T(2 * lo_neg), T(-2 * lo + 1), half);
    };

    for (const T& x : d) mark_translates(x);
    mark_halves();

    std::size_t i = 0;
    while (i < len && !done()) {
      if ((i & 63) == 0 && (pos[i >> 6] & neg[i >> 6]) == ~std::uint64_t{0}) {
        i += 64;
        continue;
      }
      const bool pos_free = !((pos[i >> 6] >> (i & 63)) & 1);
      const bool neg_free = !((neg[i >> 6] >> (i & 63)) & 1);
      if (!pos_free && !neg_free) {
        ++i;
        continue;
      }
      const T e = pos_free ? T(lo + static_cast<T>(i)) : T(-(lo + static_cast<T>(i)));

      // Direct re-check that adjoining e keeps r <= 1: no new sum e + x or 2e
      // may coincide with an existing sum.
      if (sums.contains(T(2 * e))) {
        throw InvariantViolation("densify: 2n collides with an existing sum", to_decimal(urb::detail::widen(e)));
      }
      for (const T& x : d) {
        if (filter.maybe(T(e + x)) && sums.contains(T(e + x))) {
          throw InvariantViolation("densify: n + d collides with an existing sum",
                                   "n=" + to_decimal(urb::detail::widen(e)) + " d=" + to_decimal(urb::detail::widen(x)));
        }
      }

      std::vector<T> fresh;
      fresh.reserve(d.size() + 1);
      for (const T& x : d) fresh.push_back(e + x);
      fresh.push_back(2 * e);
      for (const T& v : fresh) filter.add(v);
      d.insert(std::lower_bound(d.begin(), d.end(), e), e);
      sums.insert_batch(std::move(fresh));
      additions.push_back(e);

      // New forbidden values involving e.
      for (const T& x : d) {
        // e + x - y inside the segment.
        const T base = e + x;
        auto first = std::lower_bound(d.begin(), d.end(), T(base - hi_pos + 1));
        for (auto it = first; it != d.end() && *it <= base - lo; ++it) mark(T(base - *it));
        first = std::lower_bound(d.begin(), d.end(), T(base + lo));
        for (auto it = first; it != d.end() && *it <= base - lo_neg; ++it) mark(T(base - *it));
        const T s = e + x;
        if (s % 2 == 0) mark(T(s / 2));
      }
      mark_translates(e);
    }
    lo += tlen;
    seg = std::min(seg * 2, kMaxSegment);
  }
  return additions;
}

inline std::vector<Integer> greedy_additions(const IntSet& d) {
  const Integer d_star_abs = abs_value(max_abs(d));
  return urb::detail::with_elements(d.elements(), [&](auto elems) -> std::vector<Integer> {
    using T = typename decltype(elems)::value_type;
    const std::vector<T> added = greedy_fill<T>(std::vector<T>(elems.begin(), elems.end()), d_star_abs);
    std::vector<Integer> out;
    out.reserve(added.size());
    for (const T& v : added) out.push_back(urb::detail::widen(v));
    return out;
  });
}

}  // namespace detail

/// Greedily adjoins the nonzero n of least |n| (positive first), |n| <= |d*|/2,
/// outside the current forbidden set, until 8|D|^3 >= |d*|.
inline DensifyResult densify(const IntSet& d) {
  if (d.empty()) throw InvalidArgument("densify: empty set");
  if (d.contains(0)) throw InvalidArgument("densify: 0 belongs to D");
  if (!is_sidon(d).sidon) throw InvalidArgument("densify: D has a repeated pair sum");
  DensifyResult out;
  out.additions = detail::greedy_additions(d);
  out.set = d.united(IntSet(out.additions));
  return out;
}

/// The repair step applied to a stage, with the bound h <= |m| <= 2|a*| + 1.
inline RepairResult repair_step(const Stage& stage) {
  RepairResult r = repair(stage.set);
  const Integer abs_m = abs_value(r.m);
  if (abs_m < stage.h) {
    throw InvariantViolation("repair_step: |m| < h", "h=" + std::to_string(stage.h) + " m=" + to_decimal(r.m));
  }
  return r;
}

/// Conditions I, II, IV, V on one stage, and III plus nesting against the
/// previous stage when given. Returns a description of the first failure.
inline std::optional<std::string> check_stage(const Stage& s, const Stage* prev = nullptr) {
  if (s.set.empty()) return "empty stage";
  if (abs_value(max_abs(s.set)) != abs_value(s.a_star)) return "a_star is not the max-|.| element";
  const BasisReport basis = is_unique_basis_prefix(s.set, Integer(s.h - 1));
  if (!basis.pass) {
    const std::string n = to_decimal(basis.counterexample->n);
    return basis.failure == BasisReport::Failure::repeated_sum ? "condition I fails at n=" + n
                                                                 : "condition II fails at n=" + n;
  }
  const Integer a = abs_value(s.a_star);
  if (!meets_density_threshold(counting(s.set, -a, a), a)) return "condition IV fails";
  if (s.set.contains(0)) return "condition V fails: 0 in A_h";
  if (prev != nullptr) {
    const Integer pa = abs_value(prev->a_star);
    if (!(pa < a && a <= 64 * pa)) return "condition III fails";
    if (!prev->set.is_subset_of(s.set)) return "A_h is not contained in A_{h+1}";
  }
  return std::nullopt;
}

/// Integer log-spaced grid from lo to hi inclusive (deduplicated).
inline std::vector<Integer> log_grid(const Integer& lo, const Integer& hi, std::size_t points) {
  if (lo < 1 || hi < lo) throw InvalidArgument("log_grid: need 1 <= lo <= hi");
  std::vector<Integer> grid;
  if (points < 2 || lo == hi) return {lo};
  const double llo = std::log(to_double(lo));
  const double lhi = std::log(to_double(hi));
  for (std::size_t i = 0; i < points; ++i) {
    const double t = static_cast<double>(i) / static_cast<double>(points - 1);
    Integer x(std::round(std::exp(llo + t * (lhi - llo))));
    if (i == 0) x = lo;
    if (i + 1 == points) x = hi;
    x = std::clamp(x, lo, hi);
    if (grid.empty() || grid.back() < x) grid.push_back(x);
  }
  return grid;
}

/// 512 A(-x, x)^3 >= x, i.e. A(-x, x) >= x^(1/3) / 8, exactly.
inline bool meets_cube_root_bound(const IntSet& a, const Integer& x) {
  const Integer c(counting(a, -x, x));
  return 512 * c * c * c >= x;
}

/// Least grid point from which every later grid point satisfies the
/// x^(1/3)/8 bound; nullopt when the last grid point fails.
inline std::optional<Integer> density_onset(const IntSet& a, std::span<const Integer> grid) {
  std::optional<Integer> x0;
  for (std::size_t i = grid.size(); i-- > 0;) {
    if (!meets_cube_root_bound(a, grid[i])) break;
    x0 = grid[i];
  }
  return x0;
}

struct BuildOptions {
  /// Points of the log grid on [|a*_1|, |a*_H|] used to locate x0.
  std::size_t grid_points = 200;
  std::function<void(const Stage&)> on_stage;
};

struct BuildResult {
  std::vector<Stage> history;
  std::vector<Integer> grid;
  std::optional<Integer> x0;

  const Stage& final_stage() const { return history.back(); }
};

/// A_1 = {-1, 1}, then H - 1 rounds of repair + densify; every stage is
/// checked against conditions I-V and an InvariantViolation is thrown on failure.
inline BuildResult build(int stages, const BuildOptions& options = {}) {
  if (stages < 1) throw InvalidArgument("build: need at least one stage");
  BuildResult out;
  Stage first{1, IntSet{-1, 1}, Integer(1), std::nullopt};
  if (auto err = check_stage(first)) throw InvariantViolation("stage 1", *err);
  out.history.push_back(first);
  if (options.on_stage) options.on_stage(out.history.back());

  for (int h = 1; h < stages; ++h) {
    const Stage& cur = out.history.back();
    RepairResult rep = repair_step(cur);
    const Integer d_star = abs_value(max_abs(rep.d));
    std::vector<Integer> added;
    if (!meets_density_threshold(rep.d.size(), d_star)) added = detail::greedy_additions(rep.d);
    Stage next;
    next.h = h + 1;
    next.set = rep.d.united(IntSet(added));
    next.a_star = max_abs(next.set);
    next.audit = StageAudit{rep.m, rep.b, rep.b_tilde, std::move(added)};
    if (auto err = check_stage(next, &cur)) throw InvariantViolation("stage " + std::to_string(next.h), *err);
    out.history.push_back(std::move(next));
    if (options.on_stage) options.on_stage(out.history.back());
  }

  const Stage& last = out.history.back();
  out.grid = log_grid(abs_value(out.history.front().a_star), abs_value(last.a_star), options.grid_points);
  out.x0 = density_onset(last.set, out.grid);
  return out;
}

}  // namespace urb::t1
