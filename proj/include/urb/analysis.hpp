#pragma once

// Block-count profiles and growth statistics of finite basis prefixes.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "urb/error.hpp"
#include "urb/int_set.hpp"

namespace urb::analysis {

/// N[l-1] = |A ∩ ((l-1)n, ln]| and M[l-1] = |A ∩ [-ln, (-l+1)n)| for 1 <= l <= n.
struct BlockProfile {
  std::uint64_t n = 0;
  std::vector<std::uint64_t> N;
  std::vector<std::uint64_t> M;
  /// 0 ∈ A (it belongs to no block).
  bool zero_present = false;
  /// max |a| < n^2, so the outer blocks may be undercounted.
  bool short_coverage = false;
};

inline BlockProfile block_counts(const IntSet& a, std::uint64_t n) {
  if (n < 1) throw InvalidArgument("block_counts: n must be at least 1");
  if (n > (std::uint64_t{1} << 24)) throw InvalidArgument("block_counts: n too large");
  BlockProfile p;
  p.n = n;
  p.N.assign(n, 0);
  p.M.assign(n, 0);
  p.zero_present = a.contains(0);
  const Integer nn(n);
  const Integer limit = nn * nn;
  p.short_coverage = a.empty() || abs_value(max_abs(a)) < limit;
  for (const Integer& x : a) {
    if (x > 0 && x <= limit) {
      // ((l-1)n, ln]  <=>  l = ceil(x / n)
      const Integer l = (x + nn - 1) / nn;
      ++p.N[l.convert_to<std::uint64_t>() - 1];
    } else if (x < 0 && x >= -limit) {
      // [-ln, (-l+1)n)  <=>  -x in ((l-1)n, ln]
      const Integer l = (-x + nn - 1) / nn;
      ++p.M[l.convert_to<std::uint64_t>() - 1];
    }
  }
  return p;
}

struct InequalityCheck {
  std::string name;
  Integer lhs;
  Integer rhs;
  bool pass = true;
};

struct InequalityReport {
  std::vector<InequalityCheck> checks;
  /// (sum (N+M)/sqrt(l))^2 <= (sum 1/l) * sum (N+M)^2 < (1 + ln n) * 14n, evaluated in doubles.
  double cs_lhs = 0.0;
  double cs_middle = 0.0;
  double cs_rhs = 0.0;
  bool cs_consistent = true;

  bool all_pass() const {
    return std::all_of(checks.begin(), checks.end(), [](const InequalityCheck& c) { return c.pass; });
  }
};

/// The five strict inequalities
///   sum C(N_l, 2) < n, sum N_l^2 < 5n, sum M_l^2 < 5n, max N_l M_l < 2n,
///   sum (N_l + M_l)^2 < 14n
/// exactly, plus the Cauchy-Schwarz chain as a numeric consistency check.
inline InequalityReport check_block_inequalities(const BlockProfile& p) {
  const Integer n(p.n);
  Integer binom = 0;
  Integer sq_n = 0;
  Integer sq_m = 0;
  Integer prod = 0;
  Integer sq_nm = 0;
  double weighted = 0.0;
  double harmonic = 0.0;
  for (std::size_t i = 0; i < p.N.size(); ++i) {
    const Integer x(p.N[i]);
    const Integer y(i < p.M.size() ? p.M[i] : 0);
    binom += x * (x - 1) / 2;
    sq_n += x * x;
    sq_m += y * y;
    prod = std::max(prod, Integer(x * y));
    sq_nm += (x + y) * (x + y);
    const double l = static_cast<double>(i + 1);
    weighted += to_double(x + y) / std::sqrt(l);
    harmonic += 1.0 / l;
  }
  InequalityReport r;
  const auto add = [&](std::string name, const Integer& lhs, const Integer& rhs) {
    r.checks.push_back({std::move(name), lhs, rhs, lhs < rhs});
  };
  add("sum_binom_N", binom, n);
  add("sum_N_sq", sq_n, 5 * n);
  add("sum_M_sq", sq_m, 5 * n);
  add("max_NM", prod, 2 * n);
  add("sum_NM_sq", sq_nm, 14 * n);
  r.cs_lhs = weighted * weighted;
  r.cs_middle = harmonic * to_double(sq_nm);
  r.cs_rhs = (1.0 + std::log(static_cast<double>(p.n))) * 14.0 * static_cast<double>(p.n);
  const double slack = 1e-9 * std::max(1.0, r.cs_middle);
  r.cs_consistent = r.cs_lhs <= r.cs_middle + slack && harmonic <= 1.0 + std::log(static_cast<double>(p.n)) + 1e-12;
  return r;
}

/// Intra-block differences a' - a (a < a' in the same positive block) are
/// pairwise distinct over all blocks.
inline bool block_differences_distinct(const IntSet& a, std::uint64_t n) {
  const Integer nn(n);
  const Integer limit = nn * nn;
  std::vector<Integer> diffs;
  std::vector<Integer> block;
  Integer current = 0;
  const auto flush = [&] {
    for (std::size_t i = 0; i < block.size(); ++i) {
      for (std::size_t j = i + 1; j < block.size(); ++j) diffs.push_back(block[j] - block[i]);
    }
    block.clear();
  };
  for (const Integer& x : a) {
    if (x <= 0 || x > limit) continue;
    const Integer l = (x + nn - 1) / nn;
    if (l != current) {
      flush();
      current = l;
    }
    block.push_back(x);
  }
  flush();
  std::sort(diffs.begin(), diffs.end());
  return std::adjacent_find(diffs.begin(), diffs.end()) == diffs.end();
}

/// For each l, the sums a + b with a in positive block l and b in negative
/// block l are pairwise distinct.
inline bool cross_block_sums_distinct(const IntSet& a, std::uint64_t n) {
  const Integer nn(n);
  for (std::uint64_t l = 1; l <= n; ++l) {
    const Integer L(l);
    const auto p_lo = std::upper_bound(a.begin(), a.end(), Integer((L - 1) * nn));
    const auto p_hi = std::upper_bound(a.begin(), a.end(), Integer(L * nn));
    const auto m_lo = std::lower_bound(a.begin(), a.end(), Integer(-L * nn));
    const auto m_hi = std::lower_bound(a.begin(), a.end(), Integer((-L + 1) * nn));
    std::vector<Integer> sums;
    for (auto i = p_lo; i != p_hi; ++i) {
      for (auto j = m_lo; j != m_hi; ++j) sums.push_back(*i + *j);
    }
    std::sort(sums.begin(), sums.end());
    if (std::adjacent_find(sums.begin(), sums.end()) != sums.end()) return false;
  }
  return true;
}

/// 4 sqrt(7), the comparison constant for the probe.
inline double probe_constant() { return 4.0 * std::sqrt(7.0); }

/// Finite-prefix surrogate of liminf A(-x, x) / sqrt(x / ln x):
/// min over 1 <= l <= n of A(-ln, ln) / sqrt(ln / ln(ln)).
inline double liminf_probe(const IntSet& a, std::uint64_t n) {
  if (n < 2) throw InvalidArgument("liminf_probe: n must be at least 2");
  double best = std::numeric_limits<double>::infinity();
  for (std::uint64_t l = 1; l <= n; ++l) {
    const double x = static_cast<double>(l) * static_cast<double>(n);
    const Integer xi = Integer(l) * n;
    const double count = static_cast<double>(counting(a, -xi, xi));
    best = std::min(best, count / std::sqrt(x / std::log(x)));
  }
  return best;
}

struct GrowthSample {
  Integer x;
  std::uint64_t count = 0;
  double cube_root_ratio = 0.0;
  double sqrt_ratio = 0.0;
  /// sqrt(8x) - count.
  double nathanson_slack = 0.0;
  /// x > max |a|.
  bool beyond_prefix = false;
};

struct GrowthReport {
  std::vector<GrowthSample> samples;
  double ca_estimate = 0.0;
  std::optional<double> liminf_probe;
};

inline GrowthReport growth_report(const IntSet& a, std::span<const Integer> grid,
                                  std::optional<std::uint64_t> probe_n = std::nullopt) {
  GrowthReport r;
  const Integer reach = a.empty() ? Integer(0) : abs_value(max_abs(a));
  for (const Integer& x : grid) {
    if (x < 1) throw InvalidArgument("growth_report: grid values must be at least 1");
    GrowthSample s;
    s.x = x;
    s.count = counting(a, -x, x);
    const double xd = to_double(x);
    const double c = static_cast<double>(s.count);
    s.cube_root_ratio = c / std::cbrt(xd);
    s.sqrt_ratio = c / std::sqrt(xd);
    s.nathanson_slack = std::sqrt(8.0 * xd) - c;
    s.beyond_prefix = x > reach;
    r.ca_estimate = std::max(r.ca_estimate, s.sqrt_ratio);
    r.samples.push_back(std::move(s));
  }
  if (probe_n) r.liminf_probe = liminf_probe(a, *probe_n);
  return r;
}

/// First x >= 1 with A(-x, x)^2 > 8x, scanning every x up to max |a|.
/// Only the points x = |a| can be violations, since the count is constant
/// between consecutive absolute values while 8x grows.
inline std::optional<Integer> nathanson_violation(const IntSet& a) {
  std::vector<Integer> mags;
  mags.reserve(a.size());
  for (const Integer& x : a) {
    if (x != 0) mags.push_back(abs_value(x));
  }
  std::sort(mags.begin(), mags.end());
  const std::uint64_t zero = a.contains(0) ? 1 : 0;
  for (std::size_t i = 0; i < mags.size(); ++i) {
    if (i + 1 < mags.size() && mags[i + 1] == mags[i]) continue;
    const Integer c(zero + i + 1);
    if (c * c > 8 * mags[i]) return mags[i];
  }
  return std::nullopt;
}

}  // namespace urb::analysis
