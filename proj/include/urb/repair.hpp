#pragma once

#include <optional>
#include <string>

#include "urb/error.hpp"
#include "urb/int_set.hpp"

namespace urb {

/// Result of making the least unrepresented integer m (and -m) representable.
struct RepairResult {
  IntSet d;
  Integer m;
  Integer b;
  std::optional<Integer> b_tilde;
};

/// True iff 2A, A - b, A + b + m and {m, -2b, 2b + 2m} are pairwise disjoint.
inline bool repair_sets_disjoint(const IntSet& a, const Integer& m, const Integer& b) {
  const IntSet twice = sumset(a, a);
  const IntSet minus_b = a.translated(-b);
  const IntSet plus_bm = a.translated(b + m);
  const IntSet extra{m, Integer(-2 * b), Integer(2 * b + 2 * m)};
  const auto disjoint = [](const IntSet& x, const IntSet& y) {
    auto i = x.begin();
    auto j = y.begin();
    while (i != x.end() && j != y.end()) {
      if (*i == *j) return false;
      if (*i < *j) ++i; else ++j;
    }
    return true;
  };
  return disjoint(twice, minus_b) && disjoint(twice, plus_bm) && disjoint(twice, extra) &&
         disjoint(minus_b, plus_bm) && disjoint(minus_b, extra) && disjoint(plus_bm, extra);
}

/// Adjoins {-b, b + m} with b = 4|a*| + |m|, then {-b~, b~ - m} with
/// b~ = 4b + 5|m| when -m is still unrepresented. Verifies r_D <= 1,
/// r_D(m) = r_D(-m) = 1, 0 not in D and |d*| <= 64|a*| before returning.
inline RepairResult repair(const IntSet& a) {
  if (a.empty()) throw InvalidArgument("repair: empty set");
  const Integer a_star = abs_value(max_abs(a));
  RepairResult out;
  out.m = min_unrepresented(a);
  const Integer abs_m = abs_value(out.m);
  if (abs_m > 2 * a_star + 1) {
    throw InvariantViolation("repair: |m| exceeds 2|a*| + 1", "m=" + to_decimal(out.m));
  }
  out.b = 4 * a_star + abs_m;
  IntSet d = a;
  d.insert(-out.b);
  d.insert(out.b + out.m);
  if (rep_value(d, -out.m) != 1) {
    const Integer bt = 4 * out.b + 5 * abs_m;
    d.insert(-bt);
    d.insert(bt - out.m);
    out.b_tilde = bt;
  }
  const auto fail = [&](const std::string& what) {
    throw InvariantViolation("repair: " + what, "m=" + to_decimal(out.m) + " b=" + to_decimal(out.b));
  };
  if (const SidonCheck chk = is_sidon(d); !chk.sidon) fail("r_D(n) >= 2 at n=" + to_decimal((*chk.violation)[0] + (*chk.violation)[1]));
  if (rep_value(d, out.m) != 1) fail("r_D(m) != 1");
  if (rep_value(d, -out.m) != 1) fail("r_D(-m) != 1");
  if (d.contains(0)) fail("0 in D");
  if (abs_value(max_abs(d)) > 64 * a_star) fail("|d*| > 64|a*|");
  out.d = std::move(d);
  return out;
}

}  // namespace urb
