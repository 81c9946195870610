#pragma once

// Inductive construction of a unique representation basis with
// A(-x, x) >= (sqrt(2)/2 - eps) sqrt(x) along a ladder x_1 < x_2 < ...:
// repair steps alternate with adjoining a translated, pruned Bose-Chowla block.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "urb/error.hpp"
#include "urb/int_set.hpp"
#include "urb/repair.hpp"
#include "urb/sidon.hpp"

namespace urb::t2 {

struct RepairAudit {
  Integer m;
  Integer b;
  std::optional<Integer> b_tilde;
};

struct SidonAudit {
  Integer y;
  std::uint64_t sidon_q = 0;
  std::size_t s_size = 0;
  std::size_t s_tilde_size = 0;
  std::size_t s_star_size = 0;
  std::size_t pruned_pairs = 0;
  /// y values rejected for insufficient density before this one.
  std::vector<Integer> rejected_y;
};

/// A_index; odd indices follow a Sidon step, even ones a repair step.
struct Stage {
  int index = 1;
  IntSet set;
  Integer a_star;
  std::optional<RepairAudit> repair;
  std::optional<SidonAudit> sidon;
};

/// 0 < eps < sqrt(2)/2, i.e. 0 < p/q and 2p^2 < q^2.
inline bool epsilon_valid(const Rational& eps) {
  return eps.num > 0 && 2 * eps.num * eps.num < eps.den * eps.den;
}

/// count >= (sqrt(2)/2 - eps) * sqrt(x), decided in exact integer arithmetic.
inline bool meets_sqrt_density(const Integer& count, const Integer& x, const Rational& eps) {
  if (!epsilon_valid(eps)) throw InvalidArgument("epsilon must lie in (0, sqrt(2)/2)");
  if (x < 0 || count < 0) throw InvalidArgument("meets_sqrt_density: negative input");
  const Integer& p = eps.num;
  const Integer& q = eps.den;
  // 2qc + 2p sqrt(x) >= q sqrt(2x); square once, isolate the sqrt(x) term, square again.
  const Integer l = 2 * q * count;
  const Integer r = 2 * q * q * x - 4 * p * p * x - l * l;
  if (r <= 0) return true;
  return 16 * p * p * l * l * x >= r * r;
}

/// Repair step; the least unrepresented m must satisfy |m| >= h.
inline RepairResult repair_step(const IntSet& a_odd, int h) {
  RepairResult r = repair(a_odd);
  if (abs_value(r.m) < h) {
    throw InvariantViolation("repair_step_t2: |m| < h", "h=" + std::to_string(h) + " m=" + to_decimal(r.m));
  }
  return r;
}

/// y even, y > x_prev, y > 6|a*| and eps*y > 2|a*|.
inline bool y_admissible(const Integer& y, const Rational& eps, const Integer& a_star, const Integer& x_prev) {
  const Integer a = abs_value(a_star);
  return y % 2 == 0 && y > x_prev && y > 6 * a && eps.num * y > 2 * a * eps.den;
}

/// Smallest admissible y; the doubling search starts here.
inline Integer initial_y(const Rational& eps, const Integer& a_star, const Integer& x_prev) {
  const Integer a = abs_value(a_star);
  Integer y = std::max({x_prev, Integer(6 * a), Integer(2 * a * eps.den / eps.num)}) + 1;
  if (y % 2 != 0) ++y;
  while (!y_admissible(y, eps, a, x_prev)) y += 2;
  return y;
}

/// Solution counts of a1+a2 = s1+s2, a1+a2 = a3+s1 and s1+s2 = s3+a.
struct EquationSearch {
  std::size_t sum_sum = 0;
  std::size_t sum_translate = 0;
  std::size_t translate_sum = 0;
  bool none() const { return sum_sum == 0 && sum_translate == 0 && translate_sum == 0; }
};

inline EquationSearch search_forbidden_equations(const IntSet& a, const IntSet& s) {
  const IntSet aa = sumset(a, a);
  const IntSet ss = sumset(s, s);
  EquationSearch out;
  {
    auto i = aa.begin();
    auto j = ss.begin();
    while (i != aa.end() && j != ss.end()) {
      if (*i == *j) {
        ++out.sum_sum;
        ++i;
        ++j;
      } else if (*i < *j) {
        ++i;
      } else {
        ++j;
      }
    }
  }
  for (const Integer& x : s) {
    for (const Integer& a3 : a) {
      if (aa.contains(a3 + x)) ++out.sum_translate;
    }
  }
  for (const Integer& x : a) {
    for (const Integer& s3 : s) {
      if (ss.contains(s3 + x)) ++out.translate_sum;
    }
  }
  return out;
}

struct SidonBlock {
  IntSet s;
  IntSet s_tilde;
  IntSet s_star;
  std::size_t pruned_pairs = 0;
  std::uint64_t sidon_q = 0;
};

struct DensifyOutcome {
  bool accepted = false;
  SidonBlock block;
  /// A_even ∪ S*, present only when accepted.
  std::optional<IntSet> a_odd;
};

struct Options {
  /// Largest Bose-Chowla prime the search may use; beyond it ResourceLimit is thrown.
  std::uint64_t max_sidon_q = 4096;
};

/// Upper end of the interval [0, (1/2 - eps/2) y) hosting S, floored.
inline Integer sidon_interval(const Rational& eps, const Integer& y) {
  return (eps.den - eps.num) * y / (2 * eps.den);
}

/// Builds S from Bose-Chowla, shifts it by y/2, removes both ends of every
/// pair whose difference lies in A_even - A_even, and accepts when
/// |S*| >= (sqrt(2)/2 - eps) sqrt(y). Accepted blocks are checked against
/// the three forbidden equation families and the union against r <= 1.
inline DensifyOutcome densify_sidon(const IntSet& a_even, const Rational& eps, const Integer& y,
                                    const Options& options = {}) {
  if (!epsilon_valid(eps)) throw InvalidArgument("epsilon must lie in (0, sqrt(2)/2)");
  if (y % 2 != 0) throw InvalidArgument("densify_sidon: y must be even");
  if (a_even.contains(0)) throw InvalidArgument("densify_sidon: 0 belongs to A");

  const Integer n_s = sidon_interval(eps, y);
  if (n_s < 2) throw InvalidArgument("densify_sidon: y too small for a Sidon block");
  if (n_s >= Integer(std::uint64_t{1} << 62)) {
    throw ResourceLimit("densify_sidon: Sidon interval " + to_decimal(n_s) + " is beyond 64-bit range");
  }
  const std::uint64_t n = n_s.convert_to<std::uint64_t>();
  const std::uint64_t q = sidon::interval_prime(n);
  if (q > options.max_sidon_q) {
    throw ResourceLimit("densify_sidon: y=" + to_decimal(y) + " needs a Bose-Chowla set with q=" + std::to_string(q) +
                        " > max_sidon_q=" + std::to_string(options.max_sidon_q));
  }

  DensifyOutcome out;
  SidonBlock& blk = out.block;
  const sidon::SidonResult base = sidon::sidon_in_interval(n, 0.0);
  blk.sidon_q = base.q_or_p;
  blk.s = base.set;
  blk.s_tilde = blk.s.translated(y / 2);
  if (!is_sidon(blk.s_tilde).sidon) throw InvariantViolation("translated Sidon set is not Sidon");

  // Positive differences of A_even, all within 2|a*|.
  const Integer a_star = abs_value(max_abs(a_even));
  std::vector<Integer> diffs;
  for (const Integer& d : diffset(a_even)) {
    if (d > 0) diffs.push_back(d);
  }
  const Integer max_diff = diffs.empty() ? Integer(0) : diffs.back();
  std::vector<bool> removed(blk.s_tilde.size(), false);
  for (std::size_t i = 0; i < blk.s_tilde.size(); ++i) {
    for (std::size_t j = i + 1; j < blk.s_tilde.size(); ++j) {
      const Integer gap = blk.s_tilde[j] - blk.s_tilde[i];
      if (gap > max_diff) break;
      if (std::binary_search(diffs.begin(), diffs.end(), gap)) {
        ++blk.pruned_pairs;
        removed[i] = true;
        removed[j] = true;
      }
    }
  }
  if (Integer(blk.pruned_pairs) > 4 * a_star) {
    throw InvariantViolation("densify_sidon: more than 4|a*| colliding pairs", std::to_string(blk.pruned_pairs));
  }
  std::vector<Integer> kept;
  for (std::size_t i = 0; i < blk.s_tilde.size(); ++i) {
    if (!removed[i]) kept.push_back(blk.s_tilde[i]);
  }
  blk.s_star = IntSet::from_sorted(std::move(kept));

  if (!meets_sqrt_density(Integer(blk.s_star.size()), y, eps)) return out;

  const EquationSearch eq = search_forbidden_equations(a_even, blk.s_star);
  if (!eq.none()) {
    throw InvariantViolation("densify_sidon: forbidden equation has solutions",
                             std::to_string(eq.sum_sum) + "/" + std::to_string(eq.sum_translate) + "/" +
                                 std::to_string(eq.translate_sum));
  }
  IntSet joined = a_even.united(blk.s_star);
  if (const SidonCheck chk = is_sidon(joined); !chk.sidon) {
    const auto& v = *chk.violation;
    throw InvariantViolation("densify_sidon: A ∪ S* has a repeated sum", to_decimal(v[0] + v[1]));
  }
  out.accepted = true;
  out.a_odd = std::move(joined);
  return out;
}

struct ChosenY {
  Integer y;
  DensifyOutcome outcome;
  std::vector<Integer> rejected;
};

/// Doubles y from initial_y until the Sidon block is dense enough.
inline ChosenY choose_y(const IntSet& a_even, const Rational& eps, const Integer& x_prev,
                        const Options& options = {}) {
  ChosenY out;
  out.y = initial_y(eps, max_abs(a_even), x_prev);
  for (;;) {
    DensifyOutcome o;
    try {
      o = densify_sidon(a_even, eps, out.y, options);
    } catch (const ResourceLimit& e) {
      std::string msg = e.what();
      if (!out.rejected.empty()) {
        msg += "; last rejected y=" + to_decimal(out.rejected.back()) + " with |S*|=" +
               std::to_string(out.outcome.block.s_star.size()) + ", " +
               std::to_string(out.outcome.block.pruned_pairs) + " colliding pairs";
      }
      throw ResourceLimit(msg);
    }
    if (o.accepted) {
      out.outcome = std::move(o);
      return out;
    }
    out.rejected.push_back(out.y);
    out.outcome = std::move(o);
    out.y *= 2;
  }
}

/// Conditions I-IV for one stage (III at odd stages against x, II at even
/// stages up to index/2), plus nesting against `prev`.
inline std::optional<std::string> check_stage(const Stage& s, const Rational& eps, const Integer& x,
                                              const Stage* prev = nullptr) {
  if (s.set.empty()) return "empty stage";
  if (const SidonCheck chk = is_sidon(s.set); !chk.sidon) {
    return "condition I fails at n=" + to_decimal((*chk.violation)[0] + (*chk.violation)[1]);
  }
  if (s.index % 2 == 0) {
    const BasisReport basis = is_unique_basis_prefix(s.set, Integer(s.index / 2));
    if (!basis.pass) return "condition II fails at n=" + to_decimal(basis.counterexample->n);
  } else if (!meets_sqrt_density(Integer(counting(s.set, -x, x)), x, eps)) {
    return "condition III fails at x=" + to_decimal(x);
  }
  if (s.set.contains(0)) return "condition IV fails: 0 in A";
  if (prev != nullptr && !prev->set.is_subset_of(s.set)) return "stages are not nested";
  return std::nullopt;
}

struct BuildOptions {
  Options search;
  std::function<void(const Stage&, const std::vector<Integer>& ladder)> on_stage;
};

struct BuildResult {
  Rational epsilon;
  std::vector<Stage> stages;
  std::vector<Integer> x_ladder;

  const Stage& final_stage() const { return stages.back(); }
};

/// A_1 = {-1, 1}, x_1 = 1, then `rounds` rounds of repair + Sidon block.
inline BuildResult build(int rounds, const Rational& eps, const BuildOptions& options = {}) {
  if (rounds < 1) throw InvalidArgument("build_t2: need at least one round");
  if (!epsilon_valid(eps)) throw InvalidArgument("epsilon must lie in (0, sqrt(2)/2)");
  BuildResult out;
  out.epsilon = eps;
  out.x_ladder.push_back(1);
  out.stages.push_back(Stage{1, IntSet{-1, 1}, Integer(1), std::nullopt, std::nullopt});
  if (auto err = check_stage(out.stages.back(), eps, out.x_ladder.back())) throw InvariantViolation("stage 1", *err);
  if (options.on_stage) options.on_stage(out.stages.back(), out.x_ladder);

  for (int h = 1; h <= rounds; ++h) {
    RepairResult rep = repair_step(out.stages.back().set, h);
    Stage even;
    even.index = 2 * h;
    even.set = std::move(rep.d);
    even.a_star = max_abs(even.set);
    even.repair = RepairAudit{rep.m, rep.b, rep.b_tilde};
    if (auto err = check_stage(even, eps, out.x_ladder.back(), &out.stages.back())) {
      throw InvariantViolation("stage " + std::to_string(even.index), *err);
    }
    out.stages.push_back(std::move(even));
    if (options.on_stage) options.on_stage(out.stages.back(), out.x_ladder);

    const Stage& prev = out.stages.back();
    ChosenY chosen = choose_y(prev.set, eps, out.x_ladder.back(), options.search);
    Stage odd;
    odd.index = 2 * h + 1;
    odd.set = std::move(*chosen.outcome.a_odd);
    odd.a_star = max_abs(odd.set);
    const SidonBlock& blk = chosen.outcome.block;
    odd.sidon = SidonAudit{chosen.y,         blk.sidon_q,      blk.s.size(), blk.s_tilde.size(),
                           blk.s_star.size(), blk.pruned_pairs, chosen.rejected};
    if (!(chosen.y > out.x_ladder.back())) throw InvariantViolation("x ladder not increasing", to_decimal(chosen.y));
    out.x_ladder.push_back(chosen.y);
    if (auto err = check_stage(odd, eps, chosen.y, &prev)) {
      throw InvariantViolation("stage " + std::to_string(odd.index), *err);
    }
    out.stages.push_back(std::move(odd));
    if (options.on_stage) options.on_stage(out.stages.back(), out.x_ladder);
  }
  return out;
}

}  // namespace urb::t2
