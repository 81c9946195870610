#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "urb/analysis.hpp"
#include "urb/construct_t1.hpp"

using urb::Integer;
using urb::IntSet;
namespace an = urb::analysis;

namespace {

oracle::Vec as_vec(const IntSet& s) {
  oracle::Vec v;
  for (const Integer& x : s) v.push_back(x.convert_to<std::int64_t>());
  return v;
}

const IntSet& a2() {
  static const IntSet s{-25, -5, -1, 1, 6, 24};
  return s;
}

const IntSet& t1_prefix() {
  static const IntSet s = urb::t1::build(9).final_stage().set;
  return s;
}

}  // namespace

TEST(BlockCounts, ExampleSet) {
  const an::BlockProfile p = an::block_counts(a2(), 10);
  ASSERT_EQ(p.N.size(), 10u);
  EXPECT_EQ(p.N[0], 2u);
  EXPECT_EQ(p.N[1], 0u);
  EXPECT_EQ(p.N[2], 1u);
  EXPECT_EQ(p.M[0], 2u);
  EXPECT_EQ(p.M[1], 0u);
  EXPECT_EQ(p.M[2], 1u);
  EXPECT_TRUE(p.short_coverage);
  EXPECT_FALSE(p.zero_present);
}

TEST(BlockCounts, BracketConvention) {
  const an::BlockProfile p = an::block_counts(IntSet{-20, -10, 0, 10, 20}, 10);
  EXPECT_EQ(p.N[0], 1u);
  EXPECT_EQ(p.N[1], 1u);
  EXPECT_EQ(p.M[0], 1u);
  EXPECT_EQ(p.M[1], 1u);
  EXPECT_TRUE(p.zero_present);
  EXPECT_THROW(an::block_counts(a2(), 0), urb::InvalidArgument);
}

TEST(BlockCounts, EmptySet) {
  const an::BlockProfile p = an::block_counts(IntSet{}, 5);
  for (auto v : p.N) EXPECT_EQ(v, 0u);
  for (auto v : p.M) EXPECT_EQ(v, 0u);
}

TEST(BlockCounts, MatchesIntervalOracle) {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<std::int64_t> value(-500, 500);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Integer> v;
    for (int i = 0; i < 60; ++i) v.emplace_back(value(rng));
    const IntSet s(v);
    for (std::int64_t n : {1, 3, 7, 20}) {
      const auto p = an::block_counts(s, static_cast<std::uint64_t>(n));
      const auto [N, M] = oracle::blocks(as_vec(s), n);
      ASSERT_EQ(p.N, N);
      ASSERT_EQ(p.M, M);
    }
  }
}

TEST(Inequalities, ExampleSet) {
  const auto r = an::check_block_inequalities(an::block_counts(a2(), 10));
  ASSERT_EQ(r.checks.size(), 5u);
  EXPECT_EQ(r.checks[0].lhs, 1);   // sum C(N,2)
  EXPECT_EQ(r.checks[1].lhs, 5);   // sum N^2
  EXPECT_EQ(r.checks[2].lhs, 5);   // sum M^2
  EXPECT_EQ(r.checks[3].lhs, 4);   // max N M
  EXPECT_EQ(r.checks[4].lhs, 20);  // sum (N+M)^2 = 4^2 + 2^2
  EXPECT_EQ(r.checks[4].rhs, 140);
  EXPECT_TRUE(r.all_pass());
  EXPECT_TRUE(r.cs_consistent);
}

TEST(Inequalities, AllZeroProfile) {
  an::BlockProfile p;
  p.n = 4;
  p.N.assign(4, 0);
  p.M.assign(4, 0);
  EXPECT_TRUE(an::check_block_inequalities(p).all_pass());
}

TEST(Inequalities, SyntheticViolationIsReported) {
  an::BlockProfile p;
  p.n = 10;
  p.N.assign(10, 0);
  p.M.assign(10, 0);
  p.N[0] = 20;
  p.M[0] = 20;
  const auto r = an::check_block_inequalities(p);
  EXPECT_FALSE(r.all_pass());
  EXPECT_FALSE(r.checks[3].pass);
  EXPECT_EQ(r.checks[3].lhs, 400);
}

TEST(Inequalities, HoldOnConstructedPrefix) {
  for (std::uint64_t n : {10, 30, 100, 300}) {
    const auto p = an::block_counts(t1_prefix(), n);
    const auto r = an::check_block_inequalities(p);
    EXPECT_TRUE(r.all_pass()) << n;
    EXPECT_TRUE(r.cs_consistent) << n;
    EXPECT_LT(r.cs_middle, r.cs_rhs) << n;
    EXPECT_TRUE(an::block_differences_distinct(t1_prefix(), n)) << n;
    EXPECT_TRUE(an::cross_block_sums_distinct(t1_prefix(), n)) << n;
  }
}

TEST(Distinctness, DetectsRepeats) {
  // 1, 2, 3 in one block: differences 1, 1, 2
  EXPECT_FALSE(an::block_differences_distinct(IntSet{1, 2, 3}, 10));
  // 5 + (-3) = 6 + (-4)
  EXPECT_FALSE(an::cross_block_sums_distinct(IntSet{-4, -3, 5, 6}, 10));
  EXPECT_TRUE(an::cross_block_sums_distinct(a2(), 10));
}

TEST(LiminfProbe, BoundedByFirstQuotient) {
  const IntSet& a = t1_prefix();
  const std::uint64_t n = 100;
  const double probe = an::liminf_probe(a, n);
  const double first = static_cast<double>(urb::counting(a, -100, 100)) / std::sqrt(100.0 / std::log(100.0));
  EXPECT_LE(probe, first);
  EXPECT_THROW(an::liminf_probe(a, 1), urb::InvalidArgument);
  EXPECT_NEAR(an::probe_constant(), 10.583005244, 1e-9);
}

TEST(Growth, SmallestCase) {
  const std::vector<Integer> grid{1};
  const auto r = an::growth_report(IntSet{-1, 1}, grid);
  ASSERT_EQ(r.samples.size(), 1u);
  EXPECT_EQ(r.samples[0].count, 2u);
  EXPECT_NEAR(r.samples[0].nathanson_slack, std::sqrt(8.0) - 2, 1e-12);
  EXPECT_FALSE(r.samples[0].beyond_prefix);
}

TEST(Growth, BeyondPrefixFlagged) {
  const std::vector<Integer> grid{1, 10};
  const auto r = an::growth_report(IntSet{-1, 1}, grid);
  EXPECT_TRUE(r.samples[1].beyond_prefix);
  EXPECT_DOUBLE_EQ(r.ca_estimate, 2.0);
}

TEST(Nathanson, DetectsViolationAndPassesBases) {
  EXPECT_EQ(an::nathanson_violation(t1_prefix()), std::nullopt);
  // A(-k, k) = k for A = {1, ..., 9}; k^2 > 8k first at k = 9
  EXPECT_EQ(an::nathanson_violation(IntSet{1, 2, 3, 4, 5, 6, 7, 8, 9}), Integer(9));
}

TEST(Nathanson, MatchesEveryXScan) {
  std::mt19937_64 rng(43);
  std::uniform_int_distribution<std::int64_t> value(-60, 60);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Integer> v;
    const int size = 5 + trial % 25;
    for (int i = 0; i < size; ++i) v.emplace_back(value(rng));
    const IntSet a(v);
    const auto ov = as_vec(a);
    std::optional<Integer> first;
    for (std::int64_t x = 1; x <= 60 && !first; ++x) {
      const auto c = static_cast<std::int64_t>(oracle::counting(ov, -x, x));
      if (c * c > 8 * x) first = x;
    }
    ASSERT_EQ(an::nathanson_violation(a), first) << trial;
  }
}
