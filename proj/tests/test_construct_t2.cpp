#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "urb/construct_t2.hpp"

using urb::Integer;
using urb::IntSet;
using urb::Rational;
namespace t2 = urb::t2;

namespace {

oracle::Vec as_vec(const IntSet& s) {
  oracle::Vec v;
  for (const Integer& x : s) v.push_back(x.convert_to<std::int64_t>());
  return v;
}

const t2::BuildResult& round1() {
  static const t2::BuildResult r = t2::build(1, Rational(1, 10));
  return r;
}

bool sqrt_density_float(std::uint64_t count, std::uint64_t x, double eps) {
  return static_cast<double>(count) >= (std::sqrt(2.0) / 2 - eps) * std::sqrt(static_cast<double>(x));
}

}  // namespace

TEST(Epsilon, Validity) {
  EXPECT_TRUE(t2::epsilon_valid(Rational(1, 10)));
  EXPECT_TRUE(t2::epsilon_valid(Rational(7, 10)));
  EXPECT_FALSE(t2::epsilon_valid(Rational(71, 100)));
  EXPECT_FALSE(t2::epsilon_valid(Rational(0, 1)));
  EXPECT_FALSE(t2::epsilon_valid(Rational(-1, 10)));
}

TEST(SqrtDensity, ExactMatchesFloatAwayFromBoundary) {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<std::uint64_t> xs(1, 10000000);
  for (int trial = 0; trial < 5000; ++trial) {
    const std::uint64_t x = xs(rng);
    const double bound = (std::sqrt(2.0) / 2 - 0.1) * std::sqrt(static_cast<double>(x));
    const auto c = static_cast<std::uint64_t>(bound) + (trial % 3);
    if (std::abs(static_cast<double>(c) - bound) < 1e-6) continue;
    ASSERT_EQ(t2::meets_sqrt_density(Integer(c), Integer(x), Rational(1, 10)), sqrt_density_float(c, x, 0.1))
        << c << " " << x;
  }
}

TEST(SqrtDensity, KnownValues) {
  // (sqrt(2)/2 - 1/10) * sqrt(100) = 6.0710...
  EXPECT_TRUE(t2::meets_sqrt_density(7, 100, Rational(1, 10)));
  EXPECT_FALSE(t2::meets_sqrt_density(6, 100, Rational(1, 10)));
  EXPECT_TRUE(t2::meets_sqrt_density(0, 0, Rational(1, 10)));
}

TEST(InitialY, AdmissibleAndMinimal) {
  const Rational eps(1, 10);
  const Integer y = t2::initial_y(eps, -25, 1);
  EXPECT_EQ(y, 502);
  EXPECT_TRUE(t2::y_admissible(y, eps, -25, 1));
  EXPECT_FALSE(t2::y_admissible(y - 2, eps, -25, 1));
  EXPECT_FALSE(t2::y_admissible(y + 1, eps, -25, 1));
  EXPECT_EQ(t2::initial_y(Rational(1, 2), 10, 1), 62);
}

TEST(EquationSearch, MatchesOracle) {
  std::mt19937_64 rng(37);
  std::uniform_int_distribution<std::int64_t> value(-40, 40);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Integer> a, s;
    for (int i = 0; i < 5; ++i) a.emplace_back(value(rng));
    for (int i = 0; i < 5; ++i) s.emplace_back(value(rng) + 60);
    const IntSet as(a), ss(s);
    const auto lib = t2::search_forbidden_equations(as, ss);
    const auto ref = oracle::forbidden_equations(as_vec(as), as_vec(ss));
    EXPECT_EQ(lib.sum_sum, ref.sum_sum);
    EXPECT_EQ(lib.sum_translate, ref.sum_translate);
    EXPECT_EQ(lib.translate_sum, ref.translate_sum);
  }
}

TEST(DensifySidon, RejectsBadInput) {
  const IntSet a{-25, -5, -1, 1, 6, 24};
  EXPECT_THROW(t2::densify_sidon(a, Rational(1, 10), 503), urb::InvalidArgument);
  EXPECT_THROW(t2::densify_sidon(IntSet{0, 1}, Rational(1, 10), 502), urb::InvalidArgument);
  EXPECT_THROW(t2::densify_sidon(a, Rational(3, 4), 502), urb::InvalidArgument);
}

TEST(DensifySidon, ShortfallAtFirstY) {
  const t2::DensifyOutcome o = t2::densify_sidon(IntSet{-25, -5, -1, 1, 6, 24}, Rational(1, 10), 502);
  EXPECT_FALSE(o.accepted);
  EXPECT_EQ(o.block.s.size(), 13u);
}

TEST(DensifySidon, ResourceLimitIsReported) {
  t2::Options small;
  small.max_sidon_q = 50;
  EXPECT_THROW(t2::choose_y(IntSet{-25, -5, -1, 1, 6, 24}, Rational(1, 10), 1, small), urb::ResourceLimit);
}

TEST(Round1, RegressionPins) {
  const auto& r = round1();
  ASSERT_EQ(r.stages.size(), 3u);
  ASSERT_EQ(r.x_ladder.size(), 2u);
  EXPECT_EQ(r.x_ladder[0], 1);
  EXPECT_EQ(r.x_ladder[1], 514048);
  EXPECT_EQ(r.stages[1].set, (IntSet{-25, -5, -1, 1, 6, 24}));
  const auto& s3 = r.stages[2];
  EXPECT_EQ(s3.set.size(), 457u);
  EXPECT_EQ(s3.a_star, 485749);
  ASSERT_TRUE(s3.sidon.has_value());
  EXPECT_EQ(s3.sidon->sidon_q, 479u);
  EXPECT_EQ(s3.sidon->s_star_size, 451u);
  EXPECT_EQ(s3.sidon->pruned_pairs, 15u);
  EXPECT_EQ(s3.sidon->rejected_y.size(), 10u);
}

TEST(Round1, StagesSatisfyConditions) {
  const auto& r = round1();
  const Rational eps(1, 10);
  for (std::size_t i = 0; i < r.stages.size(); ++i) {
    const auto& s = r.stages[i];
    const Integer& x = r.x_ladder[static_cast<std::size_t>(s.index / 2)];
    EXPECT_EQ(t2::check_stage(s, eps, x, i == 0 ? nullptr : &r.stages[i - 1]), std::nullopt) << s.index;
    EXPECT_TRUE(oracle::is_sidon(as_vec(s.set))) << s.index;
  }
  const auto& last = r.final_stage();
  const std::uint64_t x = r.x_ladder.back().convert_to<std::uint64_t>();
  const std::uint64_t c = urb::counting(last.set, -r.x_ladder.back(), r.x_ladder.back());
  EXPECT_TRUE(sqrt_density_float(c, x, 0.1));
}

TEST(Round1, ForbiddenEquationsHaveNoSolutionsByDirectSearch) {
  const auto& r = round1();
  const IntSet& a_even = r.stages[1].set;
  std::vector<Integer> s;
  for (const Integer& v : r.stages[2].set) {
    if (!a_even.contains(v)) s.push_back(v);
  }
  const auto e = oracle::forbidden_equations(as_vec(a_even), as_vec(IntSet(s)));
  EXPECT_EQ(e.sum_sum, 0u);
  EXPECT_EQ(e.sum_translate, 0u);
  EXPECT_EQ(e.translate_sum, 0u);
}

TEST(Round1, SidonBlockWithinInterval) {
  const auto& r = round1();
  const Integer y = r.x_ladder[1];
  const Rational eps(1, 10);
  for (const Integer& v : r.stages[2].set) {
    if (r.stages[1].set.contains(v)) continue;
    EXPECT_GE(v, y / 2);
    // translate of [0, (1/2 - eps/2) y)
    EXPECT_LT(v, y / 2 + t2::sidon_interval(eps, y));
  }
}

TEST(Build, LargerEpsilon) {
  const auto r = t2::build(1, Rational(1, 2));
  ASSERT_EQ(r.x_ladder.size(), 2u);
  const auto& last = r.final_stage();
  EXPECT_TRUE(t2::meets_sqrt_density(Integer(urb::counting(last.set, -r.x_ladder[1], r.x_ladder[1])), r.x_ladder[1],
                                     Rational(1, 2)));
  EXPECT_TRUE(urb::is_sidon(last.set).sidon);
}

TEST(Build, RejectsBadArguments) {
  EXPECT_THROW(t2::build(0, Rational(1, 10)), urb::InvalidArgument);
  EXPECT_THROW(t2::build(1, Rational(1, 1)), urb::InvalidArgument);
}
