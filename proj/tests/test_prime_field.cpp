#include <gtest/gtest.h>

#include "urb/prime_field.hpp"

using urb::PrimeFieldExt;

TEST(Primes, Basics) {
  EXPECT_FALSE(urb::is_prime(0));
  EXPECT_FALSE(urb::is_prime(1));
  EXPECT_TRUE(urb::is_prime(2));
  EXPECT_TRUE(urb::is_prime(101));
  EXPECT_FALSE(urb::is_prime(100));
  EXPECT_EQ(urb::prime_at_most(100), 97u);
  EXPECT_EQ(urb::prime_at_least(98), 101u);
  EXPECT_EQ(urb::prime_at_most(1), 0u);
  EXPECT_EQ(urb::distinct_prime_factors(360), (std::vector<std::uint64_t>{2, 3, 5}));
}

TEST(PrimeFieldExt, RejectsComposite) {
  EXPECT_THROW(PrimeFieldExt(9), urb::InvalidArgument);
}

TEST(PrimeFieldExt, ModulusIsIrreducibleByRootSearch) {
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 31, 97}) {
    const PrimeFieldExt f(q);
    for (std::uint64_t t = 0; t < q; ++t) {
      EXPECT_NE((t * t + f.mod_b() * t + f.mod_c()) % q, 0u) << "q=" << q << " t=" << t;
    }
  }
}

TEST(PrimeFieldExt, GeneratorHasFullOrderByEnumeration) {
  for (std::uint64_t q : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47}) {
    const PrimeFieldExt f(q);
    EXPECT_EQ(f.order_by_enumeration(f.generator()), q * q - 1) << "q=" << q;
  }
}

TEST(PrimeFieldExt, MultiplicationAxioms) {
  const PrimeFieldExt f(13);
  using E = PrimeFieldExt::Elem;
  for (std::uint64_t a = 0; a < 169; a += 7) {
    for (std::uint64_t b = 0; b < 169; b += 11) {
      const E x{a % 13, a / 13};
      const E y{b % 13, b / 13};
      const E z{(a + b) % 13, (a * b) % 13};
      EXPECT_EQ(f.mul(x, y), f.mul(y, x));
      EXPECT_EQ(f.mul(f.mul(x, y), z), f.mul(x, f.mul(y, z)));
    }
    const E x{a % 13, a / 13};
    EXPECT_EQ(f.mul(x, PrimeFieldExt::one()), x);
  }
}

TEST(PrimeFieldExt, PowMatchesRepeatedMultiplication) {
  const PrimeFieldExt f(7);
  auto acc = PrimeFieldExt::one();
  for (std::uint64_t e = 0; e < 60; ++e) {
    EXPECT_EQ(f.pow(f.generator(), e), acc);
    acc = f.mul(acc, f.generator());
  }
}

TEST(PrimeFieldExt, LargePrimeDoesNotOverflow) {
  const PrimeFieldExt f(65521);
  const auto g = f.generator();
  EXPECT_EQ(f.pow(g, f.group_order()), PrimeFieldExt::one());
}
