#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "urb/error.hpp"

namespace urb {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Distinct prime factors, ascending (trial division).
inline std::vector<std::uint64_t> distinct_prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

/// Largest prime p with p <= n, or 0 if none.
inline std::uint64_t prime_at_most(std::uint64_t n) {
  for (std::uint64_t p = n; p >= 2; --p) {
    if (is_prime(p)) return p;
  }
  return 0;
}

inline std::uint64_t prime_at_least(std::uint64_t n) {
  for (std::uint64_t p = n < 2 ? 2 : n;; ++p) {
    if (is_prime(p)) return p;
  }
}

/// GF(q^2) realised as F_q[x] / (x^2 + b x + c) for a prime q < 2^32.
///
/// Elements are pairs (lo, hi) meaning lo + hi*x. The modulus is the first
/// irreducible monic quadratic in lexicographic (b, c) order and the generator
/// the first element of full order q^2 - 1 in the enumeration k = hi*q + lo,
/// so a given q always yields the same field presentation.
class PrimeFieldExt {
 public:
  struct Elem {
    std::uint64_t lo = 0;
    std::uint64_t hi = 0;
    friend bool operator==(const Elem&, const Elem&) = default;
  };

  explicit PrimeFieldExt(std::uint64_t q) : q_(q) {
    if (!is_prime(q)) throw InvalidArgument("field order " + std::to_string(q) + " is not prime");
    if (q >= (std::uint64_t{1} << 32)) throw InvalidArgument("field order must be below 2^32");
    find_modulus();
    find_generator();
  }

  std::uint64_t q() const noexcept { return q_; }
  std::uint64_t group_order() const noexcept { return q_ * q_ - 1; }
  /// Coefficients (b, c) of the modulus x^2 + b x + c.
  std::uint64_t mod_b() const noexcept { return b_; }
  std::uint64_t mod_c() const noexcept { return c_; }
  const Elem& generator() const noexcept { return gen_; }

  static constexpr Elem one() { return {1, 0}; }

  Elem mul(const Elem& u, const Elem& v) const {
    // (u0 + u1 x)(v0 + v1 x) with x^2 = -b x - c.
    const std::uint64_t hh = u.hi * v.hi % q_;
    const std::uint64_t lo = (u.lo * v.lo % q_ + (q_ - c_) * hh % q_) % q_;
    const std::uint64_t hi = (u.lo * v.hi % q_ + u.hi * v.lo % q_ + (q_ - b_) * hh % q_) % q_;
    return {lo, hi};
  }

  Elem pow(Elem base, std::uint64_t e) const {
    Elem acc = one();
    while (e > 0) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  /// True iff t^2 + b t + c has no root in F_q.
  static bool quadratic_irreducible(std::uint64_t q, std::uint64_t b, std::uint64_t c) {
    for (std::uint64_t t = 0; t < q; ++t) {
      if ((t * t % q + b * t % q + c) % q == 0) return false;
    }
    return true;
  }

  bool has_full_order(const Elem& g) const {
    if (g == Elem{0, 0}) return false;
    const std::uint64_t n = group_order();
    if (pow(g, n) != one()) return false;
    for (const std::uint64_t r : factors_) {
      if (pow(g, n / r) == one()) return false;
    }
    return true;
  }

  /// Multiplicative order by repeated multiplication (test helper, O(q^2)).
  std::uint64_t order_by_enumeration(const Elem& g) const {
    Elem acc = g;
    std::uint64_t k = 1;
    while (acc != one()) {
      acc = mul(acc, g);
      ++k;
    }
    return k;
  }

 private:
  void find_modulus() {
    for (std::uint64_t b = 0; b < q_; ++b) {
      for (std::uint64_t c = 0; c < q_; ++c) {
        if (quadratic_irreducible(q_, b, c)) {
          b_ = b;
          c_ = c;
          return;
        }
      }
    }
    throw InvariantViolation("no irreducible quadratic found", "q=" + std::to_string(q_));
  }

  void find_generator() {
    factors_ = distinct_prime_factors(group_order());
    for (std::uint64_t k = 1; k < q_ * q_; ++k) {
      const Elem g{k % q_, k / q_};
      if (has_full_order(g)) {
        gen_ = g;
        return;
      }
    }
    throw InvariantViolation("no generator of the multiplicative group", "q=" + std::to_string(q_));
  }

  std::uint64_t q_;
  std::uint64_t b_ = 0;
  std::uint64_t c_ = 0;
  Elem gen_{};
  std::vector<std::uint64_t> factors_;
};

}  // namespace urb
