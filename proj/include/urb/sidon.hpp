#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "urb/error.hpp"
#include "urb/int_set.hpp"
#include "urb/prime_field.hpp"

namespace urb::sidon {

enum class Method { bose_chowla, erdos_turan, mian_chowla };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::bose_chowla: return "bose_chowla";
    case Method::erdos_turan: return "erdos_turan";
    case Method::mian_chowla: return "mian_chowla";
  }
  return "unknown";
}

/// A verified Sidon set inside [0, n_bound).
struct SidonResult {
  IntSet set;
  Method method = Method::bose_chowla;
  /// Prime parameter of the algebraic constructions; the requested count for Mian-Chowla.
  std::uint64_t q_or_p = 0;
  std::uint64_t n_bound = 0;
  std::size_t cardinality = 0;
  /// sqrt(n_bound) - cardinality.
  double density_gap = 0.0;
};

namespace detail {

inline SidonResult finish(std::vector<std::uint64_t> elems, Method method, std::uint64_t param,
                          std::uint64_t n_bound) {
  std::vector<Integer> values(elems.begin(), elems.end());
  SidonResult r;
  r.set = IntSet(std::move(values));
  r.method = method;
  r.q_or_p = param;
  r.n_bound = n_bound;
  r.cardinality = r.set.size();
  r.density_gap = std::sqrt(static_cast<double>(n_bound)) - static_cast<double>(r.cardinality);
  if (!r.set.empty() && r.set.back() >= n_bound) {
    throw InvariantViolation(std::string(method_name(method)) + " element outside [0, n_bound)",
                             to_decimal(r.set.back()));
  }
  if (const SidonCheck chk = is_sidon(r.set); !chk.sidon) {
    const auto& v = *chk.violation;
    throw InvariantViolation(std::string(method_name(method)) + " produced a non-Sidon set",
                             to_decimal(v[0]) + "+" + to_decimal(v[1]) + " = " + to_decimal(v[2]) + "+" +
                                 to_decimal(v[3]));
  }
  return r;
}

}  // namespace detail

/// {2pk + (k^2 mod p) : 0 <= k < p}, a Sidon set of size p in [0, 2p^2).
inline SidonResult erdos_turan(std::uint64_t p) {
  if (!is_prime(p)) throw InvalidArgument("erdos_turan: " + std::to_string(p) + " is not prime");
  std::vector<std::uint64_t> elems;
  elems.reserve(p);
  for (std::uint64_t k = 0; k < p; ++k) elems.push_back(2 * p * k + (k * k) % p);
  return detail::finish(std::move(elems), Method::erdos_turan, p, 2 * p * p);
}

/// Exponents i in [1, q^2 - 1] with g^i - g in F_q, for the field's generator g.
/// Found by walking every power of g once.
inline std::vector<std::uint64_t> bose_chowla_exponents(const PrimeFieldExt& field) {
  const auto g = field.generator();
  const std::uint64_t order = field.group_order();
  std::vector<std::uint64_t> out;
  out.reserve(field.q());
  auto power = g;
  for (std::uint64_t i = 1; i <= order; ++i) {
    if (power.hi == g.hi) out.push_back(i);
    power = field.mul(power, g);
  }
  if (out.size() != field.q()) {
    throw InvariantViolation("bose_chowla: wrong number of exponents",
                             std::to_string(out.size()) + " != " + std::to_string(field.q()));
  }
  return out;
}

/// Bose-Chowla set of size q inside [1, q^2 - 1]; n_bound = q^2.
inline SidonResult bose_chowla(std::uint64_t q) {
  if (!is_prime(q)) throw InvalidArgument("bose_chowla: " + std::to_string(q) + " is not prime");
  const PrimeFieldExt field(q);
  return detail::finish(bose_chowla_exponents(field), Method::bose_chowla, q, q * q);
}

/// First `count` terms of the greedy Sidon sequence 1, 2, 4, 8, 13, ...
inline SidonResult mian_chowla(std::size_t count) {
  std::vector<std::uint64_t> elems;
  std::vector<bool> used_diff(1, false);
  std::uint64_t candidate = 1;
  while (elems.size() < count) {
    if (used_diff.size() <= candidate) used_diff.resize(2 * candidate + 1, false);
    bool ok = true;
    for (const std::uint64_t s : elems) {
      if (used_diff[candidate - s]) {
        ok = false;
        break;
      }
    }
    if (ok) {
      for (const std::uint64_t s : elems) used_diff[candidate - s] = true;
      elems.push_back(candidate);
    }
    ++candidate;
  }
  const std::uint64_t bound = elems.empty() ? 1 : elems.back() + 1;
  return detail::finish(std::move(elems), Method::mian_chowla, count, bound);
}

/// Largest prime q with q^2 - 1 < n, or 0 when n <= 3.
inline std::uint64_t interval_prime(std::uint64_t n) {
  if (n <= 3) return 0;
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r - 1 >= n) --r;
  while ((r + 1) * (r + 1) - 1 < n) ++r;
  return prime_at_most(r);
}

/// Bose-Chowla set mod q^2 - 1 rotated so that the most elements land in
/// [0, n); keeps only those. Rotation of a modular Sidon set stays Sidon.
inline std::vector<std::uint64_t> rotated_window(std::uint64_t q, std::uint64_t n) {
  const PrimeFieldExt field(q);
  const std::uint64_t modulus = field.group_order();
  std::vector<std::uint64_t> base = bose_chowla_exponents(field);
  for (auto& e : base) e %= modulus;
  std::sort(base.begin(), base.end());
  const std::size_t k = base.size();
  std::size_t best_count = 0;
  std::uint64_t best_start = 0;
  std::size_t hi = 0;
  // Window starts at base[i]; count elements in [base[i], base[i] + n) cyclically.
  for (std::size_t i = 0; i < k; ++i) {
    if (hi < i) hi = i;
    while (hi < i + k) {
      const std::uint64_t v = hi < k ? base[hi] : base[hi - k] + modulus;
      if (v - base[i] >= n) break;
      ++hi;
    }
    if (hi - i > best_count) {
      best_count = hi - i;
      best_start = base[i];
    }
  }
  std::vector<std::uint64_t> out;
  for (const std::uint64_t e : base) {
    const std::uint64_t shifted = (e + modulus - best_start) % modulus;
    if (shifted < n) out.push_back(shifted);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Sidon set inside [0, n) with at least target_density * sqrt(n) elements.
///
/// Uses bose_chowla(q) for the largest prime q with q^2 - 1 < n. When that
/// misses the target, the next prime's modular set is rotated into [0, n)
/// and kept if it is larger; if both miss, DensityShortfall is thrown.
inline SidonResult sidon_in_interval(std::uint64_t n, double target_density) {
  if (n < 2) throw InvalidArgument("sidon_in_interval: n must be at least 2");
  const double needed = target_density * std::sqrt(static_cast<double>(n));
  SidonResult best;
  if (const std::uint64_t q = interval_prime(n); q != 0) {
    best = bose_chowla(q);
    best.n_bound = n;
    best.density_gap = std::sqrt(static_cast<double>(n)) - static_cast<double>(best.cardinality);
  } else {
    // n in {2, 3}: a singleton {1} is the best a prime construction offers here.
    best = detail::finish({1}, Method::bose_chowla, 2, n);
  }
  if (static_cast<double>(best.cardinality) >= needed) return best;

  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r - 1 < n) ++r;
  const std::uint64_t q_next = prime_at_least(r);
  SidonResult rotated = detail::finish(rotated_window(q_next, n), Method::bose_chowla, q_next, n);
  if (rotated.cardinality > best.cardinality) best = std::move(rotated);
  if (static_cast<double>(best.cardinality) < needed) {
    throw DensityShortfall("sidon_in_interval: " + std::to_string(best.cardinality) + " elements in [0, " +
                           std::to_string(n) + ") is below the requested " + std::to_string(needed));
  }
  return best;
}

}  // namespace urb::sidon
