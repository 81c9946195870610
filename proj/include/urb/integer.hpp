#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "urb/error.hpp"

namespace urb {

/// Exact arbitrary-precision integer used for every set element.
using Integer = boost::multiprecision::cpp_int;

inline Integer abs_value(const Integer& x) { return x < 0 ? Integer(-x) : x; }

inline std::string to_decimal(const Integer& x) { return x.str(); }

inline double to_double(const Integer& x) { return x.convert_to<double>(); }

/// Strict decimal parse: optional sign followed by at least one digit.
inline Integer parse_integer(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
    negative = text[pos] == '-';
    ++pos;
  }
  if (pos == text.size()) {
    throw ParseError("not a decimal integer: '" + std::string(text) + "'");
  }
  Integer value = 0;
  for (; pos < text.size(); ++pos) {
    const char c = text[pos];
    if (!std::isdigit(static_cast<unsigned char>(c))) {
      throw ParseError("not a decimal integer: '" + std::string(text) + "'");
    }
    value *= 10;
    value += c - '0';
  }
  return negative ? Integer(-value) : value;
}

/// Floor of the square root of a nonnegative integer.
inline Integer isqrt(const Integer& x) {
  if (x < 0) throw InvalidArgument("isqrt of a negative integer");
  return boost::multiprecision::sqrt(x);
}

/// Exact rational number with positive denominator, always reduced.
struct Rational {
  Integer num{0};
  Integer den{1};

  Rational() = default;
  Rational(Integer n, Integer d) : num(std::move(n)), den(std::move(d)) {
    if (den == 0) throw InvalidArgument("rational with zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    const Integer g = boost::multiprecision::gcd(abs_value(num), den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  double to_double() const { return num.convert_to<double>() / den.convert_to<double>(); }

  std::string str() const { return den == 1 ? num.str() : num.str() + "/" + den.str(); }

  friend bool operator==(const Rational&, const Rational&) = default;
};

/// Accepts "P/Q", "P", or a terminating decimal such as "0.125".
inline Rational parse_rational(std::string_view text) {
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    return Rational(parse_integer(text.substr(0, slash)), parse_integer(text.substr(slash + 1)));
  }
  if (const auto dot = text.find('.'); dot != std::string_view::npos) {
    const std::string_view whole = text.substr(0, dot);
    const std::string_view frac = text.substr(dot + 1);
    if (frac.empty() || frac.find_first_of("+-") != std::string_view::npos) {
      throw ParseError("not a rational: '" + std::string(text) + "'");
    }
    const bool negative = !whole.empty() && whole.front() == '-';
    Integer int_part = (whole.empty() || whole == "-" || whole == "+") ? Integer(0) : parse_integer(whole);
    Integer scale = 1;
    for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
    const Integer frac_part = parse_integer(frac);
    Integer num = abs_value(int_part) * scale + frac_part;
    return Rational(negative ? Integer(-num) : num, scale);
  }
  return Rational(parse_integer(text), 1);
}

}  // namespace urb
