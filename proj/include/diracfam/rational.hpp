#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace diracfam {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline int sign_of(const Rational& r) {
  return r.sign();
}

inline Rational abs_of(const Rational& r) {
  return r < 0 ? Rational(-r) : r;
}

inline Integer rational_floor(const Rational& r) {
  Integer q = numerator(r) / denominator(r);
  if (r < 0 && q * denominator(r) != numerator(r)) --q;
  return q;
}

inline Integer rational_ceil(const Rational& r) {
  return -rational_floor(-r);
}

inline bool is_integral(const Rational& r) {
  return denominator(r) == 1;
}

// Exact: every finite double is a dyadic rational.
inline Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("rational_from_double: non-finite value");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  double frac = std::frexp(x, &exp);  // x = frac * 2^exp, |frac| in [1/2, 1)
  auto mant = static_cast<std::int64_t>(std::ldexp(frac, 53));
  exp -= 53;
  Rational r(mant);
  if (exp >= 0) {
    r *= Rational(Integer(1) << exp);
  } else {
    r /= Rational(Integer(1) << -exp);
  }
  return r;
}

inline double to_double(const Rational& r) {
  return r.convert_to<double>();
}

// Lowest terms, "p" for integers, "p/q" otherwise.
inline std::string format_rational(const Rational& r) {
  std::string s = numerator(r).str();
  if (denominator(r) != 1) {
    s += '/';
    s += denominator(r).str();
  }
  return s;
}

// Accepts "p", "p/q" and decimal strings like "-0.25".
inline Rational parse_rational(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("parse_rational: bad input '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  std::string_view s = text;
  bool neg = false;
  if (s.front() == '+' || s.front() == '-') {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty()) fail();

  auto digits_to_int = [&](std::string_view d) {
    if (d.empty()) fail();
    Integer v = 0;
    for (char ch : d) {
      if (ch < '0' || ch > '9') fail();
      v = v * 10 + (ch - '0');
    }
    return v;
  };

  Rational r;
  if (auto slash = s.find('/'); slash != std::string_view::npos) {
    Integer num = digits_to_int(s.substr(0, slash));
    Integer den = digits_to_int(s.substr(slash + 1));
    if (den == 0) fail();
    r = Rational(num, den);
  } else if (auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view whole = s.substr(0, dot);
    std::string_view frac = s.substr(dot + 1);
    if (whole.empty() && frac.empty()) fail();
    Integer w = whole.empty() ? Integer(0) : digits_to_int(whole);
    Integer f = frac.empty() ? Integer(0) : digits_to_int(frac);
    Integer den = 1;
    for (size_t i = 0; i < frac.size(); ++i) den *= 10;
    r = Rational(w) + Rational(f, den);
  } else {
    r = Rational(digits_to_int(s));
  }
  return neg ? Rational(-r) : r;
}

}  // namespace diracfam
