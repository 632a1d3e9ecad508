#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include "diracfam/rational.hpp"

namespace diracfam {

// Exact element of Q(i).
struct ComplexRational {
  Rational re{0};
  Rational im{0};

  ComplexRational() = default;
  ComplexRational(Rational r) : re(std::move(r)) {}  // NOLINT(google-explicit-constructor)
  ComplexRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}
  ComplexRational(int v) : re(v) {}  // NOLINT(google-explicit-constructor)

  static ComplexRational i() { return {Rational(0), Rational(1)}; }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  ComplexRational conj() const { return {re, -im}; }
  Rational norm_sq() const { return re * re + im * im; }
  // max(|re|, |im|); exact magnitude surrogate for tolerance-free checks.
  Rational sup_abs() const {
    Rational a = abs_of(re), b = abs_of(im);
    return a < b ? b : a;
  }

  std::complex<double> to_complex_double() const { return {to_double(re), to_double(im)}; }

  friend ComplexRational operator+(const ComplexRational& a, const ComplexRational& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a, const ComplexRational& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ComplexRational operator-(const ComplexRational& a) { return {-a.re, -a.im}; }
  friend ComplexRational operator*(const ComplexRational& a, const ComplexRational& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ComplexRational operator/(const ComplexRational& a, const ComplexRational& b) {
    Rational n = b.norm_sq();
    if (n == 0) throw std::invalid_argument("ComplexRational: division by zero");
    ComplexRational p = a * b.conj();
    return {p.re / n, p.im / n};
  }
  ComplexRational& operator+=(const ComplexRational& o) { return *this = *this + o; }
  ComplexRational& operator-=(const ComplexRational& o) { return *this = *this - o; }
  ComplexRational& operator*=(const ComplexRational& o) { return *this = *this * o; }
  ComplexRational& operator/=(const ComplexRational& o) { return *this = *this / o; }

  friend bool operator==(const ComplexRational& a, const ComplexRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ComplexRational& a, const ComplexRational& b) { return !(a == b); }
};

inline std::string format_complex_rational(const ComplexRational& z) {
  if (z.im == 0) return format_rational(z.re);
  std::string im_part = (z.im == 1) ? "i" : (z.im == -1 ? "-i" : format_rational(z.im) + "i");
  if (z.re == 0) return im_part;
  std::string s = format_rational(z.re);
  if (z.im > 0) s += '+';
  return s + im_part;
}

// Scalar-concept hooks shared with Rational so the matrix code stays generic.
inline bool scalar_is_zero(const Rational& r) { return r == 0; }
inline bool scalar_is_zero(const ComplexRational& z) { return z.is_zero(); }
inline ComplexRational scalar_conj(const ComplexRational& z) { return z.conj(); }
inline Rational scalar_conj(const Rational& r) { return r; }
inline Rational scalar_sup_abs(const Rational& r) { return abs_of(r); }
inline Rational scalar_sup_abs(const ComplexRational& z) { return z.sup_abs(); }

}  // namespace diracfam
