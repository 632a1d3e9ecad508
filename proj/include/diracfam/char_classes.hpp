#pragma once

#include <stdexcept>
#include <string>

#include "diracfam/cup_form.hpp"
#include "diracfam/exterior.hpp"

namespace diracfam {

// Algebra housing the product of an n-torus (x side) with its parameter torus
// (y side).
inline ExteriorAlgebra family_algebra(int n) { return ExteriorAlgebra(n, n); }

// Omega = sum_i x_i y_i, the curvature class of the universal line bundle.
inline ExteriorElement omega(int n) {
  ExteriorAlgebra alg = family_algebra(n);
  ExteriorElement e = alg.zero();
  for (int i = 1; i <= n; ++i) e = e + alg.x(i) * alg.y(i);
  return e;
}

// 1 - p1/24 + (7 p1^2 - 4 p2)/5760, truncated above degree n.
inline ExteriorElement a_hat(int n, const ExteriorElement& p1, const ExteriorElement& p2) {
  if (n < 1) throw std::invalid_argument("a_hat: dimension must be positive");
  if (n > 8 && !(p1.is_zero() && p2.is_zero()))
    throw std::invalid_argument("a_hat: series beyond the p2 term is unavailable for n > 8");
  const ExteriorAlgebra& alg = p1.algebra();
  ExteriorElement series = alg.one() - Rational(1, 24) * p1 +
                           Rational(7, 5760) * (p1 * p1) - Rational(1, 1440) * p2;
  return series.truncate_above(n);
}

// Same series on the formal symbols p1 (degree 4) and p2 (degree 8).
inline ExteriorElement a_hat_formal(int n) {
  ExteriorAlgebra alg(0, 0, {{"p1", 4}, {"p2", 8}}, 8);
  return a_hat(n, alg.even("p1"), alg.even("p2"));
}

// Pairs the x-top part against the fundamental class, <x_1...x_n, [M]> = +1,
// leaving the y-side cohomology.
inline ExteriorElement slant_fundamental_class(const ExteriorElement& a, int n) {
  if (n < 0 || n > kMaxOddGenerators)
    throw std::invalid_argument("slant_fundamental_class: bad top degree");
  ExteriorElement out(a.algebra());
  if (n > a.algebra().x_count()) return out;
  const std::uint32_t top = n == 0 ? 0u : ((1u << n) - 1u);
  for (const auto& [m, c] : a.terms()) {
    if (m.x_bits != top) continue;
    Monomial stripped;
    stripped.y_bits = m.y_bits;
    stripped.pows = m.pows;
    stripped.degree = m.degree - n;
    out.add_term(stripped, c);
  }
  return out;
}

struct IndexFormulaReport {
  std::string description;
  ExteriorElement element;
  Rational rank_part{0};
  bool integral = false;
};

inline IndexFormulaReport make_index_report(std::string description, ExteriorElement element) {
  IndexFormulaReport r;
  r.description = std::move(description);
  r.element = std::move(element);
  r.rank_part = r.element.scalar_part();
  r.integral = is_integral(r.rank_part);
  return r;
}

// Chern character of the index bundle of the chiral family over T^n,
// parametrized by the dual torus: slant of exp(Omega) (the A-hat factor is 1).
inline IndexFormulaReport family_ch_torus(int n) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("family_ch_torus: even n >= 2 required (odd n: odd_family_ch)");
  ExteriorAlgebra alg = family_algebra(n);
  ExteriorElement total = exp_nilpotent(omega(n)) * a_hat(n, alg.zero(), alg.zero());
  return make_index_report("ch of the index bundle over the T^" + std::to_string(n) + " family",
                           slant_fundamental_class(total, n));
}

// Odd family over a 3-manifold with b1 = rank of H^1: the class is the triple
// cup form itself in degree 3.
inline ExteriorElement odd_family_ch(int b1, const CupForm& cup) {
  if (b1 != cup.betti()) throw std::invalid_argument("odd_family_ch: rank mismatch");
  if (b1 > kMaxOddGenerators) throw std::invalid_argument("odd_family_ch: rank out of range");
  ExteriorAlgebra alg(0, b1);
  ExteriorElement e = alg.zero();
  for (const auto& [idx, v] : cup.terms()) {
    Monomial m;
    m.y_bits = (1u << (idx[0] - 1)) | (1u << (idx[1] - 1)) | (1u << (idx[2] - 1));
    m.degree = 3;
    e.add_term(m, Rational(v));
  }
  return e;
}

struct PontryaginNumbers {
  Rational p1{0};     // <p1, [M]> for n = 4
  Rational p1_sq{0};  // <p1^2, [M]> for n = 8
  Rational p2{0};     // <p2, [M]> for n = 8
};

struct IndexNumber {
  Rational value{0};
  bool integral = false;
};

// A-hat number in the dimensions whose series terms are pinned down.
inline IndexNumber index_from_pontryagin(int n, const PontryaginNumbers& p) {
  Rational value;
  switch (n) {
    case 2:
    case 6:
      value = 0;
      break;
    case 4:
      value = -p.p1 / 24;
      break;
    case 8:
      value = (Rational(7) * p.p1_sq - Rational(4) * p.p2) / 5760;
      break;
    default:
      throw std::invalid_argument("index_from_pontryagin: n must be one of 2, 4, 6, 8");
  }
  return IndexNumber{value, is_integral(value)};
}

// rank + c1 + (c1^2 - 2 c2)/2, truncated above degree 4.
inline ExteriorElement chern_character(const Rational& rank_part, const ExteriorElement& c1,
                                       const ExteriorElement& c2) {
  const ExteriorAlgebra& alg = c1.algebra();
  ExteriorElement series =
      alg.scalar(rank_part) + c1 + Rational(1, 2) * (c1 * c1 - Rational(2) * c2);
  return series.truncate_above(4);
}

}  // namespace diracfam
