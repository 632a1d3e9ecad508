#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diracfam/exact_matrix.hpp"

namespace diracfam {

inline constexpr int kMaxCliffordDim = 12;

inline std::size_t spinor_rank(int n) {
  if (n < 1) throw std::invalid_argument("spinor_rank: n must be positive");
  return std::size_t{1} << (n / 2);
}

// Anticommuting skew-Hermitian generators a_1..a_n with a_j^2 = -I on C^{2^(n/2)},
// plus the grading operator for even n.
struct CliffordRep {
  int n = 0;
  std::size_t N = 0;
  std::vector<ComplexRationalMatrix> generators;
  std::optional<ComplexRationalMatrix> chirality;
};

namespace detail {

inline ComplexRational i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return ComplexRational(1);
    case 1: return ComplexRational::i();
    case 2: return ComplexRational(-1);
    default: return -ComplexRational::i();
  }
}

// omega = i^(n/2) a_1 ... a_n
inline ComplexRationalMatrix grading_operator(int n, const std::vector<ComplexRationalMatrix>& gens) {
  ComplexRationalMatrix w = ComplexRationalMatrix::identity(gens.front().rows());
  for (const auto& a : gens) w = w * a;
  return i_power(n / 2) * w;
}

// Doubling step: generators on C^N -> generators on C^2N for one more dimension.
inline std::vector<ComplexRationalMatrix> double_generators(
    const std::vector<ComplexRationalMatrix>& gens) {
  std::size_t N = gens.front().rows();
  std::vector<ComplexRationalMatrix> out;
  out.reserve(gens.size() + 1);

  ComplexRationalMatrix first(2 * N, 2 * N);
  for (std::size_t i = 0; i < N; ++i) {
    first(i, N + i) = ComplexRational(-1);
    first(N + i, i) = ComplexRational(1);
  }
  out.push_back(std::move(first));

  for (const auto& b : gens) {
    ComplexRationalMatrix m(2 * N, 2 * N);
    ComplexRationalMatrix top = -b.adjoint();
    for (std::size_t i = 0; i < N; ++i)
      for (std::size_t j = 0; j < N; ++j) {
        m(i, N + j) = top(i, j);
        m(N + i, j) = b(i, j);
      }
    out.push_back(std::move(m));
  }
  return out;
}

}  // namespace detail

inline CliffordRep build_clifford(int n) {
  if (n < 1 || n > kMaxCliffordDim)
    throw std::invalid_argument("build_clifford: n must lie in [1, 12]");

  std::vector<ComplexRationalMatrix> gens;
  {
    ComplexRationalMatrix a1(1, 1);
    a1(0, 0) = ComplexRational::i();
    gens.push_back(std::move(a1));
  }
  for (int m = 2; m <= n; ++m) {
    if (m % 2 == 0) {
      gens = detail::double_generators(gens);
    } else {
      // Same spinor space; i * omega of the even stage leads the list so the
      // printed low-dimensional conventions come out verbatim.
      ComplexRationalMatrix extra = ComplexRational::i() * detail::grading_operator(m - 1, gens);
      gens.insert(gens.begin(), std::move(extra));
    }
  }

  CliffordRep rep;
  rep.n = n;
  rep.N = spinor_rank(n);
  rep.generators = std::move(gens);
  if (n % 2 == 0) rep.chirality = detail::grading_operator(n, rep.generators);
  return rep;
}

struct CliffordCheck {
  bool squares = false;
  bool anticommute = false;
  bool skew_hermitian = false;
  bool grading = false;
  bool all() const { return squares && anticommute && skew_hermitian && grading; }
};

inline CliffordCheck check_clifford(const CliffordRep& rep) {
  CliffordCheck out;
  const auto I = ComplexRationalMatrix::identity(rep.N);
  const auto minus_I = -I;

  out.squares = true;
  for (const auto& a : rep.generators)
    if (a * a != minus_I) out.squares = false;

  out.anticommute = true;
  for (std::size_t j = 0; j < rep.generators.size(); ++j)
    for (std::size_t k = j + 1; k < rep.generators.size(); ++k) {
      const auto& a = rep.generators[j];
      const auto& b = rep.generators[k];
      if (!(a * b + b * a).is_zero()) out.anticommute = false;
    }

  out.skew_hermitian = true;
  for (const auto& a : rep.generators)
    if (a.adjoint() != -a) out.skew_hermitian = false;

  if (rep.n % 2 == 0) {
    out.grading = rep.chirality.has_value();
    if (out.grading) {
      const auto& w = *rep.chirality;
      if (w * w != I) out.grading = false;
      if (w.adjoint() != w) out.grading = false;
      for (const auto& a : rep.generators)
        if (!(w * a + a * w).is_zero()) out.grading = false;
    }
  } else {
    out.grading = !rep.chirality.has_value();
  }
  return out;
}

// P+/- = (I +/- omega)/2; complementary orthogonal projections of rank N/2.
inline std::pair<ComplexRationalMatrix, ComplexRationalMatrix> chirality_projectors(
    const CliffordRep& rep) {
  if (!rep.chirality) throw std::invalid_argument("chirality_projectors: even dimension required");
  const auto I = ComplexRationalMatrix::identity(rep.N);
  ComplexRational half(Rational(1, 2));
  return {half * (I + *rep.chirality), half * (I - *rep.chirality)};
}

// Column bases (N x N/2) of the positive and negative half-spinor subspaces.
inline std::pair<ComplexRationalMatrix, ComplexRationalMatrix> chiral_basis(
    const CliffordRep& rep) {
  auto [p_plus, p_minus] = chirality_projectors(rep);
  return {column_space_basis(p_plus), column_space_basis(p_minus)};
}

// i * sum_j v_j a_j; skew-Hermitian symbol scaled by i gives a Hermitian matrix
// with eigenvalues +/- |v|.
inline ComplexRationalMatrix dirac_symbol(const CliffordRep& rep, const std::vector<Rational>& v) {
  if (static_cast<int>(v.size()) != rep.n)
    throw std::invalid_argument("dirac_symbol: coefficient count must equal n");
  ComplexRationalMatrix m(rep.N, rep.N);
  for (int j = 0; j < rep.n; ++j)
    m = m + ComplexRational(Rational(0), v[j]) * rep.generators[j];
  return m;
}

}  // namespace diracfam
