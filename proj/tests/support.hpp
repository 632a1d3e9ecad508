#pragma once

#include <Eigen/Dense>

#include <random>
#include <vector>

#include "diracfam/exact_matrix.hpp"

namespace testsupport {

inline Eigen::MatrixXcd eigen_of(const diracfam::ComplexRationalMatrix& m) {
  Eigen::MatrixXcd out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j).to_complex_double();
  return out;
}

inline diracfam::Rational random_rational(std::mt19937& rng, int num_range = 8,
                                          int max_den = 6) {
  std::uniform_int_distribution<int> num(-num_range, num_range);
  std::uniform_int_distribution<int> den(1, max_den);
  return diracfam::Rational(num(rng), den(rng));
}

inline std::vector<diracfam::Rational> random_rational_vector(std::mt19937& rng, int n,
                                                              int num_range = 8,
                                                              int max_den = 6) {
  std::vector<diracfam::Rational> v(n);
  for (auto& x : v) x = random_rational(rng, num_range, max_den);
  return v;
}

}  // namespace testsupport
