#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "diracfam/complex_rational.hpp"
#include "diracfam/rational.hpp"

namespace diracfam {

// Dense matrix over an exact field scalar (Rational or ComplexRational).
template <typename Scalar>
class DenseMatrix {
 public:
  DenseMatrix() = default;
  DenseMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, Scalar(0)) {}

  DenseMatrix(std::initializer_list<std::initializer_list<Scalar>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("DenseMatrix: ragged initializer");
      for (const auto& v : row) data_.push_back(v);
    }
  }

  static DenseMatrix identity(std::size_t n) {
    DenseMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = Scalar(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  Scalar& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Scalar& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool is_zero() const {
    for (const auto& v : data_)
      if (!scalar_is_zero(v)) return false;
    return true;
  }

  // max over entries of the sup-norm surrogate |re|, |im|.
  Rational sup_abs() const {
    Rational m(0);
    for (const auto& v : data_) {
      Rational a = scalar_sup_abs(v);
      if (m < a) m = a;
    }
    return m;
  }

  DenseMatrix transpose() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  DenseMatrix adjoint() const {
    DenseMatrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = scalar_conj((*this)(i, j));
    return t;
  }

  friend DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    a.require_same_shape(b);
    DenseMatrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] + b.data_[i];
    return r;
  }

  friend DenseMatrix operator-(const DenseMatrix& a, const DenseMatrix& b) {
    a.require_same_shape(b);
    DenseMatrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = a.data_[i] - b.data_[i];
    return r;
  }

  friend DenseMatrix operator-(const DenseMatrix& a) {
    DenseMatrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = -a.data_[i];
    return r;
  }

  friend DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("DenseMatrix: shape mismatch in product");
    DenseMatrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Scalar& aik = a(i, k);
        if (scalar_is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) r(i, j) += aik * b(k, j);
      }
    return r;
  }

  friend DenseMatrix operator*(const Scalar& s, const DenseMatrix& a) {
    DenseMatrix r(a.rows_, a.cols_);
    for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = s * a.data_[i];
    return r;
  }

  friend bool operator==(const DenseMatrix& a, const DenseMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }
  friend bool operator!=(const DenseMatrix& a, const DenseMatrix& b) { return !(a == b); }

 private:
  void require_same_shape(const DenseMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
      throw std::invalid_argument("DenseMatrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Scalar> data_;
};

using RationalMatrix = DenseMatrix<Rational>;
using ComplexRationalMatrix = DenseMatrix<ComplexRational>;

// Reduced row echelon form in place; returns pivot column indices.
template <typename Scalar>
std::vector<std::size_t> row_reduce(DenseMatrix<Scalar>& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t p = row;
    while (p < m.rows() && scalar_is_zero(m(p, col))) ++p;
    if (p == m.rows()) continue;
    if (p != row)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(p, j), m(row, j));
    Scalar inv = Scalar(1) / m(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m(row, j) = inv * m(row, j);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == row || scalar_is_zero(m(i, col))) continue;
      Scalar f = m(i, col);
      for (std::size_t j = col; j < m.cols(); ++j) m(i, j) = m(i, j) - f * m(row, j);
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

template <typename Scalar>
std::size_t rank(const DenseMatrix<Scalar>& m) {
  DenseMatrix<Scalar> work = m;
  return row_reduce(work).size();
}

// Columns spanning the null space, one per free column of the RREF.
template <typename Scalar>
DenseMatrix<Scalar> kernel_basis(const DenseMatrix<Scalar>& m) {
  DenseMatrix<Scalar> work = m;
  std::vector<std::size_t> pivots = row_reduce(work);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::size_t nullity = m.cols() - pivots.size();
  DenseMatrix<Scalar> basis(m.cols(), nullity);
  std::size_t out = 0;
  for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    basis(free_col, out) = Scalar(1);
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], out) = -work(r, free_col);
    ++out;
  }
  return basis;
}

// Columns of m indexed by the pivot columns of its RREF: a basis of the column space.
template <typename Scalar>
DenseMatrix<Scalar> column_space_basis(const DenseMatrix<Scalar>& m) {
  DenseMatrix<Scalar> work = m;
  std::vector<std::size_t> pivots = row_reduce(work);
  DenseMatrix<Scalar> basis(m.rows(), pivots.size());
  for (std::size_t j = 0; j < pivots.size(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) basis(i, j) = m(i, pivots[j]);
  return basis;
}

}  // namespace diracfam
