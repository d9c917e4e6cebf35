#pragma once

#include <cassert>
#include <cstddef>
#include <vector>

#include "corrlab/error.hpp"
#include "corrlab/field.hpp"

namespace corrlab {

// Dense column-major matrix over one of the three scalar types.
template <FieldScalar T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1.0);
    return m;
  }

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) {
    assert(i < rows_ && j < cols_);
    return data_[i + j * rows_];
  }
  const T& operator()(std::size_t i, std::size_t j) const {
    assert(i < rows_ && j < cols_);
    return data_[i + j * rows_];
  }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

// Conjugate transpose.
template <FieldScalar T>
Matrix<T> adjoint(const Matrix<T>& m) {
  Matrix<T> out(m.cols(), m.rows());
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) out(j, i) = conj(m(i, j));
  return out;
}

template <FieldScalar T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw UsageError("matrix product: inner dimensions differ");
  Matrix<T> out(a.rows(), b.cols());
  for (std::size_t j = 0; j < b.cols(); ++j)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const T& bkj = b(k, j);
      for (std::size_t i = 0; i < a.rows(); ++i) out(i, j) += a(i, k) * bkj;
    }
  return out;
}

// Largest entrywise modulus of a - b.
template <FieldScalar T>
double max_abs_diff(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw UsageError("max_abs_diff: shape mismatch");
  double worst = 0.0;
  for (std::size_t j = 0; j < a.cols(); ++j)
    for (std::size_t i = 0; i < a.rows(); ++i) {
      double d = std::sqrt(norm2(T(a(i, j) - b(i, j))));
      if (d > worst) worst = d;
    }
  return worst;
}

// Sub-block [r0, r0 + rows) x [c0, c0 + cols).
template <FieldScalar T>
Matrix<T> block(const Matrix<T>& m, std::size_t r0, std::size_t c0, std::size_t rows, std::size_t cols) {
  if (r0 + rows > m.rows() || c0 + cols > m.cols()) throw UsageError("block out of range");
  Matrix<T> out(rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) out(i, j) = m(r0 + i, c0 + j);
  return out;
}

}  // namespace corrlab
