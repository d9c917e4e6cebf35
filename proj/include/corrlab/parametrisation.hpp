#pragma once

// Maps between hyperspherical angles, Cholesky factors and partial correlations of
// correlation matrices over R, C and H.
//
// Angle layout. Row j of the factor (0-based, j = 1..N-1) is a point on the real sphere of
// dimension beta*j; its beta*j angles are stored row-major, j ascending and slot p ascending
// within the row. With c_0..c_m (m = beta*j) the real coordinates of the row,
//
//   c_i = cos(theta_i) * prod_{q<i} sin(theta_q),   c_m = prod_{q<m} sin(theta_q),
//
// and L_jk (k < j) takes components c_{beta*k} .. c_{beta*k + beta - 1} in the order
// (re) / (re, im) / (z_re, z_im, w_re, w_im). L_jj = c_m is real and positive.

#include <cstddef>
#include <span>
#include <vector>

#include "corrlab/algebra.hpp"
#include "corrlab/field.hpp"
#include "corrlab/matrix.hpp"

namespace corrlab {

class AngleSet {
 public:
  // All angles pi/2 (the identity factor).
  AngleSet(Field field, std::size_t dim);

  // rows[j - 1] holds the beta*j angles of factor row j, j = 1..dim-1. Throws UsageError on
  // a shape mismatch and InvalidInput("angle out of open range") unless every angle is
  // strictly inside (0, pi).
  static AngleSet from_rows(Field field, std::size_t dim, const std::vector<std::vector<double>>& rows);

  Field field() const noexcept { return field_; }
  int beta() const noexcept { return beta_of(field_); }
  std::size_t dim() const noexcept { return dim_; }
  // beta * N (N - 1) / 2
  std::size_t size() const noexcept { return values_.size(); }

  std::span<const double> row(std::size_t j) const;
  std::span<double> row(std::size_t j);
  std::span<const double> values() const noexcept { return values_; }
  std::span<double> values() noexcept { return values_; }

  std::vector<std::vector<double>> rows() const;

  // Throws InvalidInput if an angle left the open range (0, pi).
  void validate() const;

  static std::size_t count(int beta, std::size_t dim) {
    return static_cast<std::size_t>(beta) * dim * (dim - (dim > 0 ? 1 : 0)) / 2;
  }

 private:
  Field field_;
  std::size_t dim_;
  std::vector<double> values_;
};

// Lower-triangular table of scalars indexed (j, k), k < j; used for the partial correlations
// rho_{jk | first k variables}.
template <FieldScalar T>
class PartialCorrelationTable {
 public:
  explicit PartialCorrelationTable(std::size_t dim) : dim_(dim), data_(dim * (dim - (dim > 0 ? 1 : 0)) / 2) {}

  std::size_t dim() const noexcept { return dim_; }
  T& operator()(std::size_t j, std::size_t k) { return data_[index(j, k)]; }
  const T& operator()(std::size_t j, std::size_t k) const { return data_[index(j, k)]; }

 private:
  std::size_t index(std::size_t j, std::size_t k) const {
    if (!(k < j && j < dim_)) throw UsageError("partial correlation index must satisfy k < j < dim");
    return j * (j - 1) / 2 + k;
  }
  std::size_t dim_;
  std::vector<T> data_;
};

// Partial covariances or correlations at every conditioning level: level(c) is the
// (N - c) x (N - c) matrix over variables c..N-1 given variables 0..c-1.
template <FieldScalar T>
class LevelTable {
 public:
  explicit LevelTable(std::vector<Matrix<T>> levels) : levels_(std::move(levels)) {}

  std::size_t dim() const noexcept { return levels_.empty() ? 0 : levels_.front().rows(); }
  const Matrix<T>& level(std::size_t conditioned) const { return levels_.at(conditioned); }
  // Entry for global variable indices j, k >= conditioned.
  const T& at(std::size_t j, std::size_t k, std::size_t conditioned) const {
    if (j < conditioned || k < conditioned) throw UsageError("LevelTable::at: index inside conditioning set");
    return levels_.at(conditioned)(j - conditioned, k - conditioned);
  }

 private:
  std::vector<Matrix<T>> levels_;
};

template <FieldScalar T>
using PartialCovarianceTable = LevelTable<T>;
template <FieldScalar T>
using PartialCorrelationLevels = LevelTable<T>;

// Throws UsageError if the angle field does not match T.
template <FieldScalar T>
CholeskyFactor<T> angles_to_cholesky(const AngleSet& angles);

// Inverse of angles_to_cholesky. Each angle is atan2(norm of the remaining coordinates,
// current coordinate); when that remaining norm underflows (< 1e-300) the angle is set to
// pi/2. Throws InvalidInput if a row norm differs from 1 by more than 1e-8.
template <FieldScalar T>
AngleSet cholesky_to_angles(const CholeskyFactor<T>& l);

// l_jk = rho_jk * prod_{p<k} sqrt(1 - |rho_jp|^2), l_jj = prod_{p<j} sqrt(1 - |rho_jp|^2).
// Throws DomainError if an entry has modulus >= 1.
template <FieldScalar T>
CholeskyFactor<T> partials_to_cholesky(const PartialCorrelationTable<T>& table);

// rho_{jk | 0..k-1}: the first beta coordinates of the sub-sphere that starts at slot
// beta*k of row j (cos(theta_jk) in the real case).
template <FieldScalar T>
PartialCorrelationTable<T> angles_to_partials(const AngleSet& angles);

// Partial covariances by the one-step elimination recursion
//   s_jk|p = s_jk|p-1 - s_jp|p-1 * s_pk|p-1 / s_pp|p-1.
// Throws Degenerate naming the pivot when s_pp falls below 1e-12 x the largest diagonal.
template <FieldScalar T>
PartialCovarianceTable<T> partial_cov_recursion(const Matrix<T>& s);

// Partial correlations at every level. Real: the correlation recursion
//   r_jk|p = (r_jk - r_jp r_pk) / sqrt((1 - r_jp^2)(1 - r_pk^2));
// complex/quaternion: normalised partial_cov_recursion levels. Requires unit diagonal.
// Throws Degenerate when |r_jp| is within 1e-12 of 1.
template <FieldScalar T>
PartialCorrelationLevels<T> partial_corr_recursion(const Matrix<T>& r);

}  // namespace corrlab
