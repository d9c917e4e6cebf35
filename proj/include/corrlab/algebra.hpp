#pragma once

#include <cstddef>
#include <string>

#include "corrlab/field.hpp"
#include "corrlab/matrix.hpp"

namespace corrlab {

// Relative Cholesky pivot floor: a pivot <= kPivotFloor * (largest diagonal entry) counts as
// singular.
inline constexpr double kPivotFloor = 1e-12;
// Tolerance on |R_jj - 1| for a matrix to count as having unit diagonal.
inline constexpr double kUnitDiagonalTol = 1e-12;

// Lower-triangular factor with real positive diagonal. Holds the invariant by construction:
// only cholesky_decompose and the parametrisation maps create one from raw data.
template <FieldScalar T>
class CholeskyFactor {
 public:
  CholeskyFactor() = default;

  // Checks lower-triangularity and a strictly positive real diagonal; throws InvalidInput.
  static CholeskyFactor from_lower(Matrix<T> lower);

  std::size_t dim() const noexcept { return lower_.rows(); }
  const Matrix<T>& matrix() const noexcept { return lower_; }
  const T& operator()(std::size_t i, std::size_t j) const { return lower_(i, j); }
  // Real diagonal entry L_jj.
  double diagonal(std::size_t j) const { return real_part(lower_(j, j)); }

 private:
  explicit CholeskyFactor(Matrix<T> lower) : lower_(std::move(lower)) {}
  friend struct CholeskyFactorAccess;

  Matrix<T> lower_;
};

// Unchecked construction for the parametrisation maps, which guarantee the invariant.
struct CholeskyFactorAccess {
  template <FieldScalar T>
  static CholeskyFactor<T> adopt(Matrix<T> lower) {
    return CholeskyFactor<T>(std::move(lower));
  }
};

// 2x2 complex block [[z, w], [-conj(w), conj(z)]] of a quaternion, and its inverse map.
Matrix<Complex> quaternion_embed(const Quaternion& q);
// Throws InvalidInput if the block does not have quaternion structure (to 1e-12).
Quaternion quaternion_extract(const Matrix<Complex>& block);
// Replaces each entry of a quaternion matrix by its 2x2 block.
Matrix<Complex> quaternion_embed(const Matrix<Quaternion>& m);

// Unique factor with positive diagonal and L L^dagger = S. Throws NotPositiveDefinite with
// the 1-based index of the first failing pivot, UsageError for non-square input.
template <FieldScalar T>
CholeskyFactor<T> cholesky_decompose(const Matrix<T>& s);

// L L^dagger.
template <FieldScalar T>
Matrix<T> gram(const CholeskyFactor<T>& l);

// Z Z^dagger for a general (rows x cols) matrix, i.e. the Gram matrix of its rows.
template <FieldScalar T>
Matrix<T> gram_rows(const Matrix<T>& z);

// S/S_11 after removing the leading `conditioned` x `conditioned` block; conditioned = 0
// returns S. The leading block must be positive definite (NotPositiveDefinite otherwise).
template <FieldScalar T>
Matrix<T> schur_complement(const Matrix<T>& s, std::size_t conditioned);

// Partial correlations given the first `conditioned` variables: the Schur complement scaled
// by its inverse root diagonal. Throws Degenerate if a Schur diagonal is <= the pivot floor.
template <FieldScalar T>
Matrix<T> partial_corr_from_schur(const Matrix<T>& r, std::size_t conditioned);

// ln det S from its Cholesky factor. For quaternion matrices this is the log of the
// square root of the determinant of the 2N x 2N complex representation.
template <FieldScalar T>
double log_det(const CholeskyFactor<T>& l);

// ln det of a Hermitian matrix through a Cholesky factorisation without the relative pivot
// floor; -inf as soon as a pivot is <= 0. For statistics over matrices that are positive
// definite by construction but may be numerically close to singular.
template <FieldScalar T>
double log_det_hermitian(const Matrix<T>& s);

struct Validity {
  bool ok = false;
  std::string reason;
  explicit operator bool() const noexcept { return ok; }
};

// Unit diagonal to kUnitDiagonalTol, Hermitian, and Cholesky with every pivot above the floor.
template <FieldScalar T>
Validity is_valid_correlation(const Matrix<T>& m);

// Correlation matrix: Hermitian, positive definite, unit diagonal.
template <FieldScalar T>
class CorrelationMatrix {
 public:
  // Throws InvalidInput naming the violated condition.
  static CorrelationMatrix validated(Matrix<T> m) {
    if (auto v = is_valid_correlation(m); !v) throw InvalidInput(v.reason);
    return CorrelationMatrix(std::move(m));
  }
  // For constructions that are valid by design (gram of a unit-row factor). Diagonal is
  // snapped to exactly 1.
  static CorrelationMatrix adopt(Matrix<T> m) {
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, i) = T(1.0);
    return CorrelationMatrix(std::move(m));
  }

  std::size_t dim() const noexcept { return m_.rows(); }
  const Matrix<T>& matrix() const noexcept { return m_; }
  const T& operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  explicit CorrelationMatrix(Matrix<T> m) : m_(std::move(m)) {}
  Matrix<T> m_;
};

}  // namespace corrlab
