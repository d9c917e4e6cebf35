#pragma once

// Exact samplers for the (det R)^a family and the two reference constructions (Gaussian data
// matrix, uniform off-diagonal entries).

#include <cstddef>

#include "corrlab/algebra.hpp"
#include "corrlab/measures.hpp"
#include "corrlab/parametrisation.hpp"
#include "corrlab/random.hpp"

namespace corrlab {

// theta on (0, pi) with density proportional to sin(theta)^k, k > -1. With
// u ~ Beta((k+1)/2, (k+1)/2), theta = arccos(1 - 2u) = 2 atan(sqrt(u / (1 - u))); the ratio
// is formed from two log-gamma variates.
double sample_sin_power(double k, RandomStream& rng);

// Independent angles, slot p of every row drawn with exponent angle_exponent(row, p, params).
AngleSet sample_angles(const DensityParams& params, RandomStream& rng);

// gram(angles_to_cholesky(sample_angles(params))). Field of T must match params.field.
template <FieldScalar T>
CorrelationMatrix<T> sample_correlation(const DensityParams& params, RandomStream& rng);

struct GaussianConstructionParams {
  std::size_t samples = 3;  // rows of the data matrix, >= dim
  std::size_t dim = 2;
  Field field = Field::real;

  // a = (beta/2)(n - N + 1 - 2/beta)
  double implied_a() const noexcept {
    const double beta = beta_of(field);
    return 0.5 * beta * (static_cast<double>(samples) - static_cast<double>(dim) + 1.0 - 2.0 / beta);
  }
  // Throws DomainError if samples < dim.
  void validate() const;
};

// Normalised Gram matrix D Y^dagger Y D of a samples x dim matrix Y of standard field Gaussians
// (each real component an independent N(0, 1)).
template <FieldScalar T>
CorrelationMatrix<T> gaussian_construction(const GaussianConstructionParams& params, RandomStream& rng);

// rows x cols matrix of standard field Gaussians: every real component an independent N(0, 1),
// drawn row by row.
template <FieldScalar T>
Matrix<T> gaussian_matrix(std::size_t rows, std::size_t cols, RandomStream& rng);

// D Y^dagger Y D with D the inverse root diagonal of Y^dagger Y. Throws Degenerate if a column
// of Y is zero.
template <FieldScalar T>
CorrelationMatrix<T> normalised_gram(const Matrix<T>& y);

// Unit diagonal, each real component of each strictly lower entry uniform on (-1, 1), Hermitian
// completion. Not necessarily positive definite.
template <FieldScalar T>
Matrix<T> uniform_candidate(std::size_t dim, RandomStream& rng);

}  // namespace corrlab
