#include "corrlab/sampling.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "corrlab/error.hpp"

namespace corrlab {

double RandomStream::log_gamma_variate(double shape) {
  if (shape >= 1.0) return std::log(std::gamma_distribution<double>(shape)(*this));
  const double boosted = std::log(std::gamma_distribution<double>(shape + 1.0)(*this));
  return boosted + std::log(uniform()) / shape;
}

double sample_sin_power(double k, RandomStream& rng) {
  if (!std::isfinite(k) || !(k > -1.0))
    throw DomainError("sample_sin_power: exponent must exceed -1, got " + std::to_string(k));
  const double shape = 0.5 * (k + 1.0);
  const double lx = rng.log_gamma_variate(shape);
  const double ly = rng.log_gamma_variate(shape);
  const double theta = 2.0 * std::atan(std::exp(0.5 * (lx - ly)));
  constexpr double lo = std::numeric_limits<double>::denorm_min();
  const double hi = std::nextafter(std::numbers::pi, 0.0);
  return theta < lo ? lo : (theta > hi ? hi : theta);
}

AngleSet sample_angles(const DensityParams& params, RandomStream& rng) {
  params.validate();
  AngleSet out(params.field, params.dim);
  for (std::size_t j = 1; j < params.dim; ++j) {
    auto theta = out.row(j);
    for (std::size_t p = 0; p < theta.size(); ++p) theta[p] = sample_sin_power(angle_exponent(j, p, params), rng);
  }
  return out;
}

template <FieldScalar T>
CorrelationMatrix<T> sample_correlation(const DensityParams& params, RandomStream& rng) {
  if (params.field != ScalarTraits<T>::field) throw UsageError("sample_correlation: field mismatch");
  return CorrelationMatrix<T>::adopt(gram(angles_to_cholesky<T>(sample_angles(params, rng))));
}

void GaussianConstructionParams::validate() const {
  if (dim == 0) throw UsageError("dimension must be at least 1");
  if (samples < dim)
    throw DomainError("Gaussian construction needs at least as many samples (" + std::to_string(samples) +
                      ") as variables (" + std::to_string(dim) + ")");
}

template <FieldScalar T>
CorrelationMatrix<T> gaussian_construction(const GaussianConstructionParams& params, RandomStream& rng) {
  params.validate();
  if (params.field != ScalarTraits<T>::field) throw UsageError("gaussian_construction: field mismatch");
  const Matrix<T> y = gaussian_matrix<T>(params.samples, params.dim, rng);
  return normalised_gram(y);
}

template <FieldScalar T>
Matrix<T> gaussian_matrix(std::size_t rows, std::size_t cols, RandomStream& rng) {
  constexpr int beta = ScalarTraits<T>::beta;
  Matrix<T> y(rows, cols);
  double comps[4];
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      for (int s = 0; s < beta; ++s) comps[s] = rng.normal();
      y(i, j) = ScalarTraits<T>::from_components(std::span<const double>(comps, beta));
    }
  return y;
}

template <FieldScalar T>
CorrelationMatrix<T> normalised_gram(const Matrix<T>& y) {
  Matrix<T> sigma = gram_rows(adjoint(y));
  std::vector<double> inv_root(sigma.rows());
  for (std::size_t j = 0; j < sigma.rows(); ++j) {
    const double d = real_part(sigma(j, j));
    if (!(d > 0.0)) throw Degenerate("normalised_gram: column " + std::to_string(j + 1) + " is zero");
    inv_root[j] = 1.0 / std::sqrt(d);
  }
  for (std::size_t k = 0; k < sigma.cols(); ++k)
    for (std::size_t j = 0; j < sigma.rows(); ++j) sigma(j, k) = sigma(j, k) * (inv_root[j] * inv_root[k]);
  return CorrelationMatrix<T>::adopt(std::move(sigma));
}

template <FieldScalar T>
Matrix<T> uniform_candidate(std::size_t dim, RandomStream& rng) {
  constexpr int beta = ScalarTraits<T>::beta;
  Matrix<T> m = Matrix<T>::identity(dim);
  double comps[4];
  for (std::size_t j = 0; j < dim; ++j)
    for (std::size_t i = j + 1; i < dim; ++i) {
      for (int s = 0; s < beta; ++s) comps[s] = 2.0 * rng.uniform() - 1.0;
      m(i, j) = ScalarTraits<T>::from_components(std::span<const double>(comps, beta));
      m(j, i) = conj(m(i, j));
    }
  return m;
}

#define CORRLAB_INSTANTIATE(T)                                                                          \
  template CorrelationMatrix<T> sample_correlation<T>(const DensityParams&, RandomStream&);            \
  template CorrelationMatrix<T> gaussian_construction<T>(const GaussianConstructionParams&, RandomStream&); \
  template CorrelationMatrix<T> normalised_gram<T>(const Matrix<T>&);                                  \
  template Matrix<T> gaussian_matrix<T>(std::size_t, std::size_t, RandomStream&);                      \
  template Matrix<T> uniform_candidate<T>(std::size_t, RandomStream&);

CORRLAB_INSTANTIATE(double)
CORRLAB_INSTANTIATE(Complex)
CORRLAB_INSTANTIATE(Quaternion)

#undef CORRLAB_INSTANTIATE

}  // namespace corrlab
