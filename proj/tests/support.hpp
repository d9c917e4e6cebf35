#pragma once

// Hand-rolled generators for property tests. They draw from std::mt19937_64 so the test inputs
// do not depend on the library's own random streams.

#include <array>
#include <cmath>
#include <type_traits>
#include <numbers>
#include <random>

#include "corrlab/algebra.hpp"
#include "corrlab/parametrisation.hpp"

namespace corrlab::testing {

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

template <FieldScalar T>
T random_scalar(Rng& rng, double scale = 1.0) {
  std::normal_distribution<double> normal(0.0, scale);
  double comps[4];
  for (int s = 0; s < ScalarTraits<T>::beta; ++s) comps[s] = normal(rng);
  return ScalarTraits<T>::from_components(std::span<const double>(comps, ScalarTraits<T>::beta));
}

// Angles uniform on [lo, hi] inside (0, pi).
inline AngleSet random_angles(Field field, std::size_t dim, Rng& rng, double lo = 1e-3,
                              double hi = std::numbers::pi - 1e-3) {
  AngleSet a(field, dim);
  for (double& t : a.values()) t = uniform(rng, lo, hi);
  return a;
}

// Angles distributed as the uniform measure on correlation matrices: slot p (0-based) of every
// row has density proportional to sin^{beta (N - 1) - p}, drawn by rejection from the uniform
// box. These are the typical, well-conditioned random correlation matrices.
inline AngleSet random_angles_uniform_measure(Field field, std::size_t dim, Rng& rng) {
  AngleSet a(field, dim);
  const int beta = beta_of(field);
  for (std::size_t j = 1; j < dim; ++j) {
    auto row = a.row(j);
    for (std::size_t p = 0; p < row.size(); ++p) {
      const double e = beta * static_cast<double>(dim - 1) - static_cast<double>(p);
      double t;
      do t = uniform(rng, 0.0, std::numbers::pi);
      while (!(t > 0.0) || uniform(rng, 0.0, 1.0) > std::pow(std::sin(t), e));
      row[p] = t;
    }
  }
  return a;
}

// Lower-triangular matrix with diagonal in [0.5, 1.5] and Gaussian off-diagonal entries.
template <FieldScalar T>
Matrix<T> random_lower(std::size_t n, Rng& rng, double scale = 0.5) {
  Matrix<T> l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    l(j, j) = T(uniform(rng, 0.5, 1.5));
    for (std::size_t i = j + 1; i < n; ++i) l(i, j) = random_scalar<T>(rng, scale);
  }
  return l;
}

template <FieldScalar T>
Matrix<T> random_pd(std::size_t n, Rng& rng) {
  return gram_rows(random_lower<T>(n, rng));
}

template <FieldScalar T>
Matrix<T> normalise_to_correlation(Matrix<T> s) {
  std::vector<double> inv(s.rows());
  for (std::size_t i = 0; i < s.rows(); ++i) inv[i] = 1.0 / std::sqrt(real_part(s(i, i)));
  for (std::size_t j = 0; j < s.cols(); ++j)
    for (std::size_t i = 0; i < s.rows(); ++i) s(i, j) = i == j ? T(1.0) : s(i, j) * (inv[i] * inv[j]);
  return s;
}

// Hamilton product on (1, i, j, k) components; a quaternion z + w j has components
// (z_re, z_im, w_re, w_im).
inline std::array<double, 4> hamilton(const std::array<double, 4>& p, const std::array<double, 4>& q) {
  return {p[0] * q[0] - p[1] * q[1] - p[2] * q[2] - p[3] * q[3], p[0] * q[1] + p[1] * q[0] + p[2] * q[3] - p[3] * q[2],
          p[0] * q[2] - p[1] * q[3] + p[2] * q[0] + p[3] * q[1], p[0] * q[3] + p[1] * q[2] - p[2] * q[1] + p[3] * q[0]};
}

// ln |det| of a square complex matrix by LU with partial pivoting.
inline double log_abs_det_lu(Matrix<Complex> a) {
  const std::size_t n = a.rows();
  double acc = 0.0;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    for (std::size_t r = c + 1; r < n; ++r)
      if (std::abs(a(r, c)) > std::abs(a(piv, c))) piv = r;
    if (a(piv, c) == Complex{}) return -INFINITY;
    if (piv != c)
      for (std::size_t k = 0; k < n; ++k) std::swap(a(c, k), a(piv, k));
    acc += std::log(std::abs(a(c, c)));
    for (std::size_t r = c + 1; r < n; ++r) {
      const Complex f = a(r, c) / a(c, c);
      for (std::size_t k = c; k < n; ++k) a(r, k) -= f * a(c, k);
    }
  }
  return acc;
}

template <FieldScalar T>
Matrix<Complex> to_complex(const Matrix<T>& m) {
  if constexpr (std::is_same_v<T, Quaternion>) {
    return quaternion_embed(m);
  } else {
    Matrix<Complex> out(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j)
      for (std::size_t i = 0; i < m.rows(); ++i) out(i, j) = Complex(m(i, j));
    return out;
  }
}

// ln det of a Hermitian positive definite matrix, computed independently of the Cholesky code.
// The quaternion determinant is the square root of that of the complex representation.
template <FieldScalar T>
double oracle_log_det(const Matrix<T>& m) {
  const double full = log_abs_det_lu(to_complex(m));
  return std::is_same_v<T, Quaternion> ? 0.5 * full : full;
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(a), std::abs(b)); }

}  // namespace corrlab::testing
