#include "corrlab/parametrisation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "corrlab/error.hpp"

namespace corrlab {
namespace {

constexpr double kUnderflow = 1e-300;

std::size_t row_offset(int beta, std::size_t j) { return static_cast<std::size_t>(beta) * j * (j - 1) / 2; }

template <FieldScalar T>
void require_field(const AngleSet& angles) {
  if (angles.field() != ScalarTraits<T>::field)
    throw UsageError("angle set over " + std::string(to_string(angles.field())) + " used for a " +
                     std::string(to_string(ScalarTraits<T>::field)) + " matrix");
}

}  // namespace

AngleSet::AngleSet(Field field, std::size_t dim)
    : field_(field), dim_(dim), values_(count(beta_of(field), dim), std::numbers::pi / 2) {
  if (dim == 0) throw UsageError("AngleSet: dimension must be at least 1");
}

AngleSet AngleSet::from_rows(Field field, std::size_t dim, const std::vector<std::vector<double>>& rows) {
  AngleSet out(field, dim);
  if (rows.size() != dim - 1)
    throw UsageError("angle set of dimension " + std::to_string(dim) + " needs " + std::to_string(dim - 1) + " rows");
  for (std::size_t j = 1; j < dim; ++j) {
    const auto& src = rows[j - 1];
    auto dst = out.row(j);
    if (src.size() != dst.size())
      throw UsageError("angle row " + std::to_string(j + 1) + " must hold " + std::to_string(dst.size()) + " angles");
    std::copy(src.begin(), src.end(), dst.begin());
  }
  out.validate();
  return out;
}

std::span<const double> AngleSet::row(std::size_t j) const {
  if (j == 0 || j >= dim_) throw UsageError("angle row index out of range");
  return std::span<const double>(values_).subspan(row_offset(beta(), j), static_cast<std::size_t>(beta()) * j);
}

std::span<double> AngleSet::row(std::size_t j) {
  if (j == 0 || j >= dim_) throw UsageError("angle row index out of range");
  return std::span<double>(values_).subspan(row_offset(beta(), j), static_cast<std::size_t>(beta()) * j);
}

std::vector<std::vector<double>> AngleSet::rows() const {
  std::vector<std::vector<double>> out;
  for (std::size_t j = 1; j < dim_; ++j) {
    auto r = row(j);
    out.emplace_back(r.begin(), r.end());
  }
  return out;
}

void AngleSet::validate() const {
  for (double t : values_)
    if (!(t > 0.0 && t < std::numbers::pi)) throw InvalidInput("angle out of open range (0, pi): " + std::to_string(t));
}

template <FieldScalar T>
CholeskyFactor<T> angles_to_cholesky(const AngleSet& angles) {
  require_field<T>(angles);
  constexpr int beta = ScalarTraits<T>::beta;
  const std::size_t n = angles.dim();
  Matrix<T> l(n, n);
  l(0, 0) = T(1.0);
  std::vector<double> coords;
  for (std::size_t j = 1; j < n; ++j) {
    auto theta = angles.row(j);
    coords.assign(theta.size() + 1, 0.0);
    double running = 1.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      coords[i] = std::cos(theta[i]) * running;
      running *= std::sin(theta[i]);
    }
    coords.back() = running;
    for (std::size_t k = 0; k < j; ++k)
      l(j, k) = ScalarTraits<T>::from_components(std::span<const double>(coords).subspan(beta * k, beta));
    l(j, j) = T(running);
  }
  return CholeskyFactorAccess::adopt(std::move(l));
}

template <FieldScalar T>
AngleSet cholesky_to_angles(const CholeskyFactor<T>& l) {
  constexpr int beta = ScalarTraits<T>::beta;
  const std::size_t n = l.dim();
  AngleSet out(ScalarTraits<T>::field, n);
  if (std::abs(l.diagonal(0) - 1.0) > 1e-8) throw InvalidInput("factor row 1 does not have unit norm");
  std::vector<double> coords;
  std::vector<double> tail;
  for (std::size_t j = 1; j < n; ++j) {
    const std::size_t m = static_cast<std::size_t>(beta) * j;
    coords.assign(m + 1, 0.0);
    for (std::size_t k = 0; k < j; ++k)
      ScalarTraits<T>::to_components(l(j, k), std::span<double>(coords).subspan(beta * k, beta));
    coords[m] = l.diagonal(j);
    // tail[i] = |(c_i, ..., c_m)|
    tail.assign(m + 2, 0.0);
    for (std::size_t i = m + 1; i-- > 0;) tail[i] = std::hypot(tail[i + 1], coords[i]);
    if (std::abs(tail[0] - 1.0) > 1e-8)
      throw InvalidInput("factor row " + std::to_string(j + 1) + " does not have unit norm");
    auto theta = out.row(j);
    for (std::size_t i = 0; i < m; ++i)
      theta[i] = tail[i] < kUnderflow ? std::numbers::pi / 2 : std::atan2(tail[i + 1], coords[i]);
  }
  return out;
}

template <FieldScalar T>
CholeskyFactor<T> partials_to_cholesky(const PartialCorrelationTable<T>& table) {
  const std::size_t n = table.dim();
  Matrix<T> l(n, n);
  l(0, 0) = T(1.0);
  for (std::size_t j = 1; j < n; ++j) {
    double running = 1.0;
    for (std::size_t k = 0; k < j; ++k) {
      const T& rho = table(j, k);
      const double r2 = norm2(rho);
      if (!(r2 < 1.0)) throw DomainError("partial correlation of modulus >= 1 at (" + std::to_string(j + 1) + ", " +
                                         std::to_string(k + 1) + ")");
      const double m = std::sqrt(r2);
      l(j, k) = rho * running;
      // (1 - m)(1 + m) keeps relative accuracy as m approaches 1
      running *= std::sqrt((1.0 - m) * (1.0 + m));
    }
    l(j, j) = T(running);
  }
  return CholeskyFactorAccess::adopt(std::move(l));
}

template <FieldScalar T>
PartialCorrelationTable<T> angles_to_partials(const AngleSet& angles) {
  require_field<T>(angles);
  constexpr int beta = ScalarTraits<T>::beta;
  const std::size_t n = angles.dim();
  PartialCorrelationTable<T> table(n);
  for (std::size_t j = 1; j < n; ++j) {
    auto theta = angles.row(j);
    for (std::size_t k = 0; k < j; ++k) {
      double comps[4] = {};
      double running = 1.0;
      for (int s = 0; s < beta; ++s) {
        const double t = theta[beta * k + s];
        comps[s] = std::cos(t) * running;
        running *= std::sin(t);
      }
      table(j, k) = ScalarTraits<T>::from_components(std::span<const double>(comps, beta));
    }
  }
  return table;
}

template <FieldScalar T>
PartialCovarianceTable<T> partial_cov_recursion(const Matrix<T>& s) {
  if (!s.square() || s.rows() == 0) throw UsageError("partial_cov_recursion: matrix must be square and non-empty");
  const std::size_t n = s.rows();
  double max_diag = 0.0;
  for (std::size_t i = 0; i < n; ++i) max_diag = std::max(max_diag, real_part(s(i, i)));
  const double floor = kPivotFloor * max_diag;

  std::vector<Matrix<T>> levels;
  levels.reserve(n);
  levels.push_back(s);
  for (std::size_t c = 0; c + 1 < n; ++c) {
    const Matrix<T>& prev = levels.back();
    const double pivot = real_part(prev(0, 0));
    if (!(pivot > floor))
      throw Degenerate("partial variance of variable " + std::to_string(c + 1) + " vanishes; recursion cannot continue");
    const std::size_t m = prev.rows() - 1;
    Matrix<T> next(m, m);
    for (std::size_t k = 0; k < m; ++k)
      for (std::size_t j = 0; j < m; ++j) next(j, k) = prev(j + 1, k + 1) - prev(j + 1, 0) * prev(0, k + 1) / pivot;
    for (std::size_t j = 0; j < m; ++j) next(j, j) = T(real_part(next(j, j)));
    levels.push_back(std::move(next));
  }
  return PartialCovarianceTable<T>(std::move(levels));
}

template <FieldScalar T>
PartialCorrelationLevels<T> partial_corr_recursion(const Matrix<T>& r) {
  if (!r.square() || r.rows() == 0) throw UsageError("partial_corr_recursion: matrix must be square and non-empty");
  const std::size_t n = r.rows();
  for (std::size_t i = 0; i < n; ++i)
    if (std::sqrt(norm2(T(r(i, i) - T(1.0)))) > kUnitDiagonalTol)
      throw InvalidInput("partial_corr_recursion: diagonal entry " + std::to_string(i + 1) + " is not 1");

  std::vector<Matrix<T>> levels;
  levels.reserve(n);
  if constexpr (std::is_same_v<T, double>) {
    levels.push_back(r);
    for (std::size_t c = 0; c + 1 < n; ++c) {
      const Matrix<double>& prev = levels.back();
      const std::size_t m = prev.rows() - 1;
      std::vector<double> root(m);
      for (std::size_t j = 0; j < m; ++j) {
        const double rho = prev(j + 1, 0);
        if (1.0 - std::abs(rho) <= 1e-12)
          throw Degenerate("partial correlation of variables " + std::to_string(c + j + 2) + " and " +
                           std::to_string(c + 1) + " has modulus 1");
        root[j] = std::sqrt((1.0 - rho) * (1.0 + rho));
      }
      Matrix<double> next(m, m);
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < m; ++j)
          next(j, k) = j == k ? 1.0 : (prev(j + 1, k + 1) - prev(j + 1, 0) * prev(0, k + 1)) / (root[j] * root[k]);
      levels.push_back(std::move(next));
    }
  } else {
    const auto cov = partial_cov_recursion(r);
    for (std::size_t c = 0; c < n; ++c) {
      Matrix<T> level = cov.level(c);
      const std::size_t m = level.rows();
      std::vector<double> root(m);
      for (std::size_t j = 0; j < m; ++j) root[j] = std::sqrt(real_part(level(j, j)));
      for (std::size_t k = 0; k < m; ++k)
        for (std::size_t j = 0; j < m; ++j) level(j, k) = j == k ? T(1.0) : level(j, k) / (root[j] * root[k]);
      levels.push_back(std::move(level));
    }
  }
  return PartialCorrelationLevels<T>(std::move(levels));
}

#define CORRLAB_INSTANTIATE(T)                                                                   \
  template CholeskyFactor<T> angles_to_cholesky<T>(const AngleSet&);                           \
  template AngleSet cholesky_to_angles<T>(const CholeskyFactor<T>&);                           \
  template CholeskyFactor<T> partials_to_cholesky<T>(const PartialCorrelationTable<T>&);       \
  template PartialCorrelationTable<T> angles_to_partials<T>(const AngleSet&);                  \
  template PartialCovarianceTable<T> partial_cov_recursion<T>(const Matrix<T>&);               \
  template PartialCorrelationLevels<T> partial_corr_recursion<T>(const Matrix<T>&);

CORRLAB_INSTANTIATE(double)
CORRLAB_INSTANTIATE(Complex)
CORRLAB_INSTANTIATE(Quaternion)

#undef CORRLAB_INSTANTIATE

}  // namespace corrlab
