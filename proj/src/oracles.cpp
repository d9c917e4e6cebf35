#include "corrlab/oracles.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "corrlab/algebra.hpp"
#include "corrlab/error.hpp"

namespace corrlab::oracles {

std::vector<double> lower_triangle_coordinates(const AngleSet& angles) {
  return dispatch_field(angles.field(), [&]<class T>(std::type_identity<T>) {
    constexpr int beta = ScalarTraits<T>::beta;
    const auto r = gram(angles_to_cholesky<T>(angles));
    std::vector<double> out;
    out.reserve(angles.size());
    double comps[4];
    for (std::size_t j = 1; j < r.rows(); ++j)
      for (std::size_t k = 0; k < j; ++k) {
        ScalarTraits<T>::to_components(r(j, k), std::span<double>(comps, beta));
        out.insert(out.end(), comps, comps + beta);
      }
    return out;
  });
}

std::vector<double> fd_jacobian(const AngleSet& angles, double step) {
  const std::size_t m = angles.size();
  std::vector<double> jac(m * m);
  AngleSet probe = angles;
  auto at = [&](std::size_t c, double offset) {
    probe.values()[c] = angles.values()[c] + offset;
    return lower_triangle_coordinates(probe);
  };
  for (std::size_t c = 0; c < m; ++c) {
    const auto p2 = at(c, 2 * step);
    const auto p1 = at(c, step);
    const auto m1 = at(c, -step);
    const auto m2 = at(c, -2 * step);
    probe.values()[c] = angles.values()[c];
    for (std::size_t r = 0; r < m; ++r)
      jac[r * m + c] = (8.0 * (p1[r] - m1[r]) - (p2[r] - m2[r])) / (12.0 * step);
  }
  return jac;
}

double log_abs_det(std::vector<double> a, std::size_t n) {
  if (a.size() != n * n) throw UsageError("log_abs_det: size mismatch");
  double acc = 0.0;
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(a[r * n + col]) > std::abs(a[pivot * n + col])) pivot = r;
    const double p = a[pivot * n + col];
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    if (pivot != col)
      for (std::size_t c = 0; c < n; ++c) std::swap(a[pivot * n + c], a[col * n + c]);
    acc += std::log(std::abs(p));
    for (std::size_t r = col + 1; r < n; ++r) {
      const double f = a[r * n + col] / p;
      if (f == 0.0) continue;
      for (std::size_t c = col; c < n; ++c) a[r * n + c] -= f * a[col * n + c];
    }
  }
  return acc;
}

double integrate(const std::function<double(double)>& f, double lo, double hi, double tolerance) {
  return boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, lo, hi, 15, tolerance);
}

namespace {

double box_recurse(const std::function<double(const std::vector<double>&)>& f, std::vector<double>& point,
                   std::size_t level) {
  using rule = boost::math::quadrature::gauss<double, 30>;
  if (level == point.size()) return f(point);
  auto inner = [&](double x) {
    point[level] = x;
    return box_recurse(f, point, level + 1);
  };
  return rule::integrate(inner, 0.0, std::numbers::pi);
}

}  // namespace

double integrate_angle_box(const std::function<double(const std::vector<double>&)>& f, std::size_t dims) {
  std::vector<double> point(dims);
  return box_recurse(f, point, 0);
}

double integrate_angle_product(const std::function<double(const std::vector<double>&)>& log_f, std::size_t dims) {
  if (dims == 0) return std::exp(log_f({}));
  // deterministic base point and probes in the interior
  std::vector<double> base(dims);
  for (std::size_t i = 0; i < dims; ++i) base[i] = 0.4 + 2.3 * std::fmod(0.6180339887498949 * (i + 1), 1.0);
  const double f0 = log_f(base);
  for (std::size_t i = 0; i < dims; ++i)
    for (std::size_t k = i + 1; k < dims; ++k) {
      auto xi = base, xk = base, xik = base;
      const double ti = std::numbers::pi - base[i], tk = std::numbers::pi - 0.5 * base[k];
      xi[i] = xik[i] = ti;
      xk[k] = xik[k] = tk;
      if (std::abs(log_f(xik) - log_f(xi) - log_f(xk) + f0) > 1e-10) return std::numeric_limits<double>::quiet_NaN();
    }
  double log_total = f0;
  for (std::size_t i = 0; i < dims; ++i) {
    const double ratio = integrate(
        [&](double t) {
          auto y = base;
          y[i] = t;
          return std::exp(log_f(y) - f0);
        },
        0.0, std::numbers::pi, 1e-13);
    log_total += std::log(ratio);
  }
  return std::exp(log_total);
}

}  // namespace corrlab::oracles
