#pragma once

// Independent numerical routes used to check the closed forms: finite-difference Jacobians,
// dense determinants and quadrature. None of these call the closed-form measure code.

#include <cstddef>
#include <functional>
#include <vector>

#include "corrlab/parametrisation.hpp"

namespace corrlab::oracles {

// Independent real coordinates of the strict lower triangle of R = gram(angles_to_cholesky),
// row-major (j ascending, k < j ascending), beta components per entry.
std::vector<double> lower_triangle_coordinates(const AngleSet& angles);

// Fourth-order central finite-difference Jacobian of lower_triangle_coordinates with respect to
// the angles (square, beta N(N-1)/2 on a side), stored row-major.
std::vector<double> fd_jacobian(const AngleSet& angles, double step = 1e-3);

// ln |det| of a dense row-major n x n matrix by LU with partial pivoting; -inf if singular.
double log_abs_det(std::vector<double> a, std::size_t n);

// Adaptive Gauss-Kronrod (61-point) integral of f over [lo, hi].
double integrate(const std::function<double(double)>& f, double lo, double hi, double tolerance = 1e-12);

// Tensor-product 30-point Gauss-Legendre integral of f over the box [0, pi]^dims.
double integrate_angle_box(const std::function<double(const std::vector<double>&)>& f, std::size_t dims);

// Integral over [0, pi]^dims of exp(log_f) for a product of one-angle factors, computed as
//   f(x) prod_i [integral f(x with x_i = t) dt / f(x)]
// with adaptive one-dimensional quadrature. The product structure is checked first through
// the mixed second differences of log_f; NaN if any exceeds 1e-10.
double integrate_angle_product(const std::function<double(const std::vector<double>&)>& log_f, std::size_t dims);

}  // namespace corrlab::oracles
