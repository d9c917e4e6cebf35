#pragma once

// Closed-form measure quantities for the (det R)^a family on N x N correlation matrices over
// R, C, H (beta = 1, 2, 4). Everything that can overflow is returned as a logarithm.
//
// In angle coordinates the density-weighted volume form is prod sin(theta_jp)^e_p with
//   e_p = 2a + beta (N - 1) - p     (slot p, 0-based, of any row),
// so the angles are independent and every constant below is a product of
//   integral_0^pi sin^e = B((e + 1) / 2, 1 / 2).

#include <cstddef>

#include "corrlab/field.hpp"
#include "corrlab/parametrisation.hpp"

namespace corrlab {

struct DensityParams {
  double a = 0.0;
  Field field = Field::real;
  std::size_t dim = 2;

  int beta() const noexcept { return beta_of(field); }
  // Throws DomainError unless a > -1 (and finite), UsageError if dim == 0.
  void validate() const;
};

// Exponent of sin(theta) for slot `slot` (0-based) of factor row `row` (0-based, 1..N-1).
// Throws UsageError for out-of-range indices.
double angle_exponent(std::size_t row, std::size_t slot, const DensityParams& params);

// |J| of the map angles -> independent real coordinates of the strict lower triangle of R.
double log_jacobian_hyperspherical(const AngleSet& angles);
double jacobian_hyperspherical(const AngleSet& angles);

// |J| of {rho_jk} -> {rho_jk|1..k-1} (real only): prod (1 - rho^2)^{(N - k - 1)/2}, k 1-based.
double log_jacobian_partials(const PartialCorrelationTable<double>& table);
double jacobian_partials(const PartialCorrelationTable<double>& table);

// ln det R = 2 sum ln sin(theta).
double log_det_from_angles(const AngleSet& angles);

// The three equivalent closed forms of the normalisation constant.
enum class NormalisationForm {
  beta_product,  // prod_k prod_{s<beta} B(a + (beta k + 1 - s)/2, 1/2)^k
  gamma_ratio,   // prod_k (pi^{beta/2} Gamma(a + beta(k-1)/2 + 1) / Gamma(a + beta k/2 + 1))^k
  telescoped,    // pi^{beta N(N-1)/4} prod_k Gamma(a + beta(k-1)/2 + 1) / Gamma(a + beta(N-1)/2 + 1)^{N-1}
};

// ln C_{a,N}: integral of (det R)^a over the correlation matrices (Lebesgue measure on the
// beta N(N-1)/2 real off-diagonal coordinates).
double log_normalisation(const DensityParams& params, NormalisationForm form = NormalisationForm::beta_product);

// ln vol of the set of N x N correlation matrices = ln C_{0,N}.
double log_volume(std::size_t dim, Field field);
// Real only: sum_{j=2}^N (j-1)^2 ln 2 + (j-1) ln B(j/2, j/2), the partial-correlation form.
double log_volume_partial_correlation_form(std::size_t dim);
// ln P(positive definite) when each real off-diagonal component is uniform on (-1, 1).
double log_pd_probability(std::size_t dim, Field field);

// ln of the density w.r.t. Lebesgue measure on the angle box.
double log_density(const AngleSet& angles, const DensityParams& params);

// Density of the real part of one off-diagonal entry:
//   (1 - rho^2)^{(e-1)/2} / B((e+1)/2, 1/2),  e = 2a + beta (N - 1).
// Requires N >= 2 and |rho| < 1 (DomainError otherwise).
double log_marginal_pdf(double rho, const DensityParams& params);
double marginal_pdf(double rho, const DensityParams& params);

// ln E[(det R)^s]. Requires a + s > -1.
double log_det_moment(double s, const DensityParams& params);

// E[ln det R] = sum over slots of Psi((e+1)/2) - Psi(e/2 + 1).
double expected_log_det(const DensityParams& params);

}  // namespace corrlab
