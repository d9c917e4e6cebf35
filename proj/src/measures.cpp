#include "corrlab/measures.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "corrlab/error.hpp"
#include "corrlab/special_math.hpp"

namespace corrlab {
namespace {

using special::digamma;
using special::log_beta;
using special::log_gamma;

void require_matching(const AngleSet& angles, const DensityParams& params) {
  if (angles.field() != params.field || angles.dim() != params.dim)
    throw UsageError("angle set does not match the density parameters (field or dimension)");
}

// Argument x_{k,l} = a + (beta k + 1 - l)/2 of the k-th block of beta-function factors.
double block_argument(double a, int beta, std::size_t k, int l) {
  return a + 0.5 * (beta * static_cast<double>(k) + 1.0 - l);
}

}  // namespace

void DensityParams::validate() const {
  if (!std::isfinite(a) || !(a > -1.0))
    throw DomainError("determinant exponent a must exceed -1, got " + std::to_string(a));
  if (dim == 0) throw UsageError("dimension must be at least 1");
}

double angle_exponent(std::size_t row, std::size_t slot, const DensityParams& params) {
  const int beta = params.beta();
  if (row == 0 || row >= params.dim || slot >= static_cast<std::size_t>(beta) * row)
    throw UsageError("angle_exponent: (row " + std::to_string(row) + ", slot " + std::to_string(slot) +
                     ") out of range");
  return 2.0 * params.a + beta * static_cast<double>(params.dim - 1) - static_cast<double>(slot);
}

double log_jacobian_hyperspherical(const AngleSet& angles) {
  const DensityParams zero{0.0, angles.field(), angles.dim()};
  double acc = 0.0;
  for (std::size_t j = 1; j < angles.dim(); ++j) {
    auto theta = angles.row(j);
    for (std::size_t p = 0; p < theta.size(); ++p) acc += angle_exponent(j, p, zero) * std::log(std::sin(theta[p]));
  }
  return acc;
}

double jacobian_hyperspherical(const AngleSet& angles) { return std::exp(log_jacobian_hyperspherical(angles)); }

double log_jacobian_partials(const PartialCorrelationTable<double>& table) {
  const std::size_t n = table.dim();
  double acc = 0.0;
  for (std::size_t j = 1; j < n; ++j)
    for (std::size_t k = 0; k < j; ++k) {
      const double rho = table(j, k);
      if (!(std::abs(rho) < 1.0)) throw DomainError("partial correlation outside (-1, 1)");
      const double power = 0.5 * (static_cast<double>(n) - static_cast<double>(k) - 2.0);
      const double m = std::abs(rho);
      if (power != 0.0) acc += power * std::log((1.0 - m) * (1.0 + m));
    }
  return acc;
}

double jacobian_partials(const PartialCorrelationTable<double>& table) { return std::exp(log_jacobian_partials(table)); }

double log_det_from_angles(const AngleSet& angles) {
  double acc = 0.0;
  for (double t : angles.values()) acc += std::log(std::sin(t));
  return 2.0 * acc;
}

double log_normalisation(const DensityParams& params, NormalisationForm form) {
  params.validate();
  const double a = params.a;
  const int beta = params.beta();
  const std::size_t n = params.dim;
  const double log_pi = std::log(std::numbers::pi);
  double acc = 0.0;
  switch (form) {
    case NormalisationForm::beta_product:
      for (std::size_t k = 1; k < n; ++k) {
        double block = 0.0;
        for (int s = 0; s < beta; ++s) block += log_beta(block_argument(a, beta, k, s), 0.5);
        acc += static_cast<double>(k) * block;
      }
      break;
    case NormalisationForm::gamma_ratio:
      for (std::size_t k = 1; k < n; ++k) {
        const double kk = static_cast<double>(k);
        acc += kk * (0.5 * beta * log_pi + log_gamma(a + 0.5 * beta * (kk - 1.0) + 1.0) -
                     log_gamma(a + 0.5 * beta * kk + 1.0));
      }
      break;
    case NormalisationForm::telescoped: {
      const double nn = static_cast<double>(n);
      acc = 0.25 * beta * (nn - 1.0) * nn * log_pi;
      if (n > 1) acc -= (nn - 1.0) * log_gamma(a + 0.5 * beta * (nn - 1.0) + 1.0);
      for (std::size_t k = 1; k < n; ++k) acc += log_gamma(a + 0.5 * beta * (static_cast<double>(k) - 1.0) + 1.0);
      break;
    }
  }
  return acc;
}

double log_volume(std::size_t dim, Field field) { return log_normalisation({0.0, field, dim}); }

double log_volume_partial_correlation_form(std::size_t dim) {
  if (dim == 0) throw UsageError("dimension must be at least 1");
  double acc = 0.0;
  for (std::size_t j = 2; j <= dim; ++j) {
    const double jm1 = static_cast<double>(j - 1);
    const double half = 0.5 * static_cast<double>(j);
    acc += jm1 * jm1 * std::numbers::ln2 + jm1 * log_beta(half, half);
  }
  return acc;
}

double log_pd_probability(std::size_t dim, Field field) {
  const double coords = static_cast<double>(AngleSet::count(beta_of(field), dim));
  return log_volume(dim, field) - coords * std::numbers::ln2;
}

double log_density(const AngleSet& angles, const DensityParams& params) {
  require_matching(angles, params);
  const double log_c = log_normalisation(params);
  double acc = 0.0;
  for (std::size_t j = 1; j < angles.dim(); ++j) {
    auto theta = angles.row(j);
    for (std::size_t p = 0; p < theta.size(); ++p) acc += angle_exponent(j, p, params) * std::log(std::sin(theta[p]));
  }
  return acc - log_c;
}

double log_marginal_pdf(double rho, const DensityParams& params) {
  params.validate();
  if (params.dim < 2) throw UsageError("marginal_pdf needs dimension >= 2");
  if (!(std::abs(rho) < 1.0)) throw DomainError("marginal_pdf: |rho| must be < 1");
  const double e = 2.0 * params.a + params.beta() * static_cast<double>(params.dim - 1);
  return 0.5 * (e - 1.0) * std::log1p(-rho * rho) - log_beta(0.5 * (e + 1.0), 0.5);
}

double marginal_pdf(double rho, const DensityParams& params) { return std::exp(log_marginal_pdf(rho, params)); }

double log_det_moment(double s, const DensityParams& params) {
  params.validate();
  if (!std::isfinite(s) || !(params.a + s > -1.0))
    throw DomainError("det moment needs a + s > -1, got a + s = " + std::to_string(params.a + s));
  if (s == 0.0) return 0.0;
  const int beta = params.beta();
  double acc = 0.0;
  for (std::size_t k = 1; k < params.dim; ++k) {
    double block = 0.0;
    for (int l = 0; l < beta; ++l) {
      const double x = block_argument(params.a, beta, k, l);
      block += log_beta(x + s, 0.5) - log_beta(x, 0.5);
    }
    acc += static_cast<double>(k) * block;
  }
  return acc;
}

double expected_log_det(const DensityParams& params) {
  params.validate();
  const int beta = params.beta();
  double acc = 0.0;
  for (std::size_t k = 1; k < params.dim; ++k) {
    double block = 0.0;
    for (int l = 0; l < beta; ++l) {
      const double x = block_argument(params.a, beta, k, l);
      block += digamma(x) - digamma(x + 0.5);
    }
    acc += static_cast<double>(k) * block;
  }
  return acc;
}

}  // namespace corrlab
