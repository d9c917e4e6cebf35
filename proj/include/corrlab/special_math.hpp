#pragma once

// Scalar special functions behind the closed-form constants. All functions are pure and
// re-entrant; arguments outside the domain throw corrlab::DomainError.

namespace corrlab::special {

// ln Gamma(x) for x > 0. Lanczos approximation (g = 7, 9 terms; coefficients from
// P. Godfrey's tabulation) for x >= 0.5 and the recurrence Gamma(x) = Gamma(x + 1) / x below.
double log_gamma(double x);

// Psi(x) = d/dx ln Gamma(x) for x > 0.
double digamma(double x);

// ln B(a, b), B(a, b) = Gamma(a) Gamma(b) / Gamma(a + b).
double log_beta(double a, double b);
double beta_fn(double a, double b);

// Integral of sin^k over (0, pi) = B((k + 1) / 2, 1 / 2), for k > -1.
double log_sin_power_integral(double k);
double sin_power_integral(double k);

}  // namespace corrlab::special
