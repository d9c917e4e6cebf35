#include "corrlab/special_math.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "corrlab/error.hpp"

namespace corrlab::special {
namespace {

void require_positive(double x, const char* what) {
  if (!std::isfinite(x) || !(x > 0.0))
    throw DomainError(std::string(what) + ": argument must be finite and > 0, got " + std::to_string(x));
}

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,     676.5203681218851,     -1259.1392167224028,
    771.32342877765313,      -176.61502916214059,   12.507343278686905,
    -0.13857109526572012,    9.9843695780195716e-6, 1.5056327351493116e-7};

double lanczos_log_gamma(double x) {
  // valid for x >= 0.5
  const double xm1 = x - 1.0;
  double sum = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) sum += kLanczos[i] / (xm1 + static_cast<double>(i));
  const double t = xm1 + kLanczosG + 0.5;
  constexpr double half_log_two_pi = 0.91893853320467274178;
  return half_log_two_pi + (xm1 + 0.5) * std::log(t) - t + std::log(sum);
}

}  // namespace

double log_gamma(double x) {
  require_positive(x, "log_gamma");
  if (x == 1.0 || x == 2.0) return 0.0;
  if (x < 0.5) return lanczos_log_gamma(x + 1.0) - std::log(x);
  return lanczos_log_gamma(x);
}

double digamma(double x) {
  require_positive(x, "digamma");
  double shift = 0.0;
  while (x < 10.0) {
    shift -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Bernoulli tail: B_2k / (2k x^2k), k = 1..7
  const double tail =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 - inv2 * (691.0 / 32760 - inv2 * (1.0 / 12)))))));
  return shift + std::log(x) - 0.5 * inv - tail;
}

double log_beta(double a, double b) {
  require_positive(a, "beta");
  require_positive(b, "beta");
  // Sum the two smaller log-gammas first so that (a, b) and (b, a) round identically.
  const double lo = a < b ? a : b;
  const double hi = a < b ? b : a;
  return (log_gamma(lo) + log_gamma(hi)) - log_gamma(lo + hi);
}

double beta_fn(double a, double b) { return std::exp(log_beta(a, b)); }

double log_sin_power_integral(double k) {
  if (!std::isfinite(k) || !(k > -1.0))
    throw DomainError("sin_power_integral: exponent must exceed -1, got " + std::to_string(k));
  return log_beta(0.5 * (k + 1.0), 0.5);
}

double sin_power_integral(double k) { return std::exp(log_sin_power_integral(k)); }

}  // namespace corrlab::special
