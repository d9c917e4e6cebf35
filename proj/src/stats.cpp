#include "corrlab/stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include <boost/math/special_functions/gamma.hpp>

#include "corrlab/error.hpp"

namespace corrlab::stats {

Summary summarize(std::span<const double> xs) {
  Summary s;
  s.count = xs.size();
  if (xs.empty()) return s;
  double sum = 0.0;
  for (double x : xs) sum += x;
  s.mean = sum / static_cast<double>(xs.size());
  if (xs.size() > 1) {
    double ss = 0.0;
    for (double x : xs) ss += (x - s.mean) * (x - s.mean);
    const double var = ss / static_cast<double>(xs.size() - 1);
    s.std_error = std::sqrt(var / static_cast<double>(xs.size()));
  }
  return s;
}

double z_score(double estimate, double expected, double std_error) {
  if (std_error > 0.0) return (estimate - expected) / std_error;
  return estimate == expected ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), estimate - expected);
}

double kolmogorov_survival(double lambda) {
  if (lambda <= 0.0) return 1.0;
  if (lambda < 1.18) {
    // 1 - sqrt(2 pi)/lambda sum exp(-(2j-1)^2 pi^2 / (8 lambda^2))
    const double c = -std::numbers::pi * std::numbers::pi / (8.0 * lambda * lambda);
    double sum = 0.0;
    for (int j = 1; j <= 8; ++j) {
      const double odd = 2.0 * j - 1.0;
      sum += std::exp(c * odd * odd);
    }
    return std::clamp(1.0 - std::sqrt(2.0 * std::numbers::pi) / lambda * sum, 0.0, 1.0);
  }
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * lambda * lambda);
    sum += (j % 2 == 1 ? term : -term);
    if (term < 1e-300) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

namespace {

double stephens_lambda(double d, double n_eff) {
  const double rn = std::sqrt(n_eff);
  return (rn + 0.12 + 0.11 / rn) * d;
}

}  // namespace

TestResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf) {
  if (sample.empty()) throw UsageError("ks_one_sample: empty sample");
  std::sort(sample.begin(), sample.end());
  const double n = static_cast<double>(sample.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    const double f = cdf(sample[i]);
    d = std::max({d, static_cast<double>(i + 1) / n - f, f - static_cast<double>(i) / n});
  }
  return {d, kolmogorov_survival(stephens_lambda(d, n))};
}

TestResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw UsageError("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0;
  std::size_t j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  return {d, kolmogorov_survival(stephens_lambda(d, na * nb / (na + nb)))};
}

double chi_squared_cdf(double x, double dof) {
  if (x <= 0.0) return 0.0;
  return boost::math::gamma_p(0.5 * dof, 0.5 * x);
}

TestResult chi_square_gof(std::span<const std::size_t> observed, std::span<const double> probabilities) {
  if (observed.size() != probabilities.size() || observed.size() < 2)
    throw UsageError("chi_square_gof: need matching observed/probability cells, at least two");
  double total = 0.0;
  for (auto c : observed) total += static_cast<double>(c);
  double stat = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    const double expected = total * probabilities[i];
    if (!(expected > 0.0)) throw UsageError("chi_square_gof: cell with zero expected count");
    const double diff = static_cast<double>(observed[i]) - expected;
    stat += diff * diff / expected;
  }
  const double dof = static_cast<double>(observed.size() - 1);
  return {stat, boost::math::gamma_q(0.5 * dof, 0.5 * stat)};
}

}  // namespace corrlab::stats
