#pragma once

// Statistical checks used by the verification harness: moment summaries, z-scores,
// Kolmogorov-Smirnov and chi-square goodness of fit.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace corrlab::stats {

struct Summary {
  std::size_t count = 0;
  double mean = 0.0;
  double std_error = 0.0;  // sample standard deviation / sqrt(count)
};

// Summation runs in index order, so the result depends only on the data.
Summary summarize(std::span<const double> xs);

double z_score(double estimate, double expected, double std_error);

struct TestResult {
  double statistic = 0.0;
  double p_value = 1.0;
};

// P(K > lambda) for the limiting Kolmogorov distribution.
double kolmogorov_survival(double lambda);

// One-sample KS against a continuous CDF. Sorts a copy of the sample. The p-value uses the
// Stephens small-sample correction lambda = (sqrt(n) + 0.12 + 0.11/sqrt(n)) D.
TestResult ks_one_sample(std::vector<double> sample, const std::function<double(double)>& cdf);

// Two-sample KS with effective size n m / (n + m).
TestResult ks_two_sample(std::vector<double> a, std::vector<double> b);

// Pearson chi-square of observed counts against cell probabilities (which must sum to 1),
// with cells - 1 degrees of freedom.
TestResult chi_square_gof(std::span<const std::size_t> observed, std::span<const double> probabilities);

double chi_squared_cdf(double x, double dof);

}  // namespace corrlab::stats
