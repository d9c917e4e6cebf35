#include <doctest.h>

#include <cmath>
#include <numbers>

#include <boost/math/special_functions/beta.hpp>

#include "corrlab/error.hpp"
#include "corrlab/measures.hpp"
#include "corrlab/oracles.hpp"
#include "corrlab/special_math.hpp"
#include "support.hpp"

using namespace corrlab;
using namespace corrlab::testing;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr Field kFields[] = {Field::real, Field::complex, Field::quaternion};

AngleSet angles_at(Field f, std::size_t n, const std::vector<double>& v) {
  AngleSet a(f, n);
  std::copy(v.begin(), v.end(), a.values().begin());
  return a;
}

// Integral of exp(log_density) over the angle box: the full tensor rule up to four angles,
// the product rule otherwise or when asked.
double total_mass(const DensityParams& params, bool separable = false) {
  const std::size_t dims = AngleSet(params.field, params.dim).size();
  auto logf = [&](const std::vector<double>& v) { return log_density(angles_at(params.field, params.dim, v), params); };
  if (dims <= 4 && !separable)
    return oracles::integrate_angle_box([&](const std::vector<double>& v) { return std::exp(logf(v)); }, dims);
  return oracles::integrate_angle_product(logf, dims);
}

// Literal real-case normalisation prod_{j=1}^{N-1} B(a + (j+1)/2, 1/2)^j via Boost.
double boost_real_normalisation(double a, std::size_t n) {
  double acc = 0.0;
  for (std::size_t j = 1; j < n; ++j) acc += j * std::log(boost::math::beta(a + (j + 1.0) / 2, 0.5));
  return acc;
}

}  // namespace

TEST_CASE("angle_exponent examples and range") {
  CHECK(angle_exponent(2, 0, {0.0, Field::real, 3}) == 2.0);
  CHECK(angle_exponent(1, 0, {0.0, Field::complex, 2}) == 2.0);
  CHECK(angle_exponent(1, 3, {1.0, Field::quaternion, 2}) == 3.0);
  // Jacobian exponents: N - k (real), 2N - p - 1 (complex), 4N - p - 3 (quaternion), 1-based
  for (std::size_t n = 2; n <= 6; ++n)
    for (std::size_t j = 1; j < n; ++j)
      for (std::size_t p = 0; p < 4 * j; ++p) {
        const double pp = p + 1.0;
        if (p < j) CHECK(angle_exponent(j, p, {0.0, Field::real, n}) == n - pp);
        if (p < 2 * j) CHECK(angle_exponent(j, p, {0.0, Field::complex, n}) == 2.0 * n - pp - 1);
        CHECK(angle_exponent(j, p, {0.0, Field::quaternion, n}) == 4.0 * n - pp - 3);
      }
  CHECK_THROWS_AS(angle_exponent(0, 0, {0.0, Field::real, 3}), UsageError);
  CHECK_THROWS_AS(angle_exponent(3, 0, {0.0, Field::real, 3}), UsageError);
  CHECK_THROWS_AS(angle_exponent(1, 1, {0.0, Field::real, 3}), UsageError);
  CHECK_NOTHROW(angle_exponent(1, 1, {0.0, Field::complex, 3}));
}

TEST_CASE("jacobian_hyperspherical examples") {
  CHECK(jacobian_hyperspherical(AngleSet(Field::real, 2)) == 1.0);
  CHECK(jacobian_hyperspherical(AngleSet(Field::real, 3)) == 1.0);
  const auto a = AngleSet::from_rows(Field::real, 3, {{kPi / 3}, {kPi / 3, kPi / 3}});
  CHECK(std::abs(jacobian_hyperspherical(a) - std::pow(std::sqrt(3.0) / 2, 5)) < 1e-15);
}

TEST_CASE("jacobian_hyperspherical matches the finite-difference Jacobian determinant") {
  Rng rng(41);
  for (Field f : kFields)
    for (std::size_t n = 2; n <= 4; ++n) {
      const std::size_t dims = AngleSet::count(beta_of(f), n);
      double worst = 0.0;
      for (int rep = 0; rep < 100; ++rep) {
        const AngleSet a = random_angles(f, n, rng, 0.2, kPi - 0.2);
        const double fd = oracles::log_abs_det(oracles::fd_jacobian(a), dims);
        worst = std::max(worst, std::abs(std::expm1(fd - log_jacobian_hyperspherical(a))));
      }
      INFO(to_string(f), " N=", n);
      CHECK(worst < 1e-5);
    }
}

TEST_CASE("jacobian_partials examples and chain rule") {
  CHECK(jacobian_partials(PartialCorrelationTable<double>(4)) == 1.0);
  PartialCorrelationTable<double> t(3);
  t(1, 0) = 0.5;
  t(2, 0) = 0.5;
  t(2, 1) = 0.77;
  CHECK(std::abs(jacobian_partials(t) - 0.75) < 1e-15);
  PartialCorrelationTable<double> t2(2);
  t2(1, 0) = 0.9;
  CHECK(jacobian_partials(t2) == 1.0);

  Rng rng(42);
  for (int rep = 0; rep < 200; ++rep) {
    const std::size_t n = 2 + rep % 7;
    // rho = cos(theta) fixes 1 - rho^2 only to eps / sin^2(theta)
    const AngleSet a = random_angles(Field::real, n, rng, 0.05, kPi - 0.05);
    double log_sin = 0.0;
    for (double th : a.values()) log_sin += std::log(std::sin(th));
    const double lhs = log_jacobian_hyperspherical(a);
    const double rhs = log_jacobian_partials(angles_to_partials<double>(a)) + log_sin;
    CHECK(std::abs(std::expm1(lhs - rhs)) < 1e-12);
  }
}

TEST_CASE("log_det_from_angles") {
  CHECK(log_det_from_angles(AngleSet(Field::quaternion, 5)) == 0.0);
  CHECK(std::abs(log_det_from_angles(AngleSet::from_rows(Field::real, 2, {{kPi / 3}})) - std::log(0.75)) < 1e-15);
  Rng rng(43);
  for (Field f : kFields)
    for (std::size_t n = 2; n <= 8; ++n)
      for (int rep = 0; rep < 20; ++rep) {
        const AngleSet a = random_angles_uniform_measure(f, n, rng);
        double via_factor = 0.0;
        dispatch_field(f, [&]<typename T>(std::type_identity<T>) {
          via_factor = log_det(cholesky_decompose(gram(angles_to_cholesky<T>(a))));
        });
        CHECK(std::abs(log_det_from_angles(a) - via_factor) < 1e-11);
      }
}

TEST_CASE("normalisation examples") {
  CHECK(std::abs(log_normalisation({0.0, Field::real, 2}) - std::log(2.0)) < 1e-15);
  CHECK(std::abs(log_normalisation({0.0, Field::real, 3}) - std::log(kPi * kPi / 2)) < 1e-14);
  CHECK(std::abs(log_normalisation({0.0, Field::complex, 2}) - std::log(kPi)) < 1e-14);
  CHECK(log_normalisation({0.7, Field::quaternion, 1}) == 0.0);
  CHECK_THROWS_AS(log_normalisation({-1.0, Field::real, 3}), DomainError);
  CHECK_THROWS_AS(log_normalisation({-2.0, Field::real, 3}), DomainError);
}

TEST_CASE("normalisation forms agree; real case equals the beta product with Boost") {
  for (Field f : kFields)
    for (std::size_t n = 1; n <= 10; ++n)
      for (double a : {0.0, 0.5, 1.0, 3.0, -0.5}) {
        const DensityParams p{a, f, n};
        const double b = log_normalisation(p, NormalisationForm::beta_product);
        const double g = log_normalisation(p, NormalisationForm::gamma_ratio);
        const double t = log_normalisation(p, NormalisationForm::telescoped);
        // relative agreement of C itself
        CHECK(std::abs(std::expm1(b - g)) < 1e-12);
        CHECK(std::abs(std::expm1(b - t)) < 1e-12);
        if (f == Field::real) CHECK(std::abs(std::expm1(b - boost_real_normalisation(a, n))) < 1e-12);
      }
}

TEST_CASE("normalisation is the product of per-slot sin-power integrals") {
  for (Field f : kFields)
    for (std::size_t n = 2; n <= 6; ++n)
      for (double a : {0.0, 1.0, 2.5}) {
        const DensityParams p{a, f, n};
        double acc = 0.0;
        for (std::size_t j = 1; j < n; ++j)
          for (std::size_t s = 0; s < beta_of(f) * j; ++s) acc += special::log_sin_power_integral(angle_exponent(j, s, p));
        CHECK(std::abs(std::expm1(acc - log_normalisation(p))) < 1e-12);
      }
}

TEST_CASE("log_density integrates to one by quadrature") {
  for (Field f : kFields)
    for (std::size_t n = 2; n <= 3; ++n)
      for (double a : {0.0, 1.0, 2.5}) {
        const double mass = total_mass({a, f, n});
        INFO(to_string(f), " N=", n, " a=", a);
        CHECK(std::abs(mass - 1.0) < 1e-8);
      }
}

TEST_CASE("log_density examples") {
  const DensityParams p{0.0, Field::real, 2};
  CHECK(std::abs(log_density(AngleSet(Field::real, 2), p) - std::log(0.5)) < 1e-15);
  for (Field f : kFields) {
    const DensityParams q{1.5, f, 4};
    CHECK(std::abs(log_density(AngleSet(f, 4), q) + log_normalisation(q)) < 1e-12);
  }
  CHECK_THROWS_AS(log_density(AngleSet(Field::complex, 2), p), UsageError);
  CHECK_THROWS_AS(log_density(AngleSet(Field::real, 3), p), UsageError);
}

TEST_CASE("volume and positive-definite probability") {
  CHECK(std::abs(std::exp(log_volume(2, Field::real)) - 2.0) < 1e-14);
  CHECK(std::abs(std::exp(log_volume(3, Field::real)) - kPi * kPi / 2) < 1e-13);
  CHECK(std::abs(std::exp(log_pd_probability(3, Field::real)) - kPi * kPi / 16) < 1e-14);
  CHECK(log_volume(1, Field::complex) == 0.0);
  for (std::size_t n = 2; n <= 10; ++n)
    CHECK(std::abs(std::expm1(log_volume(n, Field::real) - log_volume_partial_correlation_form(n))) < 1e-12);
  // the complex N = 2 set is the unit disk
  CHECK(std::abs(std::exp(log_volume(2, Field::complex)) - kPi) < 1e-14);
  // probabilities shrink with N and stay in (0, 1)
  for (Field f : kFields)
    for (std::size_t n = 2; n <= 8; ++n) {
      CHECK(log_pd_probability(n, f) < (f == Field::real && n == 2 ? 1e-15 : 0.0));
      CHECK(log_pd_probability(n + 1, f) < log_pd_probability(n, f));
    }
}

TEST_CASE("marginal_pdf examples, symmetry and unit mass") {
  const DensityParams real2{0.0, Field::real, 2};
  for (double r : {-0.9, -0.3, 0.0, 0.5, 0.99}) CHECK(std::abs(marginal_pdf(r, real2) - 0.5) < 1e-15);
  const DensityParams real3{0.0, Field::real, 3};
  for (double r : {-0.9, 0.0, 0.4}) CHECK(std::abs(marginal_pdf(r, real3) - 2 * std::sqrt(1 - r * r) / kPi) < 1e-15);

  for (Field f : kFields)
    for (std::size_t n = 2; n <= 6; ++n)
      for (double a : {-0.5, 0.0, 0.5, 1.0, 3.0, 10.0}) {
        const DensityParams p{a, f, n};
        // rho = cos(t) removes the endpoint singularity for a < 0
        const double mass = oracles::integrate(
            [&](double t) { return marginal_pdf(std::cos(t), p) * std::sin(t); }, 0.0, kPi, 1e-12);
        CHECK(std::abs(mass - 1.0) < 1e-8);
        CHECK(marginal_pdf(0.3, p) == marginal_pdf(-0.3, p));
      }
  CHECK_THROWS_AS(marginal_pdf(1.0, real2), DomainError);
  CHECK_THROWS_AS(marginal_pdf(0.0, {0.0, Field::real, 1}), UsageError);
}

TEST_CASE("det moment examples") {
  for (Field f : kFields) CHECK(log_det_moment(0.0, {1.0, f, 4}) == 0.0);
  CHECK(std::abs(std::exp(log_det_moment(1.0, {0.0, Field::real, 2})) - 2.0 / 3.0) < 1e-15);
  // E(1 - rho^2) with rho uniform on (-1, 1)
  CHECK(std::abs(oracles::integrate([](double r) { return 0.5 * (1 - r * r); }, -1, 1) - 2.0 / 3.0) < 1e-14);
  CHECK(std::abs(std::exp(log_det_moment(1.0, {0.0, Field::real, 3})) - 3.0 / 8.0) < 1e-15);
  CHECK_THROWS_AS(log_det_moment(-1.5, {0.0, Field::real, 3}), DomainError);
  CHECK_NOTHROW(log_det_moment(-0.5, {0.0, Field::real, 3}));
}

TEST_CASE("det moment matches quadrature of det^s against the density") {
  for (Field f : kFields)
    for (std::size_t n = 2; n <= 3; ++n)
      for (double a : {0.0, 1.0})
        for (double s : {1.0, 2.0, 0.5, -0.4}) {
          const DensityParams p{a, f, n};
          // det^s exp(log_density) = density with exponent a + s times C_{a+s} / C_a
          const double dims = static_cast<double>(AngleSet(f, n).size());
          double moment;
          // negative s leaves fractional powers of sin at the box edges, where only the
          // adaptive one-dimensional rule converges
          if (dims <= 4 && s > 0) {
            moment = oracles::integrate_angle_box(
                [&](const std::vector<double>& v) {
                  const AngleSet ang = angles_at(f, n, v);
                  double det = 0.0;
                  dispatch_field(f, [&]<typename T>(std::type_identity<T>) {
                    det = oracle_log_det(gram(angles_to_cholesky<T>(ang)));
                  });
                  return std::exp(s * det + log_density(ang, p));
                },
                static_cast<std::size_t>(dims));
          } else {
            moment = total_mass({a + s, f, n}, true) * std::exp(log_normalisation({a + s, f, n}) - log_normalisation(p));
          }
          INFO(to_string(f), " N=", n, " a=", a, " s=", s);
          CHECK(std::abs(moment / std::exp(log_det_moment(s, p)) - 1.0) < 1e-7);
        }
}

TEST_CASE("expected_log_det") {
  // Psi(1) - Psi(3/2) = 2 ln 2 - 2 = E ln(1 - rho^2) for rho uniform on (-1, 1)
  CHECK(std::abs(expected_log_det({0.0, Field::real, 2}) - (2.0 * std::numbers::ln2 - 2.0)) < 1e-14);
  // rho = cos(t)
  CHECK(std::abs(oracles::integrate([](double t) { return std::log(std::sin(t)) * std::sin(t); }, 0, kPi) -
                 (2.0 * std::numbers::ln2 - 2.0)) < 1e-10);
  for (Field f : kFields) CHECK(expected_log_det({2.0, f, 1}) == 0.0);
  const double h = 1e-5;
  for (Field f : kFields)
    for (std::size_t n = 2; n <= 6; ++n)
      for (double a : {0.0, 0.5, 2.0}) {
        const DensityParams p{a, f, n};
        const double fd = (log_det_moment(h, p) - log_det_moment(-h, p)) / (2 * h);
        CHECK(std::abs(fd - expected_log_det(p)) < 1e-8);
      }
}

TEST_CASE("integrate_angle_product") {
  auto separable = [](const std::vector<double>& v) { return 2.0 * std::log(std::sin(v[0])) + std::log(std::sin(v[1])); };
  CHECK(std::abs(oracles::integrate_angle_product(separable, 2) - kPi / 2 * 2.0) < 1e-12);
  auto coupled = [](const std::vector<double>& v) { return std::log(std::sin(v[0])) + v[0] * v[1]; };
  CHECK(std::isnan(oracles::integrate_angle_product(coupled, 2)));
}
