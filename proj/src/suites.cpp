#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "corrlab/harness.hpp"
#include "corrlab/measures.hpp"
#include "corrlab/oracles.hpp"
#include "corrlab/parallel.hpp"
#include "corrlab/sampling.hpp"
#include "corrlab/special_math.hpp"
#include "corrlab/stats.hpp"

namespace corrlab::harness {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kZLimit = 3.0;
constexpr double kPLimit = 0.001;
constexpr Field kAllFields[] = {Field::real, Field::complex, Field::quaternion};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt(double x) {
  std::ostringstream os;
  os << x;
  return os.str();
}

std::string field_name(Field f) { return std::string(corrlab::to_string(f)); }

std::string point_name(Field f, std::size_t n, double a) {
  return field_name(f) + "/N=" + std::to_string(n) + "/a=" + fmt(a);
}

class Context {
 public:
  Context(const ExperimentConfig& cfg, std::uint64_t seed, unsigned workers)
      : cfg_(cfg), seed_(seed), workers_(workers) {}

  const ExperimentConfig& cfg() const { return cfg_; }

  std::vector<Field> fields() const {
    if (cfg_.field) return {*cfg_.field};
    return {std::begin(kAllFields), std::end(kAllFields)};
  }
  std::vector<std::size_t> dims(std::vector<std::size_t> defaults) const {
    if (cfg_.dim) return {*cfg_.dim};
    return defaults;
  }
  std::vector<double> as(std::vector<double> defaults) const {
    if (cfg_.a) return {*cfg_.a};
    return defaults;
  }
  std::size_t trials(std::size_t fallback) const { return cfg_.trials.value_or(fallback); }
  std::size_t max_n(std::size_t fallback) const { return cfg_.max_n.value_or(fallback); }
  // Dimension of trial t: the configured one, else cycling through 2..max_n.
  std::size_t trial_dim(std::size_t t, std::size_t max_n) const {
    if (cfg_.dim) return *cfg_.dim;
    return 2 + t % (max_n - 1);
  }

  // Runs f(rng, t) for every trial on its own substream and returns the results in trial order.
  template <class R, class F>
  std::vector<R> run_trials(std::size_t count, F&& f) {
    const std::uint64_t experiment = ++experiments_;
    std::vector<R> out(count);
    parallel_for(count, workers_, [&](std::size_t t) {
      RandomStream rng(seed_, substream(experiment, t));
      out[t] = f(rng, t);
    });
    return out;
  }

  void add(Record r, Clock::time_point t0) {
    r.duration_s = seconds_since(t0);
    records_.push_back(std::move(r));
  }

  void z_test(std::string name, double closed_form, std::span<const double> xs, Clock::time_point t0) {
    const stats::Summary s = stats::summarize(xs);
    Record r;
    r.name = std::move(name);
    r.closed_form = closed_form;
    r.estimate = s.mean;
    r.std_error = s.std_error;
    r.z = stats::z_score(s.mean, closed_form, s.std_error);
    r.metric = r.z;
    r.criterion = "|z| <= 3";
    r.pass = std::abs(r.z) <= kZLimit;
    add(std::move(r), t0);
  }

  void tolerance(std::string name, double error, double tol, const std::string& what, Clock::time_point t0,
                 double closed_form = Record::kUnset, double estimate = Record::kUnset) {
    Record r;
    r.name = std::move(name);
    r.closed_form = closed_form;
    r.estimate = estimate;
    r.metric = error;
    r.criterion = what + " < " + fmt(tol);
    r.pass = error < tol;
    add(std::move(r), t0);
  }

  void p_value(std::string name, const stats::TestResult& res, const std::string& test, Clock::time_point t0) {
    Record r;
    r.name = std::move(name);
    r.estimate = res.statistic;
    r.metric = res.p_value;
    r.criterion = test + " p > 0.001";
    r.pass = res.p_value > kPLimit;
    add(std::move(r), t0);
  }

  std::vector<Record> take_records() { return std::move(records_); }

 private:
  ExperimentConfig cfg_;
  std::uint64_t seed_;
  unsigned workers_;
  std::uint64_t experiments_ = 0;
  std::vector<Record> records_;
};

double modulus(double x) { return std::abs(x); }
template <class T>
double modulus(const T& x) {
  return std::sqrt(norm2(x));
}

template <FieldScalar T>
Matrix<T> scaled(Matrix<T> m, double s) {
  for (std::size_t j = 0; j < m.cols(); ++j)
    for (std::size_t i = 0; i < m.rows(); ++i) m(i, j) = m(i, j) * s;
  return m;
}

AngleSet angles_at(Field f, std::size_t n, const std::vector<double>& v) {
  AngleSet a(f, n);
  std::copy(v.begin(), v.end(), a.values().begin());
  return a;
}

template <FieldScalar T>
Matrix<T> reconstruct(const AngleSet& angles) {
  return gram(angles_to_cholesky<T>(angles));
}

// ---------------------------------------------------------------------------------- roundtrip

struct RoundtripErrors {
  double angles = 0.0;
  double log_det = 0.0;
  double partials = 0.0;
  double row_norm = 0.0;
};

template <FieldScalar T>
RoundtripErrors roundtrip_trial(const AngleSet& angles) {
  RoundtripErrors e;
  const CholeskyFactor<T> l = angles_to_cholesky<T>(angles);
  const AngleSet back = cholesky_to_angles(l);
  for (std::size_t i = 0; i < angles.size(); ++i)
    e.angles = std::max(e.angles, std::abs(back.values()[i] - angles.values()[i]));
  const CholeskyFactor<T> refactored = cholesky_decompose(gram(l));
  e.log_det = std::abs(log_det_from_angles(angles) - log_det(refactored));
  e.partials = max_abs_diff(partials_to_cholesky(angles_to_partials<T>(angles)).matrix(), l.matrix());
  for (std::size_t j = 0; j < l.dim(); ++j) {
    double sum = 0.0;
    for (std::size_t k = 0; k <= j; ++k) sum += norm2(l(j, k));
    e.row_norm = std::max(e.row_norm, std::abs(sum - 1.0));
  }
  return e;
}

void suite_roundtrip(Context& ctx) {
  const std::size_t trials = ctx.trials(1000);
  const std::size_t max_n = ctx.max_n(8);
  const double a = ctx.cfg().a.value_or(0.0);
  for (Field f : ctx.fields()) {
    const auto t0 = Clock::now();
    const auto errs = ctx.run_trials<RoundtripErrors>(trials, [&](RandomStream& rng, std::size_t t) {
      const AngleSet angles = sample_angles({a, f, ctx.trial_dim(t, max_n)}, rng);
      return dispatch_field(f, [&]<class T>(std::type_identity<T>) { return roundtrip_trial<T>(angles); });
    });
    RoundtripErrors worst;
    for (const auto& e : errs) {
      worst.angles = std::max(worst.angles, e.angles);
      worst.log_det = std::max(worst.log_det, e.log_det);
      worst.partials = std::max(worst.partials, e.partials);
      worst.row_norm = std::max(worst.row_norm, e.row_norm);
    }
    const std::string fn = field_name(f);
    ctx.tolerance("angles/" + fn, worst.angles, 1e-12, "max abs angle error", t0);
    ctx.tolerance("det-factorisation/" + fn, worst.log_det, 1e-11, "max abs log det error", t0);
    ctx.tolerance("partials/" + fn, worst.partials, 1e-12, "max abs factor error", t0);
    ctx.tolerance("row-norm/" + fn, worst.row_norm, 1e-13, "max abs row norm error", t0);
  }
}

// -------------------------------------------------------------------------------------- schur

struct SchurErrors {
  double identity = 0.0;
  double cov = 0.0;
  double corr = 0.0;
};

template <FieldScalar T>
double partial_identity_error(const AngleSet& angles) {
  const Matrix<T> r = reconstruct<T>(angles);
  const auto table = angles_to_partials<T>(angles);
  double worst = 0.0;
  for (std::size_t k = 0; k + 1 < angles.dim(); ++k) {
    const Matrix<T> p = partial_corr_from_schur(r, k);
    for (std::size_t j = k + 1; j < angles.dim(); ++j) worst = std::max(worst, modulus(T(table(j, k) - p(j - k, 0))));
  }
  return worst;
}

template <FieldScalar T>
SchurErrors recursion_errors(std::size_t n, RandomStream& rng) {
  SchurErrors e;
  const Matrix<T> y = gaussian_matrix<T>(2 * n, n, rng);
  const Matrix<T> s = scaled(adjoint(y) * y, 1.0 / static_cast<double>(2 * n));
  const auto cov = partial_cov_recursion(s);
  for (std::size_t c = 0; c < n; ++c) e.cov = std::max(e.cov, max_abs_diff(cov.level(c), schur_complement(s, c)));
  const Matrix<T> r = normalised_gram(y).matrix();
  const auto corr = partial_corr_recursion(r);
  for (std::size_t c = 0; c < n; ++c) e.corr = std::max(e.corr, max_abs_diff(corr.level(c), partial_corr_from_schur(r, c)));
  return e;
}

void suite_schur(Context& ctx) {
  const std::size_t trials = ctx.trials(1000);
  const std::size_t max_n = ctx.max_n(8);
  const double a = ctx.cfg().a.value_or(0.0);
  for (Field f : ctx.fields()) {
    const std::string fn = field_name(f);
    auto t0 = Clock::now();
    const auto identity = ctx.run_trials<double>(trials, [&](RandomStream& rng, std::size_t t) {
      const AngleSet angles = sample_angles({a, f, ctx.trial_dim(t, max_n)}, rng);
      return dispatch_field(f, [&]<class T>(std::type_identity<T>) { return partial_identity_error<T>(angles); });
    });
    ctx.tolerance("partial-identity/" + fn, *std::max_element(identity.begin(), identity.end()), 1e-11,
                  "max abs error", t0);

    t0 = Clock::now();
    const auto rec = ctx.run_trials<SchurErrors>(trials, [&](RandomStream& rng, std::size_t t) {
      return dispatch_field(f, [&]<class T>(std::type_identity<T>) { return recursion_errors<T>(ctx.trial_dim(t, max_n), rng); });
    });
    double cov = 0.0;
    double corr = 0.0;
    for (const auto& e : rec) {
      cov = std::max(cov, e.cov);
      corr = std::max(corr, e.corr);
    }
    ctx.tolerance("cov-recursion/" + fn, cov, 1e-11, "max abs error", t0);
    ctx.tolerance("corr-recursion/" + fn, corr, 1e-11, "max abs error", t0);
  }
}

// -------------------------------------------------------------------------------- jacobian-fd

// Angles are drawn uniformly from [margin, pi - margin], away from the coordinate singularities.
constexpr double kJacobianMargin = 0.2;

void suite_jacobian_fd(Context& ctx) {
  const std::size_t trials = ctx.trials(100);
  for (Field f : ctx.fields())
    for (std::size_t n : ctx.dims({2, 3, 4})) {
      const auto t0 = Clock::now();
      const std::size_t dims = AngleSet::count(beta_of(f), n);
      const auto errs = ctx.run_trials<double>(trials, [&](RandomStream& rng, std::size_t) {
        AngleSet angles(f, n);
        for (double& v : angles.values()) v = kJacobianMargin + (kPi - 2 * kJacobianMargin) * rng.uniform();
        const double fd = oracles::log_abs_det(oracles::fd_jacobian(angles), dims);
        return std::abs(std::expm1(fd - log_jacobian_hyperspherical(angles)));
      });
      ctx.tolerance(field_name(f) + "/N=" + std::to_string(n), *std::max_element(errs.begin(), errs.end()), 1e-5,
                    "max rel error", t0);
    }
}

// ------------------------------------------------------------------- normalisation-quadrature

double mass_by_quadrature(const DensityParams& params) {
  const std::size_t dims = AngleSet::count(params.beta(), params.dim);
  auto log_f = [&](const std::vector<double>& v) { return log_density(angles_at(params.field, params.dim, v), params); };
  if (dims <= 4)
    return oracles::integrate_angle_box([&](const std::vector<double>& v) { return std::exp(log_f(v)); }, dims);
  return oracles::integrate_angle_product(log_f, dims);
}

void suite_normalisation_quadrature(Context& ctx) {
  const std::size_t max_n = ctx.max_n(10);
  for (Field f : ctx.fields()) {
    const std::string fn = field_name(f);
    auto t0 = Clock::now();
    double forms = 0.0;
    double slots = 0.0;
    for (std::size_t n = 2; n <= max_n; ++n)
      for (double a : ctx.as({0.0, 0.5, 1.0, 3.0})) {
        const DensityParams p{a, f, n};
        const double lb = log_normalisation(p, NormalisationForm::beta_product);
        forms = std::max({forms, std::abs(std::expm1(log_normalisation(p, NormalisationForm::gamma_ratio) - lb)),
                          std::abs(std::expm1(log_normalisation(p, NormalisationForm::telescoped) - lb))});
        double acc = 0.0;
        for (std::size_t j = 1; j < n; ++j)
          for (std::size_t s = 0; s < beta_of(f) * j; ++s) {
            const double e = angle_exponent(j, s, p);
            acc += special::log_beta((e + 1) / 2, 0.5);
          }
        slots = std::max(slots, std::abs(std::expm1(acc - lb)));
      }
    ctx.tolerance("forms/" + fn, forms, 1e-12, "max rel difference", t0);
    ctx.tolerance("slot-product/" + fn, slots, 1e-12, "max rel difference", t0);

    for (std::size_t n : ctx.dims({2, 3}))
      for (double a : ctx.as({0.0, 1.0, 2.5})) {
        t0 = Clock::now();
        const double mass = mass_by_quadrature({a, f, n});
        ctx.tolerance("quadrature/" + point_name(f, n, a), std::abs(mass - 1.0), 1e-8, "abs error of unit mass", t0,
                      1.0, mass);
      }
  }
}

// --------------------------------------------------------------------------- volume-identity

void suite_volume_identity(Context& ctx) {
  const std::size_t max_n = ctx.max_n(10);
  for (std::size_t n = 2; n <= max_n; ++n) {
    const auto t0 = Clock::now();
    const double closed = log_volume(n, Field::real);
    const double partial = log_volume_partial_correlation_form(n);
    ctx.tolerance("real/N=" + std::to_string(n), std::abs(std::expm1(partial - closed)), 1e-12, "rel difference", t0,
                  std::exp(closed), std::exp(partial));
  }
  if (max_n >= 3) {
    const auto t0 = Clock::now();
    const double target = kPi * kPi / 2;
    const double closed = std::exp(log_volume(3, Field::real));
    const double partial = std::exp(log_volume_partial_correlation_form(3));
    ctx.tolerance("pi2-over-2/closed-form", std::abs(closed / target - 1.0), 1e-12, "rel error", t0, target, closed);
    ctx.tolerance("pi2-over-2/partial-form", std::abs(partial / target - 1.0), 1e-12, "rel error", t0, target, partial);
  }
}

// -------------------------------------------------------------------------------- moments-mc

template <FieldScalar T>
double sampled_log_det(const DensityParams& params, RandomStream& rng) {
  return log_det_hermitian(reconstruct<T>(sample_angles(params, rng)));
}

void suite_moments_mc(Context& ctx) {
  const std::size_t trials = ctx.trials(100000);
  const auto fields = ctx.fields();
  const auto dims = ctx.dims({2, 3, 4});
  const auto as = ctx.as({0.0, 1.0});
  const bool single_point = fields.size() == 1 && dims.size() == 1 && as.size() == 1;
  for (Field f : fields)
    for (std::size_t n : dims)
      for (double a : as) {
        const DensityParams p{a, f, n};
        const std::string name = point_name(f, n, a);
        auto t0 = Clock::now();
        const auto logs = ctx.run_trials<double>(trials, [&](RandomStream& rng, std::size_t) {
          return dispatch_field(f, [&]<class T>(std::type_identity<T>) { return sampled_log_det<T>(p, rng); });
        });
        std::vector<double> det(trials);
        std::vector<double> det2(trials);
        for (std::size_t t = 0; t < trials; ++t) {
          det[t] = std::exp(logs[t]);
          det2[t] = det[t] * det[t];
        }
        ctx.z_test("det-moment/s=1/" + name, std::exp(log_det_moment(1.0, p)), det, t0);
        ctx.z_test("det-moment/s=2/" + name, std::exp(log_det_moment(2.0, p)), det2, t0);

        const std::size_t angle_dims = AngleSet::count(beta_of(f), n);
        if (angle_dims <= 3) {
          t0 = Clock::now();
          const double quad = oracles::integrate_angle_box(
              [&](const std::vector<double>& v) {
                const AngleSet ang = angles_at(f, n, v);
                const double ld = dispatch_field(
                    f, [&]<class T>(std::type_identity<T>) { return log_det_hermitian(reconstruct<T>(ang)); });
                return std::exp(ld + log_density(ang, p));
              },
              angle_dims);
          const double closed = std::exp(log_det_moment(1.0, p));
          ctx.tolerance("det-moment-quadrature/" + name, std::abs(quad / closed - 1.0), 1e-12, "rel error", t0,
                        closed, quad);
          if (f == Field::real && n == 2 && a == 0.0)
            ctx.tolerance("det-moment-exact/" + name, std::abs(quad - 2.0 / 3.0), 1e-12, "abs error vs 2/3", t0,
                          2.0 / 3.0, quad);
        }

        const double expected = expected_log_det(p);
        if (single_point || (f == Field::real && n == 2 && a == 0.0)) {
          t0 = Clock::now();
          ctx.z_test("e-log-det/" + name, expected, logs, t0);
        }
        t0 = Clock::now();
        const double h = 1e-5;
        const double fd = (log_det_moment(h, p) - log_det_moment(-h, p)) / (2 * h);
        ctx.tolerance("e-log-det-derivative/" + name, std::abs(fd - expected), 1e-8, "abs difference", t0, expected,
                      fd);
        if (f == Field::real && n == 2 && a == 0.0) {
          t0 = Clock::now();
          // Psi(1) - Psi(3/2)
          const double value = 2.0 * std::numbers::ln2 - 2.0;
          ctx.tolerance("e-log-det-value/" + name, std::abs(expected - value), 1e-14, "abs error vs 2 ln 2 - 2", t0,
                        value, expected);
        }
      }
}

// ------------------------------------------------------------------------------- marginal-fit

void suite_marginal_fit(Context& ctx) {
  const std::size_t trials = ctx.trials(100000);
  constexpr std::size_t kBins = 50;
  const auto fields = ctx.cfg().field ? ctx.fields() : std::vector<Field>{Field::real};
  for (Field f : fields)
    for (std::size_t n : ctx.dims({3}))
      for (double a : ctx.as({0.0})) {
        const auto t0 = Clock::now();
        const DensityParams p{a, f, n};
        const auto rho = ctx.run_trials<double>(trials, [&](RandomStream& rng, std::size_t) {
          return dispatch_field(f, [&]<class T>(std::type_identity<T>) {
            return real_part(reconstruct<T>(sample_angles(p, rng))(1, 0));
          });
        });
        // P(lo < rho < hi) with rho = cos t
        std::vector<double> probs(kBins);
        std::vector<std::size_t> counts(kBins, 0);
        for (std::size_t b = 0; b < kBins; ++b) {
          const double lo = -1.0 + 2.0 * b / kBins;
          const double hi = -1.0 + 2.0 * (b + 1) / kBins;
          probs[b] = oracles::integrate([&](double t) { return marginal_pdf(std::cos(t), p) * std::sin(t); },
                                        std::acos(hi), std::acos(lo));
        }
        for (double r : rho) ++counts[std::min(kBins - 1, static_cast<std::size_t>((r + 1.0) / 2.0 * kBins))];
        // merge neighbouring cells until every expected count reaches 5
        std::vector<double> mp;
        std::vector<std::size_t> mc;
        double acc_p = 0.0;
        std::size_t acc_c = 0;
        for (std::size_t b = 0; b < kBins; ++b) {
          acc_p += probs[b];
          acc_c += counts[b];
          if (acc_p * trials >= 5.0) {
            mp.push_back(acc_p);
            mc.push_back(acc_c);
            acc_p = 0.0;
            acc_c = 0;
          }
        }
        if (acc_c > 0 || acc_p > 0.0) {
          if (mp.empty()) {
            mp.push_back(0.0);
            mc.push_back(0);
          }
          mp.back() += acc_p;
          mc.back() += acc_c;
        }
        double total = 0.0;
        for (double q : mp) total += q;
        for (double& q : mp) q /= total;
        ctx.p_value("marginal/" + point_name(f, n, a), stats::chi_square_gof(mc, mp), "chi-square", t0);
      }
}

// ----------------------------------------------------------------------------- gaussian-match

struct DetRho {
  double log_det = 0.0;
  double rho = 0.0;
};

template <FieldScalar T>
DetRho det_rho(const Matrix<T>& r) {
  return {log_det_hermitian(r), real_part(r(1, 0))};
}

void suite_gaussian_match(Context& ctx) {
  const std::size_t trials = ctx.trials(100000);
  for (Field f : ctx.fields()) {
    const std::vector<std::size_t> defaults = f == Field::real ? std::vector<std::size_t>{2, 3, 4}
                                                               : std::vector<std::size_t>{2, 3};
    for (std::size_t n : ctx.dims(defaults)) {
      std::vector<std::size_t> samples = {n, n + 1, n + 4};
      if (ctx.cfg().gaussian_n) samples = {*ctx.cfg().gaussian_n};
      for (std::size_t rows : samples) {
        const auto t0 = Clock::now();
        const GaussianConstructionParams gp{rows, n, f};
        const DensityParams p{gp.implied_a(), f, n};
        const auto gauss = ctx.run_trials<DetRho>(trials, [&](RandomStream& rng, std::size_t) {
          return dispatch_field(
              f, [&]<class T>(std::type_identity<T>) { return det_rho(gaussian_construction<T>(gp, rng).matrix()); });
        });
        const auto angles = ctx.run_trials<DetRho>(trials, [&](RandomStream& rng, std::size_t) {
          return dispatch_field(
              f, [&]<class T>(std::type_identity<T>) { return det_rho(reconstruct<T>(sample_angles(p, rng))); });
        });
        std::vector<double> gd(trials), gr(trials), ad(trials), ar(trials);
        for (std::size_t t = 0; t < trials; ++t) {
          gd[t] = gauss[t].log_det;
          gr[t] = gauss[t].rho;
          ad[t] = angles[t].log_det;
          ar[t] = angles[t].rho;
        }
        const std::string name = field_name(f) + "/N=" + std::to_string(n) + "/n=" + std::to_string(rows);
        ctx.p_value("det/" + name, stats::ks_two_sample(gd, ad), "two-sample KS", t0);
        ctx.p_value("rho21/" + name, stats::ks_two_sample(gr, ar), "two-sample KS", t0);
      }
    }
  }
}

// ----------------------------------------------------------------------------- pd-probability

void suite_pd_probability(Context& ctx) {
  const std::size_t trials = ctx.trials(1000000);
  const auto fields = ctx.cfg().field ? ctx.fields() : std::vector<Field>{Field::real};
  for (Field f : fields)
    for (std::size_t n : ctx.dims({3})) {
      const auto t0 = Clock::now();
      const auto hits = ctx.run_trials<double>(trials, [&](RandomStream& rng, std::size_t) {
        return dispatch_field(f, [&]<class T>(std::type_identity<T>) {
          return is_valid_correlation(uniform_candidate<T>(n, rng)) ? 1.0 : 0.0;
        });
      });
      double sum = 0.0;
      for (double h : hits) sum += h;
      const double estimate = sum / static_cast<double>(trials);
      const double closed = std::exp(log_pd_probability(n, f));
      Record r;
      r.name = field_name(f) + "/N=" + std::to_string(n);
      r.closed_form = closed;
      r.estimate = estimate;
      r.std_error = std::sqrt(closed * (1.0 - closed) / static_cast<double>(trials));
      r.z = stats::z_score(estimate, closed, r.std_error);
      r.metric = r.z;
      r.criterion = "|z| <= 3";
      r.pass = std::abs(r.z) <= kZLimit;
      ctx.add(std::move(r), t0);
    }
}

// -------------------------------------------------------------------------------- chi2-limit

void suite_chi2_limit(Context& ctx) {
  const std::size_t trials = ctx.trials(100000);
  const auto fields = ctx.cfg().field ? ctx.fields() : std::vector<Field>{Field::real};
  for (Field f : fields)
    for (std::size_t n : ctx.dims({3}))
      for (double a : ctx.as({100.0})) {
        const auto t0 = Clock::now();
        const DensityParams p{a, f, n};
        const auto x = ctx.run_trials<double>(trials, [&](RandomStream& rng, std::size_t) {
          return -2.0 * a * log_det_from_angles(sample_angles(p, rng));
        });
        const double dof = beta_of(f) * static_cast<double>(n * (n - 1)) / 2.0;
        const std::string name = point_name(f, n, a);
        ctx.p_value("ks-chi2/" + name, stats::ks_one_sample(x, [&](double v) { return stats::chi_squared_cdf(v, dof); }),
                    "KS vs chi-square(" + fmt(dof) + ")", t0);
        ctx.z_test("exact-mean/" + name, -2.0 * a * expected_log_det(p), x, t0);
      }
}

using SuiteFn = void (*)(Context&);

struct SuiteEntry {
  const char* name;
  SuiteFn fn;
};

constexpr SuiteEntry kSuites[] = {
    {"roundtrip", suite_roundtrip},
    {"schur", suite_schur},
    {"jacobian-fd", suite_jacobian_fd},
    {"normalisation-quadrature", suite_normalisation_quadrature},
    {"volume-identity", suite_volume_identity},
    {"moments-mc", suite_moments_mc},
    {"marginal-fit", suite_marginal_fit},
    {"gaussian-match", suite_gaussian_match},
    {"pd-probability", suite_pd_probability},
    {"chi2-limit", suite_chi2_limit},
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& s : kSuites) out.emplace_back(s.name);
    return out;
  }();
  return names;
}

ExperimentReport run_suite(const ExperimentConfig& in_cfg) {
  ExperimentConfig cfg = in_cfg;
  cfg.command = Command::verify;
  cfg.validate();
  cfg.seed = resolve_seed(cfg);
  const auto it = std::find_if(std::begin(kSuites), std::end(kSuites),
                               [&](const SuiteEntry& s) { return cfg.suite == s.name; });
  const auto t0 = Clock::now();
  cfg.workers = resolve_workers(cfg);
  Context ctx(cfg, *cfg.seed, cfg.workers);
  it->fn(ctx);
  ExperimentReport report;
  report.suite = cfg.suite;
  report.config = cfg;
  report.records = ctx.take_records();
  report.duration_s = seconds_since(t0);
  return report;
}

}  // namespace corrlab::harness
