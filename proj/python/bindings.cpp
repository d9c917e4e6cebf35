#include <pybind11/complex.h>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "corrlab/error.hpp"
#include "corrlab/harness.hpp"
#include "corrlab/json_io.hpp"
#include "corrlab/measures.hpp"
#include "corrlab/parallel.hpp"
#include "corrlab/sampling.hpp"
#include "corrlab/special_math.hpp"

namespace py = pybind11;
using namespace corrlab;

namespace {

using Rows = std::vector<std::vector<double>>;
using RealArray = py::array_t<double, py::array::c_style | py::array::forcecast>;
using ComplexArray = py::array_t<Complex, py::array::c_style | py::array::forcecast>;

// Real (N, N) float64, complex (N, N) complex128, quaternion (N, N, 4) float64 with components
// (z_re, z_im, w_re, w_im).
template <FieldScalar T>
py::array to_numpy(const Matrix<T>& m) {
  const auto r = static_cast<py::ssize_t>(m.rows());
  const auto c = static_cast<py::ssize_t>(m.cols());
  if constexpr (std::is_same_v<T, double>) {
    RealArray out({r, c});
    auto v = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < r; ++i)
      for (py::ssize_t j = 0; j < c; ++j) v(i, j) = m(i, j);
    return std::move(out);
  } else if constexpr (std::is_same_v<T, Complex>) {
    ComplexArray out({r, c});
    auto v = out.mutable_unchecked<2>();
    for (py::ssize_t i = 0; i < r; ++i)
      for (py::ssize_t j = 0; j < c; ++j) v(i, j) = m(i, j);
    return std::move(out);
  } else {
    RealArray out({r, c, py::ssize_t{4}});
    auto v = out.mutable_unchecked<3>();
    for (py::ssize_t i = 0; i < r; ++i)
      for (py::ssize_t j = 0; j < c; ++j) {
        const auto q = m(i, j).components();
        for (int s = 0; s < 4; ++s) v(i, j, s) = q[s];
      }
    return std::move(out);
  }
}

py::array any_to_numpy(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return to_numpy(x); }, m);
}

// Field from the array layout: complex dtype, trailing axis of 4, or real.
AnyMatrix from_numpy(const py::array& a) {
  if (a.dtype().kind() == 'c') {
    const ComplexArray c = ComplexArray::ensure(a);
    if (c.ndim() != 2) throw UsageError("complex matrix must have shape (N, M)");
    Matrix<Complex> m(c.shape(0), c.shape(1));
    auto v = c.unchecked<2>();
    for (py::ssize_t i = 0; i < c.shape(0); ++i)
      for (py::ssize_t j = 0; j < c.shape(1); ++j) m(i, j) = v(i, j);
    return m;
  }
  const RealArray r = RealArray::ensure(a);
  if (!r) throw UsageError("matrix must be a numeric array");
  if (r.ndim() == 3 && r.shape(2) == 4) {
    Matrix<Quaternion> m(r.shape(0), r.shape(1));
    auto v = r.unchecked<3>();
    for (py::ssize_t i = 0; i < r.shape(0); ++i)
      for (py::ssize_t j = 0; j < r.shape(1); ++j) m(i, j) = Quaternion(v(i, j, 0), v(i, j, 1), v(i, j, 2), v(i, j, 3));
    return m;
  }
  if (r.ndim() != 2) throw UsageError("real matrix must have shape (N, M); quaternion (N, M, 4)");
  Matrix<double> m(r.shape(0), r.shape(1));
  auto v = r.unchecked<2>();
  for (py::ssize_t i = 0; i < r.shape(0); ++i)
    for (py::ssize_t j = 0; j < r.shape(1); ++j) m(i, j) = v(i, j);
  return m;
}

AngleSet angles_from(const std::string& field, std::size_t n, const Rows& rows) {
  return AngleSet::from_rows(field_from_string(field), n, rows);
}

DensityParams params_of(double a, const std::string& field, std::size_t n) {
  DensityParams p{a, field_from_string(field), n};
  p.validate();
  return p;
}

NormalisationForm form_from_string(const std::string& s) {
  if (s == "beta_product") return NormalisationForm::beta_product;
  if (s == "gamma_ratio") return NormalisationForm::gamma_ratio;
  if (s == "telescoped") return NormalisationForm::telescoped;
  throw UsageError("unknown normalisation form '" + s + "'");
}

// Trials drawn on the same substreams as the command-line sample command.
py::list sample_many(std::size_t trials, std::uint64_t seed, std::uint64_t experiment, unsigned workers,
                     const std::function<AnyMatrix(RandomStream&)>& draw) {
  std::vector<AnyMatrix> out(trials);
  {
    py::gil_scoped_release release;
    parallel_for(trials, workers, [&](std::size_t t) {
      RandomStream rng(seed, harness::substream(experiment, t));
      out[t] = draw(rng);
    });
  }
  py::list result;
  for (const auto& m : out) result.append(any_to_numpy(m));
  return result;
}

unsigned workers_or_default(unsigned w) { return harness::resolve_workers(harness::ExperimentConfig{.workers = w}); }

}  // namespace

PYBIND11_MODULE(_corrlab, m) {
  m.doc() = "Random correlation matrices over the reals, complex numbers and quaternions";

  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<UsageError>(m, "UsageError", PyExc_ValueError);
  py::register_exception<InvalidInput>(m, "InvalidInput", PyExc_ValueError);
  py::register_exception<NotPositiveDefinite>(m, "NotPositiveDefinite", PyExc_ValueError);
  py::register_exception<Degenerate>(m, "Degenerate", PyExc_ArithmeticError);
  py::register_exception<harness::ConfigError>(m, "ConfigError", PyExc_ValueError);

  m.def("log_gamma", &special::log_gamma, py::arg("x"));
  m.def("digamma", &special::digamma, py::arg("x"));
  m.def("log_beta", &special::log_beta, py::arg("a"), py::arg("b"));
  m.def("sin_power_integral", &special::sin_power_integral, py::arg("k"));

  m.def("cholesky", [](const py::array& s) {
    return std::visit([](const auto& x) { return to_numpy(cholesky_decompose(x).matrix()); }, from_numpy(s));
  }, py::arg("matrix"));
  m.def("log_det", [](const py::array& s) {
    return std::visit([](const auto& x) { return log_det(cholesky_decompose(x)); }, from_numpy(s));
  }, py::arg("matrix"));
  m.def("is_valid_correlation", [](const py::array& s) {
    const Validity v = std::visit([](const auto& x) { return is_valid_correlation(x); }, from_numpy(s));
    return py::make_tuple(v.ok, v.reason);
  }, py::arg("matrix"));
  m.def("schur_complement", [](const py::array& s, std::size_t conditioned) {
    return std::visit([&](const auto& x) { return to_numpy(schur_complement(x, conditioned)); }, from_numpy(s));
  }, py::arg("matrix"), py::arg("conditioned"));
  m.def("partial_corr_from_schur", [](const py::array& s, std::size_t conditioned) {
    return std::visit([&](const auto& x) { return to_numpy(partial_corr_from_schur(x, conditioned)); }, from_numpy(s));
  }, py::arg("matrix"), py::arg("conditioned"));

  m.def("angles_to_cholesky", [](const std::string& field, std::size_t n, const Rows& rows) {
    const AngleSet a = angles_from(field, n, rows);
    return dispatch_field(a.field(), [&]<class T>(std::type_identity<T>) { return to_numpy(angles_to_cholesky<T>(a).matrix()); });
  }, py::arg("field"), py::arg("n"), py::arg("rows"));
  m.def("angles_to_correlation", [](const std::string& field, std::size_t n, const Rows& rows) {
    const AngleSet a = angles_from(field, n, rows);
    return dispatch_field(a.field(), [&]<class T>(std::type_identity<T>) {
      return to_numpy(CorrelationMatrix<T>::adopt(gram(angles_to_cholesky<T>(a))).matrix());
    });
  }, py::arg("field"), py::arg("n"), py::arg("rows"));
  m.def("correlation_to_angles", [](const py::array& r) {
    return std::visit([](const auto& x) { return cholesky_to_angles(cholesky_decompose(x)).rows(); }, from_numpy(r));
  }, py::arg("matrix"));
  m.def("angles_to_partials", [](const std::string& field, std::size_t n, const Rows& rows) {
    const AngleSet a = angles_from(field, n, rows);
    return dispatch_field(a.field(), [&]<class T>(std::type_identity<T>) {
      const auto table = angles_to_partials<T>(a);
      Matrix<T> out = Matrix<T>::identity(n);
      for (std::size_t j = 1; j < n; ++j)
        for (std::size_t k = 0; k < j; ++k) {
          out(j, k) = table(j, k);
          out(k, j) = conj(table(j, k));
        }
      return to_numpy(out);
    });
  }, py::arg("field"), py::arg("n"), py::arg("rows"),
     "Partial correlations rho_{jk | 0..k-1} in the strict lower triangle (conjugates above, ones on the diagonal).");

  m.def("angle_exponent", [](std::size_t row, std::size_t slot, double a, const std::string& field, std::size_t n) {
    return angle_exponent(row, slot, params_of(a, field, n));
  }, py::arg("row"), py::arg("slot"), py::arg("a"), py::arg("field"), py::arg("n"));
  m.def("log_jacobian_hyperspherical", [](const std::string& field, std::size_t n, const Rows& rows) {
    return log_jacobian_hyperspherical(angles_from(field, n, rows));
  }, py::arg("field"), py::arg("n"), py::arg("rows"));
  m.def("log_det_from_angles", [](const std::string& field, std::size_t n, const Rows& rows) {
    return log_det_from_angles(angles_from(field, n, rows));
  }, py::arg("field"), py::arg("n"), py::arg("rows"));
  m.def("log_normalisation", [](double a, const std::string& field, std::size_t n, const std::string& form) {
    return log_normalisation(params_of(a, field, n), form_from_string(form));
  }, py::arg("a"), py::arg("field"), py::arg("n"), py::arg("form") = "beta_product");
  m.def("log_volume", [](std::size_t n, const std::string& field) { return log_volume(n, field_from_string(field)); },
        py::arg("n"), py::arg("field") = "real");
  m.def("log_volume_partial_correlation_form", &log_volume_partial_correlation_form, py::arg("n"));
  m.def("log_pd_probability", [](std::size_t n, const std::string& field) {
    return log_pd_probability(n, field_from_string(field));
  }, py::arg("n"), py::arg("field") = "real");
  m.def("log_density", [](const std::string& field, std::size_t n, const Rows& rows, double a) {
    return log_density(angles_from(field, n, rows), params_of(a, field, n));
  }, py::arg("field"), py::arg("n"), py::arg("rows"), py::arg("a"));
  m.def("marginal_pdf", [](double rho, double a, const std::string& field, std::size_t n) {
    return marginal_pdf(rho, params_of(a, field, n));
  }, py::arg("rho"), py::arg("a"), py::arg("field"), py::arg("n"));
  m.def("log_det_moment", [](double s, double a, const std::string& field, std::size_t n) {
    return log_det_moment(s, params_of(a, field, n));
  }, py::arg("s"), py::arg("a"), py::arg("field"), py::arg("n"));
  m.def("expected_log_det", [](double a, const std::string& field, std::size_t n) {
    return expected_log_det(params_of(a, field, n));
  }, py::arg("a"), py::arg("field"), py::arg("n"));

  m.def("sample_correlation", [](const std::string& field, std::size_t n, double a, std::size_t trials,
                                 std::uint64_t seed, unsigned workers) {
    const DensityParams p = params_of(a, field, n);
    return sample_many(trials, seed, 1, workers_or_default(workers), [&](RandomStream& rng) -> AnyMatrix {
      return dispatch_field(p.field, [&]<class T>(std::type_identity<T>) -> AnyMatrix {
        return sample_correlation<T>(p, rng).matrix();
      });
    });
  }, py::arg("field"), py::arg("n"), py::arg("a"), py::arg("trials"), py::arg("seed"), py::arg("workers") = 0);
  m.def("gaussian_construction", [](const std::string& field, std::size_t n, std::size_t samples, std::size_t trials,
                                    std::uint64_t seed, unsigned workers) {
    const GaussianConstructionParams gp{samples, n, field_from_string(field)};
    gp.validate();
    return sample_many(trials, seed, 2, workers_or_default(workers), [&](RandomStream& rng) -> AnyMatrix {
      return dispatch_field(gp.field, [&]<class T>(std::type_identity<T>) -> AnyMatrix {
        return gaussian_construction<T>(gp, rng).matrix();
      });
    });
  }, py::arg("field"), py::arg("n"), py::arg("samples"), py::arg("trials"), py::arg("seed"), py::arg("workers") = 0);
  m.def("implied_a", [](const std::string& field, std::size_t n, std::size_t samples) {
    return GaussianConstructionParams{samples, n, field_from_string(field)}.implied_a();
  }, py::arg("field"), py::arg("n"), py::arg("samples"));

  m.def("suite_names", &harness::suite_names);
  m.def("verify_json", [](const std::string& config_json) {
    harness::ExperimentConfig cfg = harness::config_from_json(nlohmann::json::parse(config_json));
    cfg.command = harness::Command::verify;
    harness::ExperimentReport report;
    {
      py::gil_scoped_release release;
      report = harness::run_suite(cfg);
    }
    return harness::report_to_json(report).dump();
  }, py::arg("config_json"), "Runs a verification suite; the config uses the command-line keys.");
}
