#include "corrlab/harness.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <random>
#include <sstream>
#include <thread>
#include <variant>

#include "corrlab/error.hpp"
#include "corrlab/json_io.hpp"
#include "corrlab/measures.hpp"
#include "corrlab/parallel.hpp"
#include "corrlab/sampling.hpp"

namespace corrlab::harness {
namespace {

using nlohmann::json;

json number(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

template <class T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

template <class E>
E parse_choice(const std::string& s, std::initializer_list<std::pair<const char*, E>> choices, const char* what) {
  for (const auto& [name, value] : choices)
    if (s == name) return value;
  std::string allowed;
  for (const auto& [name, value] : choices) allowed += std::string(allowed.empty() ? "" : "|") + name;
  throw ConfigError(std::string("unknown ") + what + " '" + s + "' (expected " + allowed + ")");
}

// Fills `out` from `doc[key]` when present; throws ConfigError naming the key on a type mismatch.
template <class T>
void read_key(const json& doc, const char* key, std::optional<T>& out) {
  if (!doc.contains(key) || doc[key].is_null()) return;
  const json& v = doc[key];
  if constexpr (std::is_floating_point_v<T>) {
    if (!v.is_number()) throw ConfigError(std::string("config key '") + key + "' must be a number");
  } else if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0))
      throw ConfigError(std::string("config key '") + key + "' must be a non-negative integer");
  } else {
    if (!v.is_string()) throw ConfigError(std::string("config key '") + key + "' must be a string");
  }
  out = v.get<T>();
}

// Samples of one sample-command trial.
struct Draw {
  AnyMatrix matrix;
  std::optional<AngleSet> angles;
};

template <FieldScalar T>
Draw draw_one(const ExperimentConfig& cfg, const DensityParams& params, std::size_t gaussian_n, RandomStream& rng) {
  if (cfg.construction == Construction::gaussian) {
    const auto r = gaussian_construction<T>({gaussian_n, params.dim, params.field}, rng);
    return {r.matrix(), std::nullopt};
  }
  AngleSet angles = sample_angles(params, rng);
  return {CorrelationMatrix<T>::adopt(gram(angles_to_cholesky<T>(angles))).matrix(), std::move(angles)};
}

// Angles of a drawn matrix, recovered from its Cholesky factor when not sampled directly.
AngleSet angles_of(const Draw& d) {
  if (d.angles) return *d.angles;
  return std::visit([](const auto& m) { return cholesky_to_angles(cholesky_decompose(m)); }, d.matrix);
}

double rho21_re(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return x.rows() < 2 ? std::nan("") : real_part(x(1, 0)); }, m);
}

double log_det_of(const AnyMatrix& m) {
  return std::visit([](const auto& x) { return log_det_hermitian(x); }, m);
}

std::string read_input(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read input file '" + path + "'");
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

template <FieldScalar T>
json partial_table_json(const PartialCorrelationTable<T>& t) {
  json rows = json::array();
  for (std::size_t j = 1; j < t.dim(); ++j) {
    json row = json::array();
    for (std::size_t k = 0; k < j; ++k) {
      Matrix<T> one(1, 1);
      one(0, 0) = t(j, k);
      row.push_back(matrix_to_json(one)["entries"][0][0]);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

template <FieldScalar T>
json evaluate(const CholeskyFactor<T>& l, const AngleSet& angles, double a) {
  const DensityParams params{a, ScalarTraits<T>::field, l.dim()};
  json out = {{"schema", "corrlab-eval/1"},
              {"field", std::string(corrlab::to_string(params.field))},
              {"n", params.dim},
              {"a", a},
              {"log_det", number(log_det(l))},
              {"log_det_from_angles", number(log_det_from_angles(angles))},
              {"log_normalisation", number(log_normalisation(params))},
              {"log_density", number(log_density(angles, params))},
              {"log_jacobian_hyperspherical", number(log_jacobian_hyperspherical(angles))},
              {"log_jacobian_partials", nullptr},
              {"partial_correlations", partial_table_json(angles_to_partials<T>(angles))},
              {"angles", angles.rows()},
              {"matrix", matrix_to_json(gram(l))},
              {"cholesky", matrix_to_json(l.matrix())}};
  if constexpr (std::is_same_v<T, double>)
    out["log_jacobian_partials"] = number(log_jacobian_partials(angles_to_partials<double>(angles)));
  return out;
}

}  // namespace

std::string to_string(Command c) {
  switch (c) {
    case Command::sample: return "sample";
    case Command::eval: return "eval";
    case Command::verify: return "verify";
  }
  return "?";
}
std::string to_string(Format f) { return f == Format::json ? "json" : "csv"; }
std::string to_string(Construction c) { return c == Construction::angles ? "angles" : "gaussian"; }
std::string to_string(Emit e) { return e == Emit::matrix ? "matrix" : "angles"; }

Command command_from_string(const std::string& s) {
  return parse_choice<Command>(s, {{"sample", Command::sample}, {"eval", Command::eval}, {"verify", Command::verify}},
                               "command");
}
Format format_from_string(const std::string& s) {
  return parse_choice<Format>(s, {{"json", Format::json}, {"csv", Format::csv}}, "format");
}
Construction construction_from_string(const std::string& s) {
  return parse_choice<Construction>(s, {{"angles", Construction::angles}, {"gaussian", Construction::gaussian}},
                                    "construction");
}
Emit emit_from_string(const std::string& s) {
  return parse_choice<Emit>(s, {{"matrix", Emit::matrix}, {"angles", Emit::angles}}, "emit kind");
}

void ExperimentConfig::validate() const {
  if (trials && *trials < 1) throw ConfigError("trials must be at least 1");
  if (a && (!std::isfinite(*a) || !(*a > -1.0))) throw ConfigError("a must be a finite number greater than -1");
  if (dim && *dim < 1) throw ConfigError("n-dim must be at least 1");
  if (max_n && *max_n < 2) throw ConfigError("max-n must be at least 2");
  if (gaussian_n && dim && *gaussian_n < *dim)
    throw ConfigError("gaussian-n (" + std::to_string(*gaussian_n) + ") must be at least n-dim (" +
                      std::to_string(*dim) + ")");
  switch (command) {
    case Command::verify: {
      const auto& names = suite_names();
      if (std::find(names.begin(), names.end(), suite) == names.end())
        throw ConfigError("unknown verification suite '" + suite + "'");
      break;
    }
    case Command::eval:
      if (input.empty()) throw ConfigError("eval needs an input document (--in PATH, '-' for stdin)");
      if (format != Format::json) throw ConfigError("eval writes JSON only");
      break;
    case Command::sample:
      if (format == Format::csv && emit == Emit::angles) throw ConfigError("angle sets are written as JSON only");
      break;
  }
}

ExperimentConfig config_from_json(const json& doc, ExperimentConfig cfg) {
  if (!doc.is_object()) throw ConfigError("config document must be a JSON object");
  static const std::vector<std::string> known = {"command", "suite", "field",   "n_dim",  "a",     "construction",
                                                 "gaussian_n", "trials", "seed", "workers", "out", "format",
                                                 "max_n",   "in",    "emit"};
  for (const auto& [key, value] : doc.items())
    if (std::find(known.begin(), known.end(), key) == known.end()) throw ConfigError("unknown config key '" + key + "'");

  std::optional<std::string> s;
  read_key(doc, "command", s);
  if (s) cfg.command = command_from_string(*s);
  s.reset();
  read_key(doc, "suite", s);
  if (s) cfg.suite = *s;
  s.reset();
  read_key(doc, "field", s);
  if (s) {
    try {
      cfg.field = field_from_string(*s);
    } catch (const UsageError& e) {
      throw ConfigError(e.what());
    }
  }
  read_key(doc, "n_dim", cfg.dim);
  read_key(doc, "a", cfg.a);
  s.reset();
  read_key(doc, "construction", s);
  if (s) cfg.construction = construction_from_string(*s);
  read_key(doc, "gaussian_n", cfg.gaussian_n);
  read_key(doc, "trials", cfg.trials);
  read_key(doc, "seed", cfg.seed);
  std::optional<unsigned> workers;
  read_key(doc, "workers", workers);
  if (workers) cfg.workers = *workers;
  s.reset();
  read_key(doc, "out", s);
  if (s) cfg.out = *s;
  s.reset();
  read_key(doc, "format", s);
  if (s) cfg.format = format_from_string(*s);
  read_key(doc, "max_n", cfg.max_n);
  s.reset();
  read_key(doc, "in", s);
  if (s) cfg.input = *s;
  s.reset();
  read_key(doc, "emit", s);
  if (s) cfg.emit = emit_from_string(*s);
  return cfg;
}

json config_to_json(const ExperimentConfig& cfg) {
  return {{"command", to_string(cfg.command)},
          {"suite", cfg.suite.empty() ? json(nullptr) : json(cfg.suite)},
          {"field", cfg.field ? json(std::string(corrlab::to_string(*cfg.field))) : json(nullptr)},
          {"n_dim", optional_json(cfg.dim)},
          {"a", optional_json(cfg.a)},
          {"construction", to_string(cfg.construction)},
          {"gaussian_n", optional_json(cfg.gaussian_n)},
          {"trials", optional_json(cfg.trials)},
          {"seed", optional_json(cfg.seed)},
          {"workers", cfg.workers},
          {"format", to_string(cfg.format)},
          {"max_n", optional_json(cfg.max_n)},
          {"emit", to_string(cfg.emit)}};
}

std::uint64_t resolve_seed(const ExperimentConfig& cfg) {
  if (cfg.seed) return *cfg.seed;
  std::random_device rd;
  return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

unsigned resolve_workers(const ExperimentConfig& cfg) {
  if (cfg.workers > 0) return cfg.workers;
  return std::max(1u, std::thread::hardware_concurrency());
}

bool ExperimentReport::pass() const {
  return std::all_of(records.begin(), records.end(), [](const Record& r) { return r.pass; });
}

json report_to_json(const ExperimentReport& report) {
  json records = json::array();
  for (const Record& r : report.records)
    records.push_back({{"name", r.name},
                       {"closed_form", number(r.closed_form)},
                       {"estimate", number(r.estimate)},
                       {"std_error", number(r.std_error)},
                       {"z", number(r.z)},
                       {"metric", number(r.metric)},
                       {"criterion", r.criterion},
                       {"pass", r.pass},
                       {"duration_s", r.duration_s}});
  return {{"schema", "corrlab-report/1"},
          {"suite", report.suite},
          {"config", config_to_json(report.config)},
          {"pass", report.pass()},
          {"duration_s", report.duration_s},
          {"records", std::move(records)}};
}

std::string report_to_csv(const ExperimentReport& report) {
  std::ostringstream os;
  os.precision(17);
  auto field = [&](double x) {
    if (std::isfinite(x)) os << x;
  };
  os << "name,closed_form,estimate,std_error,z,metric,criterion,pass,duration_s\n";
  for (const Record& r : report.records) {
    os << r.name << ',';
    field(r.closed_form);
    os << ',';
    field(r.estimate);
    os << ',';
    field(r.std_error);
    os << ',';
    field(r.z);
    os << ',';
    field(r.metric);
    os << ",\"" << r.criterion << "\"," << (r.pass ? "true" : "false") << ',' << r.duration_s << '\n';
  }
  return os.str();
}

int cmd_sample(const ExperimentConfig& in_cfg, std::ostream& out) {
  ExperimentConfig cfg = in_cfg;
  cfg.validate();
  const Field field = cfg.field.value_or(Field::real);
  const std::size_t dim = cfg.dim.value_or(3);
  const std::size_t trials = cfg.trials.value_or(1);
  const std::size_t gaussian_n = cfg.gaussian_n.value_or(dim + 1);
  if (gaussian_n < dim) throw ConfigError("gaussian-n must be at least n-dim");
  const GaussianConstructionParams gparams{gaussian_n, dim, field};
  const bool gaussian = cfg.construction == Construction::gaussian;
  if (gaussian && cfg.a && *cfg.a != gparams.implied_a())
    throw ConfigError("a is fixed by the Gaussian construction (implied a = " + std::to_string(gparams.implied_a()) +
                      "); omit --a");
  const double a = gaussian ? gparams.implied_a() : cfg.a.value_or(0.0);
  const DensityParams params{a, field, dim};
  cfg.seed = resolve_seed(cfg);
  const std::uint64_t experiment = gaussian ? 2 : 1;

  std::vector<Draw> draws(trials);
  parallel_for(trials, resolve_workers(cfg), [&](std::size_t t) {
    RandomStream rng(*cfg.seed, substream(experiment, t));
    draws[t] = dispatch_field(field, [&]<class T>(std::type_identity<T>) { return draw_one<T>(cfg, params, gaussian_n, rng); });
  });

  if (cfg.format == Format::csv) {
    std::ostringstream os;
    os.precision(17);
    os << "trial,det,rho21_re,log_density\n";
    for (std::size_t t = 0; t < trials; ++t) {
      os << t << ',' << std::exp(log_det_of(draws[t].matrix)) << ',';
      if (const double r = rho21_re(draws[t].matrix); std::isfinite(r)) os << r;
      os << ',' << log_density(angles_of(draws[t]), params) << '\n';
    }
    out << os.str();
    return kPass;
  }

  json samples = json::array();
  for (const Draw& d : draws) {
    if (cfg.emit == Emit::angles) {
      samples.push_back(angles_to_json(angles_of(d)));
    } else {
      samples.push_back(any_matrix_to_json(d.matrix));
    }
  }
  json meta = {{"field", std::string(corrlab::to_string(field))},
               {"n", dim},
               {"a", a},
               {"construction", to_string(cfg.construction)},
               {"gaussian_n", gaussian ? json(gaussian_n) : json(nullptr)},
               {"implied_a", gaussian ? json(gparams.implied_a()) : json(nullptr)},
               {"trials", trials},
               {"seed", *cfg.seed},
               {"emit", to_string(cfg.emit)}};
  out << json{{"schema", "corrlab-samples/1"}, {"metadata", std::move(meta)}, {"samples", std::move(samples)}}.dump(2)
      << '\n';
  return kPass;
}

int cmd_eval(const ExperimentConfig& cfg, std::ostream& out) {
  cfg.validate();
  const json doc = json::parse(read_input(cfg.input));
  const double a = cfg.a.value_or(0.0);
  json result;
  if (doc.is_object() && doc.contains("rows")) {
    const AngleSet angles = angles_from_json(doc);
    result = dispatch_field(angles.field(), [&]<class T>(std::type_identity<T>) {
      return evaluate<T>(angles_to_cholesky<T>(angles), angles, a);
    });
  } else {
    const AnyMatrix m = matrix_from_json(doc);
    result = std::visit(
        [&](const auto& r) {
          if (auto v = is_valid_correlation(r); !v) throw InvalidInput("input is not a correlation matrix: " + v.reason);
          const auto l = cholesky_decompose(r);
          return evaluate(l, cholesky_to_angles(l), a);
        },
        m);
  }
  out << result.dump(2) << '\n';
  return kPass;
}

int cmd_verify(const ExperimentConfig& cfg, std::ostream& out) {
  const ExperimentReport report = run_suite(cfg);
  if (cfg.format == Format::csv) {
    out << report_to_csv(report);
  } else {
    out << report_to_json(report).dump(2) << '\n';
  }
  return report.pass() ? kPass : kFailure;
}

int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    std::ostringstream buffer;
    int code = kPass;
    switch (cfg.command) {
      case Command::sample: code = cmd_sample(cfg, buffer); break;
      case Command::eval: code = cmd_eval(cfg, buffer); break;
      case Command::verify: code = cmd_verify(cfg, buffer); break;
    }
    if (cfg.out.empty()) {
      out << buffer.str();
    } else {
      std::ofstream file(cfg.out, std::ios::binary);
      if (!(file << buffer.str()) || !file.flush()) throw ConfigError("cannot write output file '" + cfg.out + "'");
    }
    return code;
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const UsageError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const DomainError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const InvalidInput& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const NotPositiveDefinite& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const Degenerate& e) {
    err << "input error: " << e.what() << '\n';
    return kInputError;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: malformed JSON: " << e.what() << '\n';
    return kInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kFailure;
  }
}

}  // namespace corrlab::harness
