#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "corrlab/error.hpp"
#include "corrlab/harness.hpp"

namespace h = corrlab::harness;

namespace {

// Flags override the config file; unset flags leave its values in place.
struct Flags {
  std::optional<std::string> field;
  std::optional<std::size_t> dim;
  std::optional<double> a;
  std::optional<std::string> construction;
  std::optional<std::size_t> gaussian_n;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  std::optional<unsigned> workers;
  std::optional<std::string> out;
  std::optional<std::string> format;
  std::optional<std::size_t> max_n;
  std::optional<std::string> input;
  std::optional<std::string> emit;
  std::string config;
  std::string suite;
};

void add_common(CLI::App* cmd, Flags& f) {
  cmd->add_option("--field", f.field, "real | complex | quaternion");
  cmd->add_option("--n-dim", f.dim, "matrix dimension N");
  cmd->add_option("--a", f.a, "density exponent a > -1");
  cmd->add_option("--trials", f.trials, "number of trials");
  cmd->add_option("--seed", f.seed, "random seed (drawn from system entropy when absent)");
  cmd->add_option("--workers", f.workers, "worker threads (0: one per hardware thread)");
  cmd->add_option("--out", f.out, "output path (standard output when absent)");
  cmd->add_option("--format", f.format, "json | csv");
  cmd->add_option("--config", f.config, "JSON config file with the same keys as the flags");
}

h::ExperimentConfig build_config(h::Command command, const Flags& f) {
  h::ExperimentConfig cfg;
  cfg.command = command;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw h::ConfigError("cannot read config file '" + f.config + "'");
    nlohmann::json doc;
    try {
      doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
      throw h::ConfigError("config file is not valid JSON: " + std::string(e.what()));
    }
    cfg = h::config_from_json(doc, cfg);
    if (cfg.command != command) throw h::ConfigError("config file names a different command");
  }
  if (f.field) {
    try {
      cfg.field = corrlab::field_from_string(*f.field);
    } catch (const corrlab::UsageError& e) {
      throw h::ConfigError(e.what());
    }
  }
  if (f.dim) cfg.dim = f.dim;
  if (f.a) cfg.a = f.a;
  if (f.construction) cfg.construction = h::construction_from_string(*f.construction);
  if (f.gaussian_n) cfg.gaussian_n = f.gaussian_n;
  if (f.trials) cfg.trials = f.trials;
  if (f.seed) cfg.seed = f.seed;
  if (f.workers) cfg.workers = *f.workers;
  if (f.out) cfg.out = *f.out;
  if (f.format) cfg.format = h::format_from_string(*f.format);
  if (f.max_n) cfg.max_n = f.max_n;
  if (f.input) cfg.input = *f.input;
  if (f.emit) cfg.emit = h::emit_from_string(*f.emit);
  if (!f.suite.empty()) cfg.suite = f.suite;
  return cfg;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Random correlation matrices over R, C and H: sampling, evaluation and verification"};
  app.require_subcommand(1);
  Flags flags;

  auto* sample = app.add_subcommand("sample", "draw correlation matrices or angle sets");
  add_common(sample, flags);
  sample->add_option("--construction", flags.construction, "angles | gaussian");
  sample->add_option("--gaussian-n", flags.gaussian_n, "rows n >= N of the Gaussian data matrix");
  sample->add_option("--emit", flags.emit, "matrix | angles");

  auto* eval = app.add_subcommand("eval", "evaluate measure quantities of a matrix or angle set");
  add_common(eval, flags);
  eval->add_option("--in", flags.input, "input JSON document ('-' for standard input)");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  add_common(verify, flags);
  verify->add_option("suite", flags.suite, "suite name");
  verify->add_option("--max-n", flags.max_n, "largest dimension for dimension sweeps");
  verify->add_option("--gaussian-n", flags.gaussian_n, "rows of the Gaussian data matrix (gaussian-match)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return h::kConfigError;
  }

  h::Command command = h::Command::verify;
  if (sample->parsed()) command = h::Command::sample;
  if (eval->parsed()) command = h::Command::eval;

  h::ExperimentConfig cfg;
  try {
    cfg = build_config(command, flags);
  } catch (const h::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return h::kConfigError;
  }
  return h::run(cfg, std::cout, std::cerr);
}
