#pragma once

// Command surface and verification harness: configuration, reports, and the three commands
// sample, eval and verify. Every Monte Carlo trial draws from its own substream
// (seed, substream(experiment, trial)) and results are reduced in trial order, so reports do
// not depend on the worker count.

#include <cstdint>
#include <iosfwd>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "corrlab/field.hpp"

namespace corrlab::harness {

// Invalid configuration: unknown suite, out-of-range parameter, unwritable output path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum ExitCode : int { kPass = 0, kFailure = 1, kConfigError = 2, kInputError = 3 };

enum class Command { sample, eval, verify };
enum class Format { json, csv };
enum class Construction { angles, gaussian };
enum class Emit { matrix, angles };

// Unset optionals select the per-suite defaults.
struct ExperimentConfig {
  Command command = Command::verify;
  std::string suite;
  std::optional<Field> field;
  std::optional<std::size_t> dim;
  std::optional<double> a;
  Construction construction = Construction::angles;
  std::optional<std::size_t> gaussian_n;
  std::optional<std::size_t> trials;
  std::optional<std::uint64_t> seed;
  unsigned workers = 0;  // 0: one per hardware thread
  std::string out;       // empty: standard output
  Format format = Format::json;
  std::optional<std::size_t> max_n;
  std::string input;  // eval input path, "-" for standard input
  Emit emit = Emit::matrix;

  // Throws ConfigError.
  void validate() const;
};

// Keys as in the command-line flags with '-' replaced by '_' (n_dim, gaussian_n, max_n, ...).
// Throws ConfigError on unknown keys or wrongly typed values.
ExperimentConfig config_from_json(const nlohmann::json& doc, ExperimentConfig base = {});
nlohmann::json config_to_json(const ExperimentConfig& cfg);

std::string to_string(Command c);
std::string to_string(Format f);
std::string to_string(Construction c);
std::string to_string(Emit e);
Command command_from_string(const std::string& s);
Format format_from_string(const std::string& s);
Construction construction_from_string(const std::string& s);
Emit emit_from_string(const std::string& s);

// Seed echo: the configured seed, or one drawn from std::random_device.
std::uint64_t resolve_seed(const ExperimentConfig& cfg);
unsigned resolve_workers(const ExperimentConfig& cfg);

inline std::uint64_t substream(std::uint64_t experiment, std::uint64_t trial) { return (experiment << 40) | trial; }

// One checked quantity. Unused numeric fields are NaN (null in JSON).
struct Record {
  static constexpr double kUnset = std::numeric_limits<double>::quiet_NaN();

  std::string name;
  double closed_form = kUnset;
  double estimate = kUnset;
  double std_error = kUnset;
  double z = kUnset;
  double metric = kUnset;  // the number the criterion is applied to
  std::string criterion;  // e.g. "|z| <= 3", "p > 0.001", "max abs err < 1e-11"
  bool pass = false;
  double duration_s = 0.0;
};

struct ExperimentReport {
  std::string suite;
  ExperimentConfig config;  // seed and workers resolved
  std::vector<Record> records;
  double duration_s = 0.0;

  bool pass() const;
};

// {"schema": "corrlab-report/1", "suite", "config", "pass", "duration_s", "records": [...]}
nlohmann::json report_to_json(const ExperimentReport& report);
// Header line then one line per record.
std::string report_to_csv(const ExperimentReport& report);

const std::vector<std::string>& suite_names();

// Runs the suite named in cfg.suite. Throws ConfigError for an unknown suite.
ExperimentReport run_suite(const ExperimentConfig& cfg);

// Command bodies. Output goes to `out`; return the exit code for a completed run.
int cmd_sample(const ExperimentConfig& cfg, std::ostream& out);
int cmd_eval(const ExperimentConfig& cfg, std::ostream& out);
int cmd_verify(const ExperimentConfig& cfg, std::ostream& out);

// Dispatches on cfg.command, opens cfg.out, and maps exceptions to exit codes: ConfigError,
// UsageError and DomainError to 2, InvalidInput, NotPositiveDefinite, Degenerate and JSON
// parse errors to 3. Messages go to `err`.
int run(const ExperimentConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace corrlab::harness
