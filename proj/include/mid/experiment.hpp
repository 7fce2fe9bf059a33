#pragma once

// Experiment presets, option validation and result files for the midsim
// runner.
//
// Output schema (CSV, one header row, values with 17 significant digits):
//   network,K,quantity,mean,std_error,n_samples,seed
// The theorem suite appends lower_bound,upper_bound,alpha. The JSON format is
// an array of objects with the same keys.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "mid/metrics.hpp"
#include "mid/model.hpp"

namespace mid {

enum class Preset { Fig1, Fig2, TheoremSuite, Custom };
enum class OutputFormat { Csv, Json };

std::string preset_name(Preset p);

/// Rejected command line or config file; the message names the offending flags.
class SpecError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Flags as given by the user, before defaults. Empty optionals were not set.
struct RawOptions {
  std::optional<std::string> preset;
  std::optional<std::string> quantity;
  std::vector<std::string> networks;
  std::optional<std::string> users;
  std::optional<std::uint64_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> workers;
  std::optional<std::string> power;
  std::optional<double> bs_power;
  std::optional<double> pr_power;
  std::optional<double> interference_limit;
  std::optional<std::string> output;
  std::optional<std::string> format;
};

struct ExperimentSpec {
  Preset preset = Preset::Custom;
  Quantity quantity = Quantity::Throughput;
  std::vector<NetworkKind> networks;
  std::vector<std::size_t> users;
  std::uint64_t n_samples = 0;
  std::uint64_t seed = 1;
  unsigned workers = 0;  // 0 = auto
  std::vector<double> user_power{1.0};
  double bs_power = 1.0;
  double pr_power = 1.0;
  double interference_limit = 1.0;
  std::filesystem::path output_path;
  OutputFormat format = OutputFormat::Csv;

  /// Rayleigh network configuration for `network` (K left at the largest user count).
  NetworkConfig network_config(const NetworkKind& network) const;
};

/// Applies preset defaults (J = Q = P = Gamma = 1, Rayleigh fading) and checks
/// every constraint. Throws SpecError.
ExperimentSpec validate_spec(const RawOptions& raw);

struct TheoremBounds {
  double lower = 0.0;
  double upper = 0.0;
  double alpha = 1.0;
};

struct ResultRow {
  CurvePoint point;
  std::uint64_t seed = 0;
  std::optional<TheoremBounds> bounds;

  /// True when the estimate lies outside [lower - 3 SE, upper + 3 SE].
  bool violates_bounds() const;
};

struct ExperimentResult {
  std::vector<ResultRow> rows;
  bool with_bounds = false;
};

/// Runs every (network, K) point. `log` receives one line per network.
ExperimentResult compute_experiment(const ExperimentSpec& spec, std::ostream* log = nullptr);

void write_csv(std::ostream& out, const ExperimentResult& result);
void write_json(std::ostream& out, const ExperimentResult& result);

/// Exit codes of run_experiment.
inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitBoundViolation = 3;

/// Computes the experiment and writes the output file. Returns kExitOk,
/// kExitBoundViolation when a theorem-suite estimate leaves its sandwich, or
/// kExitError (with a diagnostic on `diag`) when the output cannot be written.
int run_experiment(const ExperimentSpec& spec, std::ostream& diag);

}  // namespace mid
