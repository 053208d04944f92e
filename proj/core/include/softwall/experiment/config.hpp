#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "softwall/analysis/power_law.hpp"
#include "softwall/fp/solver.hpp"
#include "softwall/sim/process.hpp"

namespace softwall::experiment {

enum class Experiment { Convergence, SelfSimilar, Validate, Simulate, Solve };

const char* to_string(Experiment e);
const char* to_string(sim::RateKind kind);

/// Raised by parse_config. `line()` is 0 for errors not tied to one line.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::size_t line, std::string key, const std::string& message);
  std::size_t line() const { return line_; }
  const std::string& key() const { return key_; }

 private:
  std::size_t line_;
  std::string key_;
};

struct ExperimentConfig {
  Experiment experiment = Experiment::Convergence;
  std::vector<double> b_values{1.0, 0.5, 0.0, -0.5, -1.0};
  analysis::KRange k_range{0, 7};
  analysis::KRange fit_window{4, 7};

  // PDE
  std::size_t n_cells = 1024;
  double tau = 1e-3;
  double t_max = 1.0;
  double x_min = -4.0;
  double x_max = 4.0;
  double x0 = -1.0;
  double sigma0 = 0.1;

  // Monte Carlo
  std::size_t paths = 100000;
  double dt = 1e-3;
  std::uint64_t seed = 1;
  std::size_t coupled_samples = 10000;
  double bin_width = 0.01;

  sim::RateKind rate_kind = sim::RateKind::Step;
  /// Single-run settings for `simulate` and `solve`.
  double delta = 0.125;
  double b = 0.0;
  fp::Mode model = fp::Mode::DischargeFull;
  std::size_t trace_paths = 100;
  double snapshot_every = 0.1;

  /// Worker threads for independent cells and path ensembles; 0 = hardware concurrency.
  unsigned threads = 0;
  std::string output_dir = "softwall-out";

  /// Throws ConfigError naming the offending key.
  void validate() const;

  bool operator==(const ExperimentConfig&) const = default;
};

/// Parses line-oriented `key = value` text; `#` starts a comment. Omitted keys keep
/// their defaults; unknown keys, malformed lines and invalid values raise ConfigError.
ExperimentConfig parse_config(std::string_view text);

/// Every key in canonical order; parse_config(serialize_config(c)) == c.
std::string serialize_config(const ExperimentConfig& config);

ExperimentConfig load_config(const std::string& path);

/// Solver settings for one (mode, delta, b) cell.
fp::SolverConfig solver_config(const ExperimentConfig& config, fp::Mode mode, double delta, double b);

}  // namespace softwall::experiment
