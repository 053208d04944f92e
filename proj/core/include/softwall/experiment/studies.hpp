#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "softwall/analysis/power_law.hpp"
#include "softwall/analysis/self_similar.hpp"
#include "softwall/experiment/config.hpp"
#include "softwall/experiment/csv.hpp"

namespace softwall::experiment {

/// A table together with its file name inside the output directory.
struct NamedTable {
  std::string file;
  CsvTable table;
};

struct RunOutput {
  std::vector<NamedTable> tables;
  /// False when any pass/fail row failed or a requested cell could not be computed.
  bool all_passed = true;

  const CsvTable* find(const std::string& file) const;
};

/// Writes the resolved config as `config.txt` and every table into config.output_dir.
void write_run(const ExperimentConfig& config, const RunOutput& output);

/// Literal marker used in place of a value that could not be computed.
inline constexpr const char* kFailed = "failed";

enum class Quantity { Density, DensityKilled, Rate, RateKilled };
inline constexpr std::array<Quantity, 4> kQuantities{Quantity::Density, Quantity::DensityKilled,
                                                     Quantity::Rate, Quantity::RateKilled};
/// "Df", "Df0", "DN", "DN0".
const char* to_string(Quantity q);

/// Discrepancies of one (b, k) cell; NaN entries mark a failed cell.
struct SweepCell {
  double b = 0.0;
  int k = 0;
  double delta = 1.0;
  std::array<double, 4> discrepancy{};
  std::string failure;

  double at(Quantity q) const { return discrepancy[static_cast<std::size_t>(q)]; }
};

/// Structure checks for one PDE solve. k = -1 marks a hard-wall reference.
struct SolveDiagnostics {
  double b = 0.0;
  int k = -1;
  fp::Mode mode = fp::Mode::DischargeFull;
  double min_density = 0.0;
  /// |M(t_max) - 1|, full modes only.
  double mass_drift = 0.0;
  /// Largest one-step mass increase, killed modes only.
  double max_mass_increase = 0.0;
  std::size_t clamps = 0;
  std::string failure;
};

struct RateFit {
  Quantity quantity = Quantity::Density;
  double b = 0.0;
  std::optional<analysis::ConvergenceReport> report;
  std::string failure;
};

struct ConvergenceStudy {
  std::vector<SweepCell> cells;
  std::vector<RateFit> fits;
  std::vector<SolveDiagnostics> diagnostics;
  RunOutput output;

  const RateFit* find(Quantity q, double b) const;
};

/// For every b and k: discharge (full and killed) against the hard-wall references at
/// t_max. Emits table1.csv, report_<quantity>_b<b>.csv per fit and diagnostics.csv.
ConvergenceStudy run_convergence_study(const ExperimentConfig& config);

struct SelfSimilarEntry {
  double b = 0.0;
  bool killed = false;
  std::optional<analysis::SelfSimilarFit> fit;
  std::string failure;
};

struct SelfSimilarStudy {
  std::vector<SelfSimilarEntry> entries;
  RunOutput output;

  const SelfSimilarEntry* find(double b, bool killed) const;
};

/// Self-similar fits over the fit window for the discharge and killed models.
/// Emits table2.csv, collapse.csv and profile_<model>_b<b>.csv.
SelfSimilarStudy run_self_similar_study(const ExperimentConfig& config);

struct ValidationRow {
  std::string check;
  double value = 0.0;
  double tolerance = 0.0;
  bool pass = false;
};

struct ValidationReport {
  std::vector<ValidationRow> rows;
  RunOutput output;

  const ValidationRow* find(const std::string& check) const;
};

/// Monte Carlo against PDE cross-checks at (config.delta, config.b); emits validation.csv.
ValidationReport run_validation_suite(const ExperimentConfig& config);

/// Path ensemble for config.model: paths.csv holds sampled states, jumps and kills of the
/// first config.trace_paths paths; summary.csv the binned firing rate.
RunOutput run_simulation(const ExperimentConfig& config);

/// One PDE solve of config.model: density.csv at every snapshot_every, firing.csv.
RunOutput run_solve(const ExperimentConfig& config);

/// Dispatches on config.experiment.
RunOutput run_experiment(const ExperimentConfig& config);

}  // namespace softwall::experiment
