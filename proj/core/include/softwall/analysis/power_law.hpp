#pragma once

#include <span>
#include <vector>

namespace softwall::analysis {

/// Inclusive range of refinement levels k, delta = 2^-k.
struct KRange {
  int first = 0;
  int last = 7;

  bool contains(int k) const { return k >= first && k <= last; }
  std::size_t count() const { return last >= first ? static_cast<std::size_t>(last - first + 1) : 0; }
  bool operator==(const KRange&) const = default;
};

/// D(delta) ~ prefactor * delta^rate, fitted by least squares in log-log space.
struct PowerLawFit {
  double rate = 0.0;
  double prefactor = 0.0;
  /// RMS of the log-space residuals.
  double residual = 0.0;
};

/// Least-squares line through (log delta_i, log value_i) for i in [first, last].
/// Throws std::invalid_argument on fewer than two points or a nonpositive value/delta.
PowerLawFit fit_power_law(std::span<const double> deltas, std::span<const double> values,
                          std::size_t first, std::size_t last);

/// Ordinary least-squares slope/intercept with RMS residual.
struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double residual = 0.0;
};

LineFit fit_line(std::span<const double> x, std::span<const double> y);

/// Discrepancies of one quantity across a delta sweep together with its fitted rate.
struct ConvergenceReport {
  std::vector<int> ks;
  std::vector<double> deltas;
  std::vector<double> discrepancies;
  KRange fit_window{4, 7};
  PowerLawFit fit;

  bool in_fit_window(std::size_t i) const { return fit_window.contains(ks[i]); }
};

/// Builds the report and fits over the levels in `window`.
ConvergenceReport make_convergence_report(std::vector<int> ks, std::vector<double> discrepancies,
                                          KRange window);

}  // namespace softwall::analysis
