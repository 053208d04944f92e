#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "softwall/sim/paths.hpp"

namespace softwall::sim {

/// Right-continuous empirical distribution function of a sample.
class EmpiricalCdf {
 public:
  /// Throws std::invalid_argument on an empty sample.
  explicit EmpiricalCdf(std::vector<double> samples);

  double operator()(double x) const;
  std::size_t size() const { return sorted_.size(); }
  std::span<const double> sorted_samples() const { return sorted_; }

 private:
  std::vector<double> sorted_;
};

EmpiricalCdf empirical_cdf(std::vector<double> samples);

/// States of every path at observation time t.
std::vector<double> states_at(std::span<const PathRecord> paths, double t);

/// Number of paths with X_t <= x and exactly n jumps in [0, t].
std::size_t sub_cdf_count(std::span<const PathRecord> paths, std::size_t n, double x, double t);

/// Estimate of F_n(x, t) = P(X_t <= x, n_t = n).
double empirical_sub_cdf(std::span<const PathRecord> paths, std::size_t n, double x, double t);

/// Binned estimate on [0, t_max]; bin i covers [i w, (i+1) w).
struct BinnedEstimate {
  double bin_width = 0.0;
  std::vector<double> centers;
  std::vector<double> values;
  std::vector<double> stderrs;

  /// Sum of values * bin_width.
  double mass() const;
};

/// Density of the n-th jump time T_n, normalized so the total mass equals the empirical
/// P(T_n <= t_max).
BinnedEstimate empirical_jump_time_density(std::span<const PathRecord> paths, std::size_t n,
                                           double bin_width, double t_max);

/// Firing-rate estimate (jumps in bin) / (paths * bin_width) with its standard error.
BinnedEstimate empirical_firing_rate(std::span<const PathRecord> paths, double bin_width,
                                     double t_max);

/// Fraction of paths with at least n jumps by time t.
double empirical_jump_probability(std::span<const PathRecord> paths, std::size_t n, double t);

/// Binomial standard error sqrt(p (1 - p) / n).
double binomial_stderr(double p, std::size_t n);

}  // namespace softwall::sim
