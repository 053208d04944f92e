#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace softwall::analysis {

/// Sub-distribution F(x, t) sampled on a uniform time grid t_i = i dt; values[i][j] is
/// the value at t_i and the j-th spatial point.
struct SubCdfField {
  double dt = 0.0;
  std::vector<std::vector<double>> values;
};

/// F_n(x, t_i) = integral over [0, t_i] of F_prev(x, t_i - s) f_T1(s) ds by the trapezoid rule.
/// f_T1 is sampled on the same time grid as F_prev.
/// Throws std::invalid_argument on mismatched grids, dt <= 0 or a negative f_T1 sample.
SubCdfField convolve_subdensity(const SubCdfField& f_prev, std::span<const double> f_t1);

/// P(T_n <= t_i) from the n-fold convolution of f_T1 (n >= 1).
std::vector<double> jump_time_cdf(std::span<const double> f_t1, double dt, std::size_t n);

/// Iterated sub-distribution against its Monte Carlo counterpart at matched probes.
struct IterationCheck {
  std::size_t n = 0;
  std::vector<double> convolved;
  std::vector<double> empirical;
  std::vector<double> stderrs;
  /// Mean absolute difference over the probes.
  double l1_error = 0.0;
  /// Largest |convolved - empirical| / stderr; infinite when a stderr is zero and the values differ.
  double max_z = 0.0;

  bool within(double z_limit) const { return max_z <= z_limit; }
};

IterationCheck make_iteration_check(std::size_t n, std::vector<double> convolved,
                                    std::vector<double> empirical, std::vector<double> stderrs);

}  // namespace softwall::analysis
