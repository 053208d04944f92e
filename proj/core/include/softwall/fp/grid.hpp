#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace softwall::fp {

/// Uniform grid in the logistic coordinate y = 1 / (1 + exp(-(x - 1))).
///
/// The spacing is chosen so that both the reset point y_r = h_L(0) and the threshold
/// y_F = h_L(1) = 1/2 are nodes; the outermost nodes are the largest/smallest ones that
/// stay inside [h_L(x_min), h_L(x_max)] and carry homogeneous Dirichlet data.
class LogisticGrid {
 public:
  /// h_L
  static double to_logistic(double x);
  /// g_L, the inverse of h_L
  static double to_physical(double y);
  /// g_L'(y) = 1 / (y - y^2)
  static double metric(double y);

  /// `n_cells` is a target; the built grid has within a couple of cells of it.
  /// Throws std::invalid_argument unless x_min < 0 < 1 < x_max and n_cells >= 16.
  LogisticGrid(double x_min, double x_max, std::size_t n_cells);

  std::size_t size() const { return y_.size(); }
  std::size_t n_cells() const { return y_.size() - 1; }
  double h() const { return h_; }
  double x_min() const { return x_min_; }
  double x_max() const { return x_max_; }

  std::span<const double> y() const { return y_; }
  std::span<const double> x() const { return x_; }
  std::span<const double> metric_nodes() const { return metric_; }
  /// Half nodes y_{j+1/2}, j = 0..size()-2, their physical images and metric.
  std::span<const double> y_half() const { return y_half_; }
  std::span<const double> x_half() const { return x_half_; }
  std::span<const double> metric_half() const { return metric_half_; }

  /// Index D with y_D = h_L(0).
  std::size_t reset_index() const { return reset_; }
  /// Index F with y_F = 1/2, i.e. x_F = 1.
  std::size_t threshold_index() const { return threshold_; }

 private:
  double x_min_;
  double x_max_;
  double h_ = 0.0;
  std::size_t reset_ = 0;
  std::size_t threshold_ = 0;
  std::vector<double> y_, x_, metric_;
  std::vector<double> y_half_, x_half_, metric_half_;
};

LogisticGrid build_logistic_grid(double x_min, double x_max, std::size_t n_cells);

}  // namespace softwall::fp
