#include "softwall/fp/grid.hpp"

#include <cmath>
#include <stdexcept>

namespace softwall::fp {

double LogisticGrid::to_logistic(double x) { return 1.0 / (1.0 + std::exp(-(x - 1.0))); }

double LogisticGrid::to_physical(double y) { return 1.0 + std::log(y / (1.0 - y)); }

double LogisticGrid::metric(double y) { return 1.0 / (y - y * y); }

LogisticGrid::LogisticGrid(double x_min, double x_max, std::size_t n_cells)
    : x_min_(x_min), x_max_(x_max) {
  if (!(x_min < 0.0 && x_max > 1.0) || !std::isfinite(x_min) || !std::isfinite(x_max)) {
    throw std::invalid_argument(
        "LogisticGrid: need x_min < 0 < 1 < x_max so that reset and threshold are interior");
  }
  if (n_cells < 16) throw std::invalid_argument("LogisticGrid: n_cells must be at least 16");

  const double y_lo = to_logistic(x_min);
  const double y_hi = to_logistic(x_max);
  const double y_reset = to_logistic(0.0);
  const double y_wall = 0.5;

  const auto between = static_cast<std::size_t>(
      std::max(1.0, std::round(static_cast<double>(n_cells) * (y_wall - y_reset) / (y_hi - y_lo))));
  h_ = (y_wall - y_reset) / static_cast<double>(between);
  const auto below = static_cast<std::size_t>(std::floor((y_reset - y_lo) / h_ + 1e-12));
  const auto above = static_cast<std::size_t>(std::floor((y_hi - y_wall) / h_ + 1e-12));
  if (below < 1 || above < 1) {
    throw std::invalid_argument("LogisticGrid: domain too narrow for the requested resolution");
  }
  reset_ = below;
  threshold_ = below + between;
  const std::size_t n_nodes = below + between + above + 1;

  // Nodes are laid out from the nearest anchor so that y_D and y_F are exact.
  y_.resize(n_nodes);
  for (std::size_t j = 0; j < n_nodes; ++j) {
    if (j <= threshold_ - between / 2) {
      y_[j] = y_reset + (static_cast<double>(j) - static_cast<double>(reset_)) * h_;
    } else {
      y_[j] = y_wall + (static_cast<double>(j) - static_cast<double>(threshold_)) * h_;
    }
  }
  y_[reset_] = y_reset;
  y_[threshold_] = y_wall;

  x_.resize(n_nodes);
  metric_.resize(n_nodes);
  for (std::size_t j = 0; j < n_nodes; ++j) {
    x_[j] = to_physical(y_[j]);
    metric_[j] = metric(y_[j]);
  }
  x_[threshold_] = 1.0;
  x_[reset_] = 0.0;

  y_half_.resize(n_nodes - 1);
  x_half_.resize(n_nodes - 1);
  metric_half_.resize(n_nodes - 1);
  for (std::size_t j = 0; j + 1 < n_nodes; ++j) {
    y_half_[j] = 0.5 * (y_[j] + y_[j + 1]);
    x_half_[j] = to_physical(y_half_[j]);
    metric_half_[j] = metric(y_half_[j]);
  }
}

LogisticGrid build_logistic_grid(double x_min, double x_max, std::size_t n_cells) {
  return LogisticGrid(x_min, x_max, n_cells);
}

}  // namespace softwall::fp
