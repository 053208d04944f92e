#include "softwall/analysis/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace softwall::analysis {

DensityProfile final_profile(const fp::Solution& solution) {
  const auto x = solution.grid.x();
  return DensityProfile{std::vector<double>(x.begin(), x.end()), solution.final_state.q};
}

double sup_distance(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty()) {
    throw std::invalid_argument("sup_distance: inputs must be nonempty and of equal length");
  }
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

double sup_discrepancy_density(const DensityProfile& a, const DensityProfile& b) {
  if (a.x != b.x || a.f.size() != a.x.size() || b.f.size() != b.x.size()) {
    throw std::invalid_argument("sup_discrepancy_density: profiles must share one grid");
  }
  return sup_distance(a.f, b.f);
}

double sup_discrepancy_rate(const fp::FiringSeries& a, const fp::FiringSeries& b) {
  if (a.times.size() != b.times.size() || a.values.size() != a.times.size() ||
      b.values.size() != b.times.size()) {
    throw std::invalid_argument("sup_discrepancy_rate: series must share one time grid");
  }
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    if (std::abs(a.times[i] - b.times[i]) > 1e-12 * std::max(1.0, std::abs(a.times[i]))) {
      throw std::invalid_argument("sup_discrepancy_rate: series must share one time grid");
    }
  }
  return sup_distance(a.values, b.values);
}

double kolmogorov_distance(std::span<const double> cdf_a, std::span<const double> cdf_b) {
  if (cdf_a.size() != cdf_b.size() || cdf_a.empty()) {
    throw std::invalid_argument("kolmogorov_distance: CDFs must be evaluated on one grid");
  }
  return sup_distance(cdf_a, cdf_b);
}

double weighted_rate_integral(const fp::FiringSeries& rate, std::span<const double> phi) {
  if (phi.size() != rate.times.size() || rate.values.size() != rate.times.size()) {
    throw std::invalid_argument("weighted_rate_integral: phi must be sampled on the series' times");
  }
  double total = 0.0;
  for (std::size_t i = 1; i < phi.size(); ++i) {
    const double dt = rate.times[i] - rate.times[i - 1];
    total += 0.5 * dt * (phi[i - 1] * rate.values[i - 1] + phi[i] * rate.values[i]);
  }
  return total;
}

double trapezoid(std::span<const double> values, double step) {
  if (values.size() < 2) return 0.0;
  double total = 0.5 * (values.front() + values.back());
  for (std::size_t i = 1; i + 1 < values.size(); ++i) total += values[i];
  return total * step;
}

std::vector<double> cumulative_trapezoid(std::span<const double> values, double step) {
  std::vector<double> out(values.size(), 0.0);
  for (std::size_t i = 1; i < values.size(); ++i) {
    out[i] = out[i - 1] + 0.5 * step * (values[i - 1] + values[i]);
  }
  return out;
}

}  // namespace softwall::analysis
