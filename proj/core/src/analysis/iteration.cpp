#include "softwall/analysis/iteration.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace softwall::analysis {

SubCdfField convolve_subdensity(const SubCdfField& f_prev, std::span<const double> f_t1) {
  if (!(f_prev.dt > 0.0)) throw std::invalid_argument("convolve_subdensity: dt must be positive");
  if (f_prev.values.size() != f_t1.size() || f_t1.empty()) {
    throw std::invalid_argument("convolve_subdensity: f_T1 and F_prev must share the time grid");
  }
  const std::size_t width = f_prev.values.front().size();
  for (const auto& row : f_prev.values) {
    if (row.size() != width) throw std::invalid_argument("convolve_subdensity: ragged F_prev");
  }
  for (double v : f_t1) {
    if (v < 0.0 || !std::isfinite(v)) {
      throw std::invalid_argument("convolve_subdensity: f_T1 must be finite and nonnegative");
    }
  }

  const double dt = f_prev.dt;
  SubCdfField out;
  out.dt = dt;
  out.values.assign(f_t1.size(), std::vector<double>(width, 0.0));
  for (std::size_t i = 1; i < f_t1.size(); ++i) {
    auto& row = out.values[i];
    for (std::size_t s = 0; s <= i; ++s) {
      const double w = (s == 0 || s == i) ? 0.5 * dt : dt;
      const double ws = w * f_t1[s];
      if (ws == 0.0) continue;
      const auto& prev = f_prev.values[i - s];
      for (std::size_t j = 0; j < width; ++j) row[j] += ws * prev[j];
    }
  }
  return out;
}

std::vector<double> jump_time_cdf(std::span<const double> f_t1, double dt, std::size_t n) {
  if (n == 0) throw std::invalid_argument("jump_time_cdf: n must be at least 1");
  SubCdfField field;
  field.dt = dt;
  field.values.assign(f_t1.size(), std::vector<double>(1, 1.0));
  for (std::size_t k = 0; k < n; ++k) field = convolve_subdensity(field, f_t1);
  std::vector<double> out;
  out.reserve(field.values.size());
  for (const auto& row : field.values) out.push_back(row[0]);
  return out;
}

IterationCheck make_iteration_check(std::size_t n, std::vector<double> convolved,
                                    std::vector<double> empirical, std::vector<double> stderrs) {
  if (convolved.size() != empirical.size() || stderrs.size() != empirical.size() ||
      convolved.empty()) {
    throw std::invalid_argument("make_iteration_check: probe vectors must be nonempty and aligned");
  }
  IterationCheck check;
  check.n = n;
  double l1 = 0.0;
  double max_z = 0.0;
  for (std::size_t i = 0; i < convolved.size(); ++i) {
    const double diff = std::abs(convolved[i] - empirical[i]);
    l1 += diff;
    if (stderrs[i] > 0.0) {
      max_z = std::max(max_z, diff / stderrs[i]);
    } else if (diff > 0.0) {
      max_z = std::numeric_limits<double>::infinity();
    }
  }
  check.l1_error = l1 / static_cast<double>(convolved.size());
  check.max_z = max_z;
  check.convolved = std::move(convolved);
  check.empirical = std::move(empirical);
  check.stderrs = std::move(stderrs);
  return check;
}

}  // namespace softwall::analysis
