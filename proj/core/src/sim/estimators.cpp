#include "softwall/sim/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace softwall::sim {

namespace {

void require_paths(std::span<const PathRecord> paths, const char* what) {
  if (paths.empty()) throw std::invalid_argument(std::string(what) + ": no paths");
}

std::size_t bin_count(double bin_width, double t_max) {
  if (!(bin_width > 0.0)) throw std::invalid_argument("bin_width must be positive");
  if (!(t_max > 0.0)) throw std::invalid_argument("t_max must be positive");
  return static_cast<std::size_t>(std::ceil(t_max / bin_width - 1e-9));
}

BinnedEstimate make_bins(double bin_width, std::size_t n_bins) {
  BinnedEstimate out;
  out.bin_width = bin_width;
  out.centers.resize(n_bins);
  out.values.assign(n_bins, 0.0);
  out.stderrs.assign(n_bins, 0.0);
  for (std::size_t i = 0; i < n_bins; ++i) out.centers[i] = (static_cast<double>(i) + 0.5) * bin_width;
  return out;
}

}  // namespace

EmpiricalCdf::EmpiricalCdf(std::vector<double> samples) : sorted_(std::move(samples)) {
  if (sorted_.empty()) throw std::invalid_argument("EmpiricalCdf: empty sample");
  std::sort(sorted_.begin(), sorted_.end());
}

double EmpiricalCdf::operator()(double x) const {
  const auto below = std::upper_bound(sorted_.begin(), sorted_.end(), x) - sorted_.begin();
  return static_cast<double>(below) / static_cast<double>(sorted_.size());
}

EmpiricalCdf empirical_cdf(std::vector<double> samples) { return EmpiricalCdf(std::move(samples)); }

std::vector<double> states_at(std::span<const PathRecord> paths, double t) {
  require_paths(paths, "states_at");
  std::vector<double> out;
  out.reserve(paths.size());
  for (const auto& p : paths) out.push_back(p.state_at(t));
  return out;
}

std::size_t sub_cdf_count(std::span<const PathRecord> paths, std::size_t n, double x, double t) {
  require_paths(paths, "empirical_sub_cdf");
  std::size_t hits = 0;
  for (const auto& p : paths) {
    if (p.jump_count_at(t) == n && p.state_at(t) <= x) ++hits;
  }
  return hits;
}

double empirical_sub_cdf(std::span<const PathRecord> paths, std::size_t n, double x, double t) {
  return static_cast<double>(sub_cdf_count(paths, n, x, t)) / static_cast<double>(paths.size());
}

double BinnedEstimate::mass() const {
  double total = 0.0;
  for (double v : values) total += v * bin_width;
  return total;
}

BinnedEstimate empirical_jump_time_density(std::span<const PathRecord> paths, std::size_t n,
                                           double bin_width, double t_max) {
  require_paths(paths, "empirical_jump_time_density");
  if (n == 0) throw std::invalid_argument("empirical_jump_time_density: n must be >= 1");
  const std::size_t n_bins = bin_count(bin_width, t_max);
  BinnedEstimate out = make_bins(bin_width, n_bins);
  std::vector<std::size_t> counts(n_bins, 0);
  for (const auto& p : paths) {
    // A killed record's kill is its first jump.
    double tn = -1.0;
    if (p.jump_times.size() >= n) {
      tn = p.jump_times[n - 1];
    } else if (n == 1 && p.terminal == Terminal::KilledAtFirstJump) {
      tn = p.end_time;
    }
    if (tn < 0.0 || tn > t_max) continue;
    const auto bin = std::min(n_bins - 1, static_cast<std::size_t>(tn / bin_width));
    ++counts[bin];
  }
  const double n_paths = static_cast<double>(paths.size());
  for (std::size_t i = 0; i < n_bins; ++i) {
    const double p = static_cast<double>(counts[i]) / n_paths;
    out.values[i] = p / bin_width;
    out.stderrs[i] = binomial_stderr(p, paths.size()) / bin_width;
  }
  return out;
}

BinnedEstimate empirical_firing_rate(std::span<const PathRecord> paths, double bin_width,
                                     double t_max) {
  require_paths(paths, "empirical_firing_rate");
  const std::size_t n_bins = bin_count(bin_width, t_max);
  BinnedEstimate out = make_bins(bin_width, n_bins);
  std::vector<double> sum(n_bins, 0.0);
  std::vector<double> sum_sq(n_bins, 0.0);
  std::vector<double> per_path(n_bins, 0.0);
  for (const auto& p : paths) {
    std::fill(per_path.begin(), per_path.end(), 0.0);
    for (double tj : p.jump_times) {
      if (tj > t_max) break;
      per_path[std::min(n_bins - 1, static_cast<std::size_t>(tj / bin_width))] += 1.0;
    }
    if (p.terminal == Terminal::KilledAtFirstJump && p.end_time <= t_max) {
      per_path[std::min(n_bins - 1, static_cast<std::size_t>(p.end_time / bin_width))] += 1.0;
    }
    for (std::size_t i = 0; i < n_bins; ++i) {
      sum[i] += per_path[i];
      sum_sq[i] += per_path[i] * per_path[i];
    }
  }
  const double n_paths = static_cast<double>(paths.size());
  for (std::size_t i = 0; i < n_bins; ++i) {
    const double mean = sum[i] / n_paths;
    const double var = std::max(0.0, sum_sq[i] / n_paths - mean * mean);
    out.values[i] = mean / bin_width;
    out.stderrs[i] = std::sqrt(var / n_paths) / bin_width;
  }
  return out;
}

double empirical_jump_probability(std::span<const PathRecord> paths, std::size_t n, double t) {
  require_paths(paths, "empirical_jump_probability");
  std::size_t hits = 0;
  for (const auto& p : paths) {
    std::size_t count = p.jump_count_at(t);
    if (p.terminal == Terminal::KilledAtFirstJump && p.end_time <= t) ++count;
    if (count >= n) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(paths.size());
}

double binomial_stderr(double p, std::size_t n) {
  if (n == 0) throw std::invalid_argument("binomial_stderr: n must be positive");
  return std::sqrt(std::max(0.0, p * (1.0 - p)) / static_cast<double>(n));
}

}  // namespace softwall::sim
