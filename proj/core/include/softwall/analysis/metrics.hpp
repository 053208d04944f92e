#pragma once

#include <span>
#include <vector>

#include "softwall/fp/solver.hpp"

namespace softwall::analysis {

/// Density sampled on a physical grid.
struct DensityProfile {
  std::vector<double> x;
  std::vector<double> f;
};

/// Density at t = t_max of a solution, on its physical node grid.
DensityProfile final_profile(const fp::Solution& solution);

/// max_j |a_j - b_j|; throws std::invalid_argument on length mismatch or empty input.
double sup_distance(std::span<const double> a, std::span<const double> b);

/// Sup-norm density discrepancy; the two profiles must share their x grid.
double sup_discrepancy_density(const DensityProfile& a, const DensityProfile& b);

/// Sup-norm firing-rate discrepancy; the two series must share their time grid.
double sup_discrepancy_rate(const fp::FiringSeries& a, const fp::FiringSeries& b);

/// Sup-norm distance between two CDFs evaluated on one grid.
double kolmogorov_distance(std::span<const double> cdf_a, std::span<const double> cdf_b);

/// Trapezoid integral of phi(t) N(t); phi is sampled at the series' times.
double weighted_rate_integral(const fp::FiringSeries& rate, std::span<const double> phi);

/// Trapezoid integral of uniformly sampled values.
double trapezoid(std::span<const double> values, double step);

/// Running trapezoid integral; out[0] = 0.
std::vector<double> cumulative_trapezoid(std::span<const double> values, double step);

}  // namespace softwall::analysis
