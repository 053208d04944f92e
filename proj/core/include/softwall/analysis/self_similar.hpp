#pragma once

#include <optional>
#include <vector>

#include "softwall/analysis/metrics.hpp"

namespace softwall::analysis {

/// f^delta restricted to x >= 1.
struct SuperThresholdDensity {
  double delta = 0.0;
  std::vector<double> x;
  std::vector<double> f;
};

/// Restriction of a node profile to x >= 1.
SuperThresholdDensity restrict_to_super_threshold(double delta, const DensityProfile& profile);

/// Rescaled profile psi(z) = delta^-alpha f^delta(1 + delta^-beta z).
struct RescaledProfile {
  double delta = 0.0;
  std::vector<double> z;
  std::vector<double> psi;
};

struct ZWindow {
  double lo = 0.0;
  double hi = 0.0;
};

/// Parameters of the ansatz f^delta(x) ~ delta^alpha psi(delta^beta (x - 1)) on x >= 1.
struct SelfSimilarFit {
  double alpha = 0.0;
  double beta = 0.0;
  double alpha_residual = 0.0;
  double beta_residual = 0.0;
  std::vector<RescaledProfile> profiles;
  double collapse_error = 0.0;
};

RescaledProfile extract_profile(const SuperThresholdDensity& density, double alpha, double beta);

/// Largest relative spread (max - min) / max of psi across profiles, on a uniform z
/// sampling of the window. Without a window the whole common z range is used.
/// Throws std::invalid_argument when the profiles share no z range.
double profile_collapse_error(const std::vector<RescaledProfile>& profiles,
                              std::optional<ZWindow> window = std::nullopt,
                              std::size_t samples = 201);

/// [0, z_c] with z_c the largest z such that every profile stays at or above
/// floor * (largest psi over all profiles) on [0, z_c]. Throws on floor outside (0, 1).
ZWindow bulk_window(const std::vector<RescaledProfile>& profiles, double floor);

/// alpha is the log-log slope of sup f^delta against delta; with the width
/// w = (integral of f^delta over x >= 1) / sup f^delta, beta is minus the slope of log w.
/// Needs at least three members, each with a positive sup. The collapse error is
/// measured on bulk_window(profiles, bulk_floor).
SelfSimilarFit fit_self_similar(const std::vector<SuperThresholdDensity>& family,
                                double bulk_floor = 0.05);

}  // namespace softwall::analysis
