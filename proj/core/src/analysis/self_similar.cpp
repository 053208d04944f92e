#include "softwall/analysis/self_similar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "softwall/analysis/power_law.hpp"

namespace softwall::analysis {

namespace {

double interp(const std::vector<double>& xs, const std::vector<double>& ys, double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return ys.front();
  if (it == xs.end()) return ys.back();
  const std::size_t i = static_cast<std::size_t>(it - xs.begin());
  const double w = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return (1.0 - w) * ys[i - 1] + w * ys[i];
}

void check_member(const SuperThresholdDensity& d) {
  if (d.x.size() != d.f.size() || d.x.size() < 2) {
    throw std::invalid_argument("self-similar fit: each member needs at least two x >= 1 samples");
  }
  if (!(d.delta > 0.0)) throw std::invalid_argument("self-similar fit: delta must be positive");
  for (std::size_t i = 0; i < d.x.size(); ++i) {
    if (d.x[i] < 1.0) throw std::invalid_argument("self-similar fit: samples must satisfy x >= 1");
    if (i > 0 && d.x[i] <= d.x[i - 1]) {
      throw std::invalid_argument("self-similar fit: x samples must increase");
    }
  }
}

}  // namespace

SuperThresholdDensity restrict_to_super_threshold(double delta, const DensityProfile& profile) {
  if (profile.x.size() != profile.f.size()) {
    throw std::invalid_argument("restrict_to_super_threshold: x/f size mismatch");
  }
  SuperThresholdDensity out;
  out.delta = delta;
  for (std::size_t i = 0; i < profile.x.size(); ++i) {
    if (profile.x[i] >= 1.0) {
      out.x.push_back(profile.x[i]);
      out.f.push_back(profile.f[i]);
    }
  }
  return out;
}

RescaledProfile extract_profile(const SuperThresholdDensity& density, double alpha, double beta) {
  check_member(density);
  RescaledProfile p;
  p.delta = density.delta;
  const double zscale = std::pow(density.delta, beta);
  const double fscale = std::pow(density.delta, -alpha);
  p.z.reserve(density.x.size());
  p.psi.reserve(density.x.size());
  for (std::size_t i = 0; i < density.x.size(); ++i) {
    p.z.push_back(zscale * (density.x[i] - 1.0));
    p.psi.push_back(fscale * density.f[i]);
  }
  return p;
}

double profile_collapse_error(const std::vector<RescaledProfile>& profiles,
                              std::optional<ZWindow> window, std::size_t samples) {
  if (profiles.empty()) throw std::invalid_argument("profile_collapse_error: no profiles");
  double lo = -INFINITY;
  double hi = INFINITY;
  for (const auto& p : profiles) {
    if (p.z.size() != p.psi.size() || p.z.empty()) {
      throw std::invalid_argument("profile_collapse_error: malformed profile");
    }
    lo = std::max(lo, p.z.front());
    hi = std::min(hi, p.z.back());
  }
  if (window) {
    lo = std::max(lo, window->lo);
    hi = std::min(hi, window->hi);
  }
  if (!(hi >= lo)) throw std::invalid_argument("profile_collapse_error: empty overlap window");
  if (profiles.size() == 1) return 0.0;

  const std::size_t n = std::max<std::size_t>(samples, 2);
  double worst = 0.0;
  for (std::size_t s = 0; s < n; ++s) {
    const double z = lo + (hi - lo) * static_cast<double>(s) / static_cast<double>(n - 1);
    double vmax = -INFINITY;
    double vmin = INFINITY;
    for (const auto& p : profiles) {
      const double v = interp(p.z, p.psi, z);
      vmax = std::max(vmax, v);
      vmin = std::min(vmin, v);
    }
    if (vmax > 0.0) worst = std::max(worst, (vmax - vmin) / vmax);
  }
  return worst;
}

ZWindow bulk_window(const std::vector<RescaledProfile>& profiles, double floor) {
  if (!(floor > 0.0 && floor < 1.0)) throw std::invalid_argument("bulk_window: floor must lie in (0, 1)");
  if (profiles.empty()) throw std::invalid_argument("bulk_window: no profiles");
  double peak = 0.0;
  for (const auto& p : profiles) {
    if (p.z.size() != p.psi.size() || p.z.empty()) throw std::invalid_argument("bulk_window: malformed profile");
    peak = std::max(peak, *std::max_element(p.psi.begin(), p.psi.end()));
  }
  const double level = floor * peak;
  double zc = INFINITY;
  for (const auto& p : profiles) {
    double last = p.z.front();
    for (std::size_t i = 0; i < p.z.size(); ++i) {
      if (p.psi[i] < level) {
        if (i > 0) {
          const double w = (p.psi[i - 1] - level) / (p.psi[i - 1] - p.psi[i]);
          last = p.z[i - 1] + w * (p.z[i] - p.z[i - 1]);
        }
        break;
      }
      last = p.z[i];
    }
    zc = std::min(zc, last);
  }
  return ZWindow{0.0, zc};
}

SelfSimilarFit fit_self_similar(const std::vector<SuperThresholdDensity>& family, double bulk_floor) {
  if (family.size() < 3) throw std::invalid_argument("fit_self_similar: need at least three deltas");
  std::vector<double> log_delta;
  std::vector<double> log_sup;
  std::vector<double> log_width;
  for (const auto& d : family) {
    check_member(d);
    const double sup = *std::max_element(d.f.begin(), d.f.end());
    if (!(sup > 0.0) || !std::isfinite(sup)) {
      throw std::invalid_argument("fit_self_similar: restriction to x >= 1 vanishes");
    }
    double mass = 0.0;
    for (std::size_t i = 1; i < d.x.size(); ++i) {
      mass += 0.5 * (d.x[i] - d.x[i - 1]) * (d.f[i] + d.f[i - 1]);
    }
    log_delta.push_back(std::log(d.delta));
    log_sup.push_back(std::log(sup));
    log_width.push_back(std::log(mass / sup));
  }
  const LineFit sup_fit = fit_line(log_delta, log_sup);
  const LineFit width_fit = fit_line(log_delta, log_width);

  SelfSimilarFit fit;
  fit.alpha = sup_fit.slope;
  fit.beta = -width_fit.slope;
  fit.alpha_residual = sup_fit.residual;
  fit.beta_residual = width_fit.residual;
  for (const auto& d : family) fit.profiles.push_back(extract_profile(d, fit.alpha, fit.beta));
  fit.collapse_error = profile_collapse_error(fit.profiles, bulk_window(fit.profiles, bulk_floor));
  return fit;
}

}  // namespace softwall::analysis
