#include "softwall/sim/process.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

namespace softwall::sim {

void DischargeSpec::validate() const {
  if (!(std::isfinite(delta) && delta > 0.0)) {
    throw std::invalid_argument("DischargeSpec: delta must be positive and finite");
  }
  if (!(std::isfinite(a) && a > 0.0)) {
    throw std::invalid_argument("DischargeSpec: a must be positive and finite");
  }
  if (!std::isfinite(b) || !std::isfinite(x0)) {
    throw std::invalid_argument("DischargeSpec: b and x0 must be finite");
  }
}

double ou_transition(double x, double dt, double xi, double a, double shift) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("ou_transition: dt must be positive");
  }
  const double decay = std::exp(-dt);
  // -expm1(-2dt) keeps the variance accurate for tiny steps.
  const double sd = std::sqrt(-a * std::expm1(-2.0 * dt));
  return decay * x - shift * std::expm1(-dt) + sd * xi;
}

double ou_step(double x, double dt, double xi) {
  if (!(dt > 0.0)) {
    throw std::invalid_argument("ou_step: dt must be positive");
  }
  return ou_transition(x, dt, xi, 1.0, 0.0);
}

double discharge_rate(double x, const DischargeSpec& spec) {
  switch (spec.rate_kind) {
    case RateKind::Off:
      return 0.0;
    case RateKind::Step:
      return x >= 1.0 ? 1.0 / spec.delta : 0.0;
    case RateKind::LinearRamp:
      if (x <= 1.0) return 0.0;
      if (x >= 1.0 + spec.delta) return 1.0 / spec.delta;
      return (x - 1.0) / (spec.delta * spec.delta);
  }
  return 0.0;
}

double segment_hazard(double z0, double z1, double dt, double frac, const DischargeSpec& spec) {
  if (frac <= 0.0 || spec.rate_kind == RateKind::Off) return 0.0;
  frac = std::min(frac, 1.0);

  // Split [0, frac] where the segment crosses a kink of lambda; on each piece the
  // integrand is affine in u, so the trapezoid rule is exact.
  std::array<double, 4> cuts{0.0, frac, frac, frac};
  std::size_t n_cuts = 1;
  const double slope = z1 - z0;
  auto add_cut = [&](double level) {
    if (slope == 0.0) return;
    const double u = (level - z0) / slope;
    if (u > 0.0 && u < frac) cuts[n_cuts++] = u;
  };
  add_cut(1.0);
  if (spec.rate_kind == RateKind::LinearRamp) add_cut(1.0 + spec.delta);
  cuts[n_cuts++] = frac;
  std::sort(cuts.begin(), cuts.begin() + static_cast<std::ptrdiff_t>(n_cuts));

  const double inv_delta = 1.0 / spec.delta;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < n_cuts; ++i) {
    const double ua = cuts[i];
    const double ub = cuts[i + 1];
    const double len = ub - ua;
    if (len <= 0.0) continue;
    const double zm = z0 + slope * 0.5 * (ua + ub);
    if (spec.rate_kind == RateKind::Step) {
      if (zm >= 1.0) total += inv_delta * len;
      continue;
    }
    if (zm <= 1.0) continue;
    if (zm >= 1.0 + spec.delta) {
      total += inv_delta * len;
      continue;
    }
    const double za = z0 + slope * ua;
    const double zb = z0 + slope * ub;
    total += 0.5 * ((za - 1.0) + (zb - 1.0)) * inv_delta * inv_delta * len;
  }
  return total * dt;
}

double MeanFieldDrive::at(double t) const {
  if (values.empty()) return 0.0;
  if (!(dt > 0.0) || t <= 0.0) return values.front();
  const auto idx = static_cast<std::size_t>(std::floor(t / dt + 1e-9));
  return values[std::min(idx, values.size() - 1)];
}

}  // namespace softwall::sim
