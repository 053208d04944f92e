#pragma once

#include <cstddef>
#include <vector>

namespace softwall::sim {

/// Shape of the discharge intensity above the firing threshold x = 1.
enum class RateKind {
  LinearRamp,  ///< 0 below 1, (x-1)/delta^2 on [1, 1+delta], 1/delta above.
  Step,        ///< 0 below 1, 1/delta at and above 1.
  Off,         ///< lambda == 0 everywhere; turns the discharge model into plain OU.
};

/// The random-discharge regularization together with the diffusion it acts on.
///
/// Between firings the membrane potential follows dX = (-X + b N(t)) dt + sqrt(2a) dB.
struct DischargeSpec {
  double delta = 0.125;
  RateKind rate_kind = RateKind::Step;
  double b = 0.0;   // connectivity
  double a = 1.0;   // diffusion coefficient
  double x0 = -1.0; // initial state

  /// Throws std::invalid_argument unless delta > 0 and a > 0 (both finite).
  void validate() const;
};

/// Exact transition of dX = -X dt + sqrt(2) dB over a step of length dt,
/// driven by the standard-normal draw xi.
double ou_step(double x, double dt, double xi);

/// Exact transition of dX = (-X + shift) dt + sqrt(2a) dB with shift frozen over the step.
double ou_transition(double x, double dt, double xi, double a, double shift);

/// Discharge intensity lambda^delta(x).
double discharge_rate(double x, const DischargeSpec& spec);

/// Integral of lambda^delta along the straight segment z(s) = z0 + (z1 - z0) s / dt
/// for s in [0, frac * dt].
double segment_hazard(double z0, double z1, double dt, double frac, const DischargeSpec& spec);

/// Piecewise-constant mean-field input N(t) used in the drift when b != 0.
///
/// values[i] holds N on [i*dt, (i+1)*dt); beyond the last entry the last value is held.
/// An empty drive reads as N == 0.
struct MeanFieldDrive {
  double dt = 0.0;
  std::vector<double> values;

  double at(double t) const;
  bool empty() const { return values.empty(); }
};

}  // namespace softwall::sim
