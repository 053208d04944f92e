#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "softwall/sim/process.hpp"
#include "softwall/sim/rng.hpp"

namespace softwall::sim {

enum class Terminal { Survived, KilledAtFirstJump };

/// One simulated trajectory.
///
/// `states[i]` is the state at `times[i]` (the requested observation instants that fall
/// before the record ends). `reset_states[i]` is the simulator state immediately after the
/// jump at `jump_times[i]`; `end_state` is the state when the record stops (for a killed
/// record, the pre-jump state at the kill). A killed record keeps `jump_times` empty and
/// stores the kill instant T_1 in `end_time`.
struct PathRecord {
  std::vector<double> times;
  std::vector<double> states;
  std::vector<double> jump_times;
  std::vector<double> reset_states;
  Terminal terminal = Terminal::Survived;
  double end_time = 0.0;
  double end_state = 0.0;

  /// Number of jumps in [0, t]; right-continuous.
  std::size_t jump_count_at(double t) const;

  /// State at an observation instant. Throws std::out_of_range if `t` was not observed.
  double state_at(double t) const;
  bool observed_at(double t) const;
};

/// Monte Carlo settings shared by the path simulators.
struct SimConfig {
  DischargeSpec spec;
  double dt = 1e-3;
  double t_max = 1.0;
  /// > 0 draws the start from N(spec.x0, x0_sigma^2) instead of starting at spec.x0.
  double x0_sigma = 0.0;
  /// Instants at which the state is recorded; rounded to the nearest step.
  std::vector<double> observe_times;
  /// N(t) for the b * N(t) drift term; ignored when b == 0.
  MeanFieldDrive drive;

  void validate() const;
};

/// Hard-wall integrate-and-fire path: resets to 0 whenever the state reaches 1.
PathRecord simulate_hard_wall(const SimConfig& config, StreamId id);

/// Random-discharge path: fires at rate lambda^delta(x) and resets to 0.
PathRecord simulate_discharge(const SimConfig& config, StreamId id);

/// Random-discharge path stopped at its first firing.
PathRecord simulate_killed_discharge(const SimConfig& config, StreamId id);

/// First firing times of the hard-wall and the discharge mechanism driven by the same
/// OU path; censored times are +infinity.
struct CoupledSample {
  double t_hard = std::numeric_limits<double>::infinity();
  double t_soft = std::numeric_limits<double>::infinity();
  double gamma = 0.0;

  bool hard_censored() const { return t_hard == std::numeric_limits<double>::infinity(); }
  bool soft_censored() const { return t_soft == std::numeric_limits<double>::infinity(); }
};

struct CoupledConfig {
  double delta = 0.125;
  RateKind rate_kind = RateKind::Step;
  double dt = 1e-3;
  double t_max = 1.0;
  /// Overrides the Exp(1) clock when set.
  std::optional<double> forced_gamma;
};

/// Runs one OU path from 0; t_hard is its first passage through 1, t_soft the first time
/// after t_hard at which the integrated intensity along the (piecewise-linear) path
/// reaches the exponential clock.
CoupledSample simulate_coupled_first_jumps(const CoupledConfig& config, StreamId id);

enum class PathModel { HardWall, Discharge, KilledDischarge };

/// Simulates `n_paths` independent paths with streams (seed, 0..n_paths-1).
/// The result is ordered by path index and independent of `threads`.
std::vector<PathRecord> simulate_ensemble(PathModel model, const SimConfig& config,
                                          std::uint64_t seed, std::size_t n_paths,
                                          unsigned threads = 0);

std::vector<CoupledSample> simulate_coupled_ensemble(const CoupledConfig& config,
                                                     std::uint64_t seed, std::size_t n_samples,
                                                     unsigned threads = 0);

}  // namespace softwall::sim
