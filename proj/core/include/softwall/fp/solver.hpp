#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "softwall/fp/grid.hpp"
#include "softwall/fp/tridiagonal.hpp"
#include "softwall/sim/process.hpp"

namespace softwall::fp {

enum class Mode {
  DischargeFull,    ///< random discharge with reinjection at the reset point
  DischargeKilled,  ///< random discharge, no reinjection: mass is the survival probability
  HardWallFull,     ///< absorbing wall at x = 1 with reinjection
  HardWallKilled,   ///< absorbing wall at x = 1, no reinjection
};

const char* to_string(Mode mode);
bool is_hard_wall(Mode mode);
bool is_killed(Mode mode);

struct InitialDatum {
  enum class Kind {
    Gaussian,      ///< N(mean, sigma^2) sampled at the nodes
    PointAtReset,  ///< discrete unit mass on the reset node
  };
  Kind kind = Kind::Gaussian;
  double mean = -1.0;
  double sigma = 0.1;
};

struct SolverConfig {
  sim::DischargeSpec spec;
  Mode mode = Mode::DischargeFull;
  std::size_t n_cells = 1024;
  double tau = 1e-3;
  double t_max = 1.0;
  double x_min = -4.0;
  double x_max = 4.0;
  InitialDatum initial;
  /// Density snapshots are kept at these instants (rounded to steps) and at t_max.
  std::vector<double> snapshot_times;

  /// Throws std::invalid_argument on tau <= 0, t_max <= 0 or n_cells < 16.
  void validate() const;
  std::size_t n_steps() const;
};

/// Mean firing rate sampled at t_m = m tau.
struct FiringSeries {
  std::vector<double> times;
  std::vector<double> values;
};

/// Density in logistic coordinates: the physical density is f(x) = q(h_L(x)).
struct DensityState {
  std::vector<double> q;
  double t = 0.0;
  FiringSeries firing;
};

/// A hard-wall boundary rate that came out negative and was clamped to zero.
struct RateClamp {
  std::size_t step = 0;
  double raw = 0.0;
};

struct Snapshot {
  double t = 0.0;
  std::vector<double> q;
};

struct Solution {
  LogisticGrid grid;
  SolverConfig config;
  std::vector<Snapshot> snapshots;
  FiringSeries firing;
  /// total_mass at every t_m.
  std::vector<double> mass;
  DensityState final_state;
  std::vector<RateClamp> clamps;
  /// Smallest nodal density over every time level.
  double min_density = 0.0;

  /// Physical density f at the nodes for the last snapshot.
  std::vector<double> final_density() const { return final_state.q; }
};

/// Non-finite data met while assembling or stepping.
class SolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Scharfetter-Gummel weight exp(-(x - b N)^2 / (2a)).
double maxwellian(double x, double n_prev, const sim::DischargeSpec& spec);

DensityState initial_state(const LogisticGrid& grid, const SolverConfig& config);

/// Implicit system for q^{m+1} given q^m, with the firing rate frozen at n_prev.
///
/// Rows of Dirichlet nodes (both domain ends, and for hard-wall modes every node at or
/// beyond x = 1) are identity rows with zero right-hand side.
TridiagonalSystem assemble_sg_system(const DensityState& state, double n_prev,
                                     const LogisticGrid& grid, const SolverConfig& config);

/// Discrete SG flux a M_{j+1/2}/g'_{j+1/2} (q_{j+1}/M_{j+1} - q_j/M_j) / h at every half node.
std::vector<double> sg_half_fluxes(const std::vector<double>& q, double n_prev,
                                   const LogisticGrid& grid, const sim::DischargeSpec& spec);

/// h sum_j g'(y_j) lambda(g_L(y_j)) q_j.
double firing_rate_quadrature(const std::vector<double>& q, const LogisticGrid& grid,
                              const sim::DischargeSpec& spec);

/// -a f'(1-) from the quadratic through (1, 0) and the two interior nodes below the wall.
double hard_wall_boundary_rate(const std::vector<double>& q, const LogisticGrid& grid, double a);

/// h sum_j g'(y_j) q_j.
double total_mass(const std::vector<double>& q, const LogisticGrid& grid);

/// Linear interpolation of q in y at the physical point x.
/// Throws std::invalid_argument outside [x_0, x_J].
double interp_density(const std::vector<double>& q, const LogisticGrid& grid, double x);

/// Cumulative distribution at the nodes: trapezoid rule of g' q in y.
std::vector<double> cdf_at_nodes(const std::vector<double>& q, const LogisticGrid& grid);

/// Advances one step of length tau. Computes N_m from the current state, appends
/// (t_m, N_m) to the firing history, solves for q^{m+1} and returns N_m.
double step_semi_implicit(DensityState& state, const LogisticGrid& grid, const SolverConfig& config,
                          std::vector<RateClamp>* clamps = nullptr, std::size_t step_index = 0);

/// Runs a DischargeFull or DischargeKilled solve to t_max.
Solution solve_discharge_fp(const SolverConfig& config);

/// Runs a HardWallFull or HardWallKilled solve to t_max.
Solution solve_hard_wall_fp(const SolverConfig& config);

/// Dispatches on config.mode.
Solution solve_fp(const SolverConfig& config);

}  // namespace softwall::fp
