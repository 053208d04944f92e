#include "softwall/fp/solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace softwall::fp {

namespace {

double rate_now(const DensityState& state, const LogisticGrid& grid, const SolverConfig& config,
                std::vector<RateClamp>* clamps, std::size_t step) {
  if (!is_hard_wall(config.mode)) return firing_rate_quadrature(state.q, grid, config.spec);
  const double raw = hard_wall_boundary_rate(state.q, grid, config.spec.a);
  if (raw >= 0.0) return raw;
  if (clamps != nullptr) clamps->push_back({step, raw});
  return 0.0;
}

/// Last node index (exclusive) whose value is solved for.
std::size_t active_end(const LogisticGrid& grid, Mode mode) {
  return is_hard_wall(mode) ? grid.threshold_index() : grid.size() - 1;
}

void require_finite(const std::vector<double>& v, const char* what, double t) {
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (!std::isfinite(v[j])) {
      std::ostringstream msg;
      msg << what << ": non-finite value at node " << j << ", t = " << t;
      throw SolverError(msg.str());
    }
  }
}

Solution run(const SolverConfig& config) {
  config.validate();
  Solution sol{LogisticGrid(config.x_min, config.x_max, config.n_cells), config, {}, {}, {}, {}, {}, 0.0};
  const LogisticGrid& grid = sol.grid;
  const std::size_t n_steps = config.n_steps();

  std::vector<std::size_t> snap_steps;
  for (double t : config.snapshot_times) {
    const auto k = static_cast<std::size_t>(std::max(0L, std::lround(t / config.tau)));
    if (k < n_steps) snap_steps.push_back(k);
  }
  std::sort(snap_steps.begin(), snap_steps.end());
  snap_steps.erase(std::unique(snap_steps.begin(), snap_steps.end()), snap_steps.end());

  DensityState state = initial_state(grid, config);
  sol.mass.reserve(n_steps + 1);
  sol.mass.push_back(total_mass(state.q, grid));
  sol.min_density = *std::min_element(state.q.begin(), state.q.end());
  auto next_snap = snap_steps.begin();
  for (std::size_t m = 0; m < n_steps; ++m) {
    if (next_snap != snap_steps.end() && *next_snap == m) {
      sol.snapshots.push_back({state.t, state.q});
      ++next_snap;
    }
    step_semi_implicit(state, grid, config, &sol.clamps, m);
    state.t = static_cast<double>(m + 1) * config.tau;
    sol.mass.push_back(total_mass(state.q, grid));
    sol.min_density = std::min(sol.min_density, *std::min_element(state.q.begin(), state.q.end()));
  }
  const double n_final = rate_now(state, grid, config, &sol.clamps, n_steps);
  state.firing.times.push_back(state.t);
  state.firing.values.push_back(n_final);
  sol.snapshots.push_back({state.t, state.q});
  sol.firing = state.firing;
  sol.final_state = std::move(state);
  return sol;
}

}  // namespace

const char* to_string(Mode mode) {
  switch (mode) {
    case Mode::DischargeFull: return "discharge";
    case Mode::DischargeKilled: return "discharge-killed";
    case Mode::HardWallFull: return "hard-wall";
    case Mode::HardWallKilled: return "hard-wall-killed";
  }
  return "unknown";
}

bool is_hard_wall(Mode mode) { return mode == Mode::HardWallFull || mode == Mode::HardWallKilled; }

bool is_killed(Mode mode) { return mode == Mode::DischargeKilled || mode == Mode::HardWallKilled; }

void SolverConfig::validate() const {
  spec.validate();
  if (!(std::isfinite(tau) && tau > 0.0)) throw std::invalid_argument("SolverConfig: tau must be positive");
  if (!(std::isfinite(t_max) && t_max > 0.0)) {
    throw std::invalid_argument("SolverConfig: t_max must be positive");
  }
  if (n_cells < 16) throw std::invalid_argument("SolverConfig: n_cells must be at least 16");
  if (initial.kind == InitialDatum::Kind::Gaussian && !(initial.sigma > 0.0)) {
    throw std::invalid_argument("SolverConfig: initial sigma must be positive");
  }
}

std::size_t SolverConfig::n_steps() const {
  return static_cast<std::size_t>(std::max(1L, std::lround(t_max / tau)));
}

double maxwellian(double x, double n_prev, const sim::DischargeSpec& spec) {
  const double d = x - spec.b * n_prev;
  return std::exp(-d * d / (2.0 * spec.a));
}

DensityState initial_state(const LogisticGrid& grid, const SolverConfig& config) {
  DensityState state;
  state.q.assign(grid.size(), 0.0);
  const std::size_t end = active_end(grid, config.mode);
  if (config.initial.kind == InitialDatum::Kind::PointAtReset) {
    const std::size_t d = grid.reset_index();
    state.q[d] = 1.0 / (grid.h() * grid.metric_nodes()[d]);
    return state;
  }
  const double mu = config.initial.mean;
  const double sigma = config.initial.sigma;
  const double norm = 1.0 / (std::sqrt(2.0 * std::numbers::pi) * sigma);
  const auto x = grid.x();
  for (std::size_t j = 1; j < end; ++j) {
    const double z = (x[j] - mu) / sigma;
    state.q[j] = norm * std::exp(-0.5 * z * z);
  }
  return state;
}

TridiagonalSystem assemble_sg_system(const DensityState& state, double n_prev,
                                     const LogisticGrid& grid, const SolverConfig& config) {
  const std::size_t n = grid.size();
  if (state.q.size() != n) throw std::invalid_argument("assemble_sg_system: state/grid size mismatch");
  if (!std::isfinite(n_prev)) throw SolverError("assemble_sg_system: non-finite firing rate");
  require_finite(state.q, "assemble_sg_system", state.t);

  const auto& spec = config.spec;
  const double tau = config.tau;
  const double h = grid.h();
  const auto x = grid.x();
  const auto g = grid.metric_nodes();
  const auto xh = grid.x_half();
  const auto gh = grid.metric_half();
  const bool hard_wall = is_hard_wall(config.mode);
  const std::size_t end = active_end(grid, config.mode);

  TridiagonalSystem sys;
  sys.lower.assign(n, 0.0);
  sys.diag.assign(n, 1.0);
  sys.upper.assign(n, 0.0);
  sys.rhs.assign(n, 0.0);

  std::vector<double> m_node(n);
  for (std::size_t j = 0; j < n; ++j) m_node[j] = maxwellian(x[j], n_prev, spec);

  const double inv_h2 = 1.0 / (h * h);
  for (std::size_t j = 1; j < end; ++j) {
    const double scale = spec.a * inv_h2 / g[j];
    const double c_minus = scale * maxwellian(xh[j - 1], n_prev, spec) / gh[j - 1];
    const double c_plus = scale * maxwellian(xh[j], n_prev, spec) / gh[j];
    const double lambda = hard_wall ? 0.0 : sim::discharge_rate(x[j], spec);
    sys.lower[j] = -tau * c_minus / m_node[j - 1];
    sys.upper[j] = -tau * c_plus / m_node[j + 1];
    sys.diag[j] = 1.0 + tau * (c_minus + c_plus) / m_node[j] + tau * lambda;
    sys.rhs[j] = state.q[j];
  }
  if (!is_killed(config.mode)) {
    // Unit mass per unit N: the reset node carries h g'(y_D) of measure.
    const std::size_t d = grid.reset_index();
    sys.rhs[d] += tau * n_prev / (h * g[d]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!std::isfinite(sys.lower[j]) || !std::isfinite(sys.diag[j]) || !std::isfinite(sys.upper[j]) ||
        !std::isfinite(sys.rhs[j])) {
      std::ostringstream msg;
      msg << "assemble_sg_system: non-finite coefficient in row " << j << ", t = " << state.t;
      throw SolverError(msg.str());
    }
  }
  return sys;
}

std::vector<double> sg_half_fluxes(const std::vector<double>& q, double n_prev,
                                   const LogisticGrid& grid, const sim::DischargeSpec& spec) {
  if (q.size() != grid.size()) throw std::invalid_argument("sg_half_fluxes: size mismatch");
  const auto x = grid.x();
  const auto xh = grid.x_half();
  const auto gh = grid.metric_half();
  std::vector<double> flux(grid.size() - 1);
  for (std::size_t j = 0; j + 1 < grid.size(); ++j) {
    const double ratio_hi = q[j + 1] / maxwellian(x[j + 1], n_prev, spec);
    const double ratio_lo = q[j] / maxwellian(x[j], n_prev, spec);
    flux[j] = spec.a * maxwellian(xh[j], n_prev, spec) / gh[j] * (ratio_hi - ratio_lo) / grid.h();
  }
  return flux;
}

double firing_rate_quadrature(const std::vector<double>& q, const LogisticGrid& grid,
                              const sim::DischargeSpec& spec) {
  if (q.size() != grid.size()) throw std::invalid_argument("firing_rate_quadrature: size mismatch");
  const auto x = grid.x();
  const auto g = grid.metric_nodes();
  double sum = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) {
    const double lambda = sim::discharge_rate(x[j], spec);
    if (lambda != 0.0) sum += g[j] * lambda * q[j];
  }
  return grid.h() * sum;
}

double hard_wall_boundary_rate(const std::vector<double>& q, const LogisticGrid& grid, double a) {
  if (q.size() != grid.size()) throw std::invalid_argument("hard_wall_boundary_rate: size mismatch");
  const std::size_t f = grid.threshold_index();
  const auto x = grid.x();
  const double x1 = x[f - 1];
  const double x2 = x[f - 2];
  // Derivative at x = 1 of the quadratic through (1, 0), (x1, q1), (x2, q2).
  const double w1 = (1.0 - x2) / ((x1 - 1.0) * (x1 - x2));
  const double w2 = (1.0 - x1) / ((x2 - 1.0) * (x2 - x1));
  return -a * (w1 * q[f - 1] + w2 * q[f - 2]);
}

double total_mass(const std::vector<double>& q, const LogisticGrid& grid) {
  if (q.size() != grid.size()) throw std::invalid_argument("total_mass: size mismatch");
  const auto g = grid.metric_nodes();
  double sum = 0.0;
  for (std::size_t j = 0; j < q.size(); ++j) sum += g[j] * q[j];
  return grid.h() * sum;
}

double interp_density(const std::vector<double>& q, const LogisticGrid& grid, double x) {
  if (q.size() != grid.size()) throw std::invalid_argument("interp_density: size mismatch");
  const auto xs = grid.x();
  if (!(x >= xs.front() && x <= xs.back())) {
    throw std::invalid_argument("interp_density: x outside the computational domain");
  }
  const auto ys = grid.y();
  const auto it = std::upper_bound(xs.begin(), xs.end(), x);
  const std::size_t hi = static_cast<std::size_t>(it - xs.begin());
  const std::size_t lo = hi - 1;
  if (xs[lo] == x || hi >= xs.size()) return q[lo];
  const double y = std::clamp(LogisticGrid::to_logistic(x), ys[lo], ys[hi]);
  const double w = (y - ys[lo]) / (ys[hi] - ys[lo]);
  return (1.0 - w) * q[lo] + w * q[hi];
}

std::vector<double> cdf_at_nodes(const std::vector<double>& q, const LogisticGrid& grid) {
  if (q.size() != grid.size()) throw std::invalid_argument("cdf_at_nodes: size mismatch");
  const auto g = grid.metric_nodes();
  std::vector<double> cdf(q.size(), 0.0);
  for (std::size_t j = 1; j < q.size(); ++j) {
    cdf[j] = cdf[j - 1] + 0.5 * grid.h() * (g[j - 1] * q[j - 1] + g[j] * q[j]);
  }
  return cdf;
}

double step_semi_implicit(DensityState& state, const LogisticGrid& grid, const SolverConfig& config,
                          std::vector<RateClamp>* clamps, std::size_t step_index) {
  const double n_now = rate_now(state, grid, config, clamps, step_index);
  state.firing.times.push_back(state.t);
  state.firing.values.push_back(n_now);
  const TridiagonalSystem sys = assemble_sg_system(state, n_now, grid, config);
  state.q = thomas_solve(sys);
  state.t += config.tau;
  require_finite(state.q, "step_semi_implicit", state.t);
  return n_now;
}

Solution solve_discharge_fp(const SolverConfig& config) {
  if (is_hard_wall(config.mode)) {
    throw std::invalid_argument("solve_discharge_fp: mode must be DischargeFull or DischargeKilled");
  }
  return run(config);
}

Solution solve_hard_wall_fp(const SolverConfig& config) {
  if (!is_hard_wall(config.mode)) {
    throw std::invalid_argument("solve_hard_wall_fp: mode must be HardWallFull or HardWallKilled");
  }
  return run(config);
}

Solution solve_fp(const SolverConfig& config) {
  return is_hard_wall(config.mode) ? solve_hard_wall_fp(config) : solve_discharge_fp(config);
}

}  // namespace softwall::fp
