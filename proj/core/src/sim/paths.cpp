#include "softwall/sim/paths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "softwall/detail/parallel.hpp"

namespace softwall::sim {

namespace {

constexpr double kTimeMatch = 1e-9;

bool same_time(double a, double b) { return std::abs(a - b) <= kTimeMatch * std::max(1.0, std::abs(a)); }

struct Observation {
  long step;
  double t;
};

long step_count(double t_max, double dt) {
  return std::max(1L, std::lround(t_max / dt));
}

std::vector<Observation> observation_plan(const SimConfig& config, long n_steps) {
  std::vector<Observation> plan;
  plan.reserve(config.observe_times.size());
  for (double t : config.observe_times) {
    const long k = std::lround(t / config.dt);
    if (t < 0.0 || k > n_steps) {
      throw std::invalid_argument("SimConfig: observation time outside [0, t_max]");
    }
    plan.push_back({k, t});
  }
  std::stable_sort(plan.begin(), plan.end(),
                   [](const Observation& l, const Observation& r) { return l.step < r.step; });
  return plan;
}

/// Records the state at every planned observation that falls on step `k`.
class Observer {
 public:
  Observer(std::vector<Observation> plan, PathRecord& rec) : plan_(std::move(plan)), rec_(rec) {
    rec_.times.reserve(plan_.size());
    rec_.states.reserve(plan_.size());
  }

  void at_step(long k, double x) {
    while (next_ < plan_.size() && plan_[next_].step == k) {
      rec_.times.push_back(plan_[next_].t);
      rec_.states.push_back(x);
      ++next_;
    }
  }

 private:
  std::vector<Observation> plan_;
  PathRecord& rec_;
  std::size_t next_ = 0;
};

double initial_state(const SimConfig& config, PathRng& rng) {
  if (config.x0_sigma > 0.0) return config.spec.x0 + config.x0_sigma * rng.normal();
  return config.spec.x0;
}

double drift_shift(const SimConfig& config, double t) {
  if (config.spec.b == 0.0) return 0.0;
  return config.spec.b * config.drive.at(t);
}

PathRecord run_discharge(const SimConfig& config, StreamId id, bool killed) {
  config.validate();
  const long n_steps = step_count(config.t_max, config.dt);
  const double dt = config.dt;
  const double a = config.spec.a;

  PathRecord rec;
  Observer obs(observation_plan(config, n_steps), rec);
  PathRng rng(id);
  double x = initial_state(config, rng);
  obs.at_step(0, x);

  for (long k = 0; k < n_steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double shift = drift_shift(config, t);
    const double lambda = discharge_rate(x, config.spec);
    if (lambda > 0.0) {
      const double u = rng.uniform();
      if (u < -std::expm1(-lambda * dt)) {
        // Conditional on firing inside the step, the delay is Exp(lambda) truncated to dt.
        const double wait = std::min(dt, -std::log1p(-u) / lambda);
        const double t_jump = t + wait;
        if (killed) {
          rec.terminal = Terminal::KilledAtFirstJump;
          rec.end_time = t_jump;
          rec.end_state = x;
          return rec;
        }
        rec.jump_times.push_back(t_jump);
        x = 0.0;
        rec.reset_states.push_back(x);
        const double rest = dt - wait;
        if (rest > 0.0) x = ou_transition(x, rest, rng.normal(), a, shift);
        obs.at_step(k + 1, x);
        continue;
      }
    }
    x = ou_transition(x, dt, rng.normal(), a, shift);
    obs.at_step(k + 1, x);
  }
  rec.end_time = static_cast<double>(n_steps) * dt;
  rec.end_state = x;
  return rec;
}

}  // namespace

std::size_t PathRecord::jump_count_at(double t) const {
  return static_cast<std::size_t>(std::upper_bound(jump_times.begin(), jump_times.end(), t) -
                                  jump_times.begin());
}

bool PathRecord::observed_at(double t) const {
  return std::any_of(times.begin(), times.end(), [t](double s) { return same_time(s, t); });
}

double PathRecord::state_at(double t) const {
  for (std::size_t i = 0; i < times.size(); ++i) {
    if (same_time(times[i], t)) return states[i];
  }
  throw std::out_of_range("PathRecord: no observation at the requested time");
}

void SimConfig::validate() const {
  spec.validate();
  if (!(std::isfinite(dt) && dt > 0.0)) throw std::invalid_argument("SimConfig: dt must be positive");
  if (!(std::isfinite(t_max) && t_max > 0.0)) {
    throw std::invalid_argument("SimConfig: t_max must be positive");
  }
  if (x0_sigma < 0.0) throw std::invalid_argument("SimConfig: x0_sigma must be nonnegative");
}

PathRecord simulate_hard_wall(const SimConfig& config, StreamId id) {
  config.validate();
  if (config.x0_sigma == 0.0 && !(config.spec.x0 < 1.0)) {
    throw std::invalid_argument("simulate_hard_wall: x0 must be below the threshold 1");
  }
  const long n_steps = step_count(config.t_max, config.dt);
  const double dt = config.dt;
  const double a = config.spec.a;

  PathRecord rec;
  Observer obs(observation_plan(config, n_steps), rec);
  PathRng rng(id);
  // A Gaussian start can land on or above the wall; such starts are pulled just below it.
  double x = std::min(initial_state(config, rng), std::nextafter(1.0, 0.0));
  obs.at_step(0, x);

  for (long k = 0; k < n_steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double next = ou_transition(x, dt, rng.normal(), a, drift_shift(config, t));
    if (next >= 1.0) {
      rec.jump_times.push_back(t + dt * (1.0 - x) / (next - x));
      x = 0.0;
      rec.reset_states.push_back(x);
    } else {
      x = next;
    }
    obs.at_step(k + 1, x);
  }
  rec.end_time = static_cast<double>(n_steps) * dt;
  rec.end_state = x;
  return rec;
}

PathRecord simulate_discharge(const SimConfig& config, StreamId id) {
  return run_discharge(config, id, false);
}

PathRecord simulate_killed_discharge(const SimConfig& config, StreamId id) {
  return run_discharge(config, id, true);
}

CoupledSample simulate_coupled_first_jumps(const CoupledConfig& config, StreamId id) {
  DischargeSpec spec;
  spec.delta = config.delta;
  spec.rate_kind = config.rate_kind;
  spec.x0 = 0.0;
  spec.validate();
  if (!(config.dt > 0.0) || !(config.t_max > 0.0)) {
    throw std::invalid_argument("simulate_coupled_first_jumps: dt and t_max must be positive");
  }
  if (config.forced_gamma && !(*config.forced_gamma >= 0.0)) {
    throw std::invalid_argument("simulate_coupled_first_jumps: gamma must be nonnegative");
  }

  PathRng rng(id);
  CoupledSample out;
  out.gamma = config.forced_gamma ? *config.forced_gamma : rng.exponential();

  const long n_steps = step_count(config.t_max, config.dt);
  const double dt = config.dt;
  double z = 0.0;
  double hazard = 0.0;
  for (long k = 0; k < n_steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double next = ou_step(z, dt, rng.normal());
    if (out.hard_censored() && next >= 1.0) out.t_hard = t + dt * (1.0 - z) / (next - z);
    if (!out.hard_censored()) {
      const double step_hazard = segment_hazard(z, next, dt, 1.0, spec);
      if (hazard + step_hazard >= out.gamma) {
        double lo = 0.0;
        double hi = 1.0;
        for (int it = 0; it < 60; ++it) {
          const double mid = 0.5 * (lo + hi);
          if (hazard + segment_hazard(z, next, dt, mid, spec) >= out.gamma) {
            hi = mid;
          } else {
            lo = mid;
          }
        }
        out.t_soft = std::max(out.t_hard, t + hi * dt);
        return out;
      }
      hazard += step_hazard;
    }
    z = next;
  }
  return out;
}

std::vector<PathRecord> simulate_ensemble(PathModel model, const SimConfig& config,
                                          std::uint64_t seed, std::size_t n_paths,
                                          unsigned threads) {
  config.validate();
  std::vector<PathRecord> out(n_paths);
  detail::parallel_for(n_paths, threads, [&](std::size_t i) {
    const StreamId id{seed, i};
    switch (model) {
      case PathModel::HardWall:
        out[i] = simulate_hard_wall(config, id);
        break;
      case PathModel::Discharge:
        out[i] = simulate_discharge(config, id);
        break;
      case PathModel::KilledDischarge:
        out[i] = simulate_killed_discharge(config, id);
        break;
    }
  });
  return out;
}

std::vector<CoupledSample> simulate_coupled_ensemble(const CoupledConfig& config,
                                                     std::uint64_t seed, std::size_t n_samples,
                                                     unsigned threads) {
  std::vector<CoupledSample> out(n_samples);
  detail::parallel_for(n_samples, threads, [&](std::size_t i) {
    out[i] = simulate_coupled_first_jumps(config, StreamId{seed, i});
  });
  return out;
}

}  // namespace softwall::sim
