#include <cmath>
#include <filesystem>

#include "softwall/experiment/studies.hpp"
#include "softwall/sim/estimators.hpp"
#include "softwall/sim/paths.hpp"

namespace softwall::experiment {

void write_run(const ExperimentConfig& config, const RunOutput& output) {
  const std::filesystem::path dir(config.output_dir);
  write_text_file((dir / "config.txt").string(), serialize_config(config));
  for (const auto& t : output.tables) emit_csv(t.table, (dir / t.file).string());
}

RunOutput run_simulation(const ExperimentConfig& config) {
  config.validate();
  sim::PathModel model = sim::PathModel::Discharge;
  switch (config.model) {
    case fp::Mode::DischargeFull: model = sim::PathModel::Discharge; break;
    case fp::Mode::DischargeKilled: model = sim::PathModel::KilledDischarge; break;
    case fp::Mode::HardWallFull: model = sim::PathModel::HardWall; break;
    case fp::Mode::HardWallKilled:
      throw ConfigError(0, "model", "hard-wall-killed has no path simulator");
  }

  sim::SimConfig sc;
  sc.spec.delta = config.delta;
  sc.spec.rate_kind = config.rate_kind;
  sc.spec.b = config.b;
  sc.spec.x0 = config.x0;
  sc.dt = config.dt;
  sc.t_max = config.t_max;
  sc.x0_sigma = config.sigma0;
  const auto n_samples = static_cast<std::size_t>(std::lround(config.t_max / config.bin_width));
  for (std::size_t i = 0; i <= n_samples; ++i) {
    sc.observe_times.push_back(std::min(config.t_max, static_cast<double>(i) * config.bin_width));
  }
  if (config.b != 0.0) {
    // The mean-field input is taken from the matching PDE solve.
    fp::Mode pde_mode = config.model == fp::Mode::DischargeKilled ? fp::Mode::DischargeKilled
                        : config.model == fp::Mode::HardWallFull  ? fp::Mode::HardWallFull
                                                                  : fp::Mode::DischargeFull;
    const auto pde = fp::solve_fp(solver_config(config, pde_mode, config.delta, config.b));
    sc.drive = sim::MeanFieldDrive{config.tau, pde.firing.values};
  }

  const auto paths = sim::simulate_ensemble(model, sc, config.seed, config.paths, config.threads);

  CsvTable trace({"path_id", "event", "t", "x"});
  const std::size_t n_trace = std::min(config.trace_paths, paths.size());
  for (std::size_t id = 0; id < n_trace; ++id) {
    const auto& p = paths[id];
    const auto pid = static_cast<std::int64_t>(id);
    // Merge samples and jumps in time order.
    std::size_t is = 0;
    std::size_t ij = 0;
    while (is < p.times.size() || ij < p.jump_times.size()) {
      const bool take_jump =
          ij < p.jump_times.size() && (is >= p.times.size() || p.jump_times[ij] <= p.times[is]);
      if (take_jump) {
        trace.add_row({pid, std::string("jump"), p.jump_times[ij], p.reset_states[ij]});
        ++ij;
      } else {
        trace.add_row({pid, std::string("sample"), p.times[is], p.states[is]});
        ++is;
      }
    }
    if (p.terminal == sim::Terminal::KilledAtFirstJump) {
      trace.add_row({pid, std::string("kill"), p.end_time, p.end_state});
    }
  }

  const auto rate = sim::empirical_firing_rate(paths, config.bin_width, config.t_max);
  CsvTable summary({"t_bin", "N_hat", "stderr"});
  for (std::size_t i = 0; i < rate.centers.size(); ++i) {
    summary.add_row({rate.centers[i], rate.values[i], rate.stderrs[i]});
  }

  RunOutput out;
  out.tables.push_back({"paths.csv", std::move(trace)});
  out.tables.push_back({"summary.csv", std::move(summary)});
  return out;
}

RunOutput run_solve(const ExperimentConfig& config) {
  config.validate();
  fp::SolverConfig sc = solver_config(config, config.model, config.delta, config.b);
  const auto n_snap = static_cast<std::size_t>(std::floor(config.t_max / config.snapshot_every + 1e-9));
  for (std::size_t i = 0; i <= n_snap; ++i) sc.snapshot_times.push_back(static_cast<double>(i) * config.snapshot_every);
  const auto sol = fp::solve_fp(sc);

  CsvTable density({"t", "x", "f"});
  const auto x = sol.grid.x();
  double last_t = -1.0;
  for (const auto& snap : sol.snapshots) {
    if (snap.t == last_t) continue;
    last_t = snap.t;
    for (std::size_t j = 0; j < x.size(); ++j) density.add_row({snap.t, x[j], snap.q[j]});
  }
  CsvTable firing({"t", "N"});
  for (std::size_t i = 0; i < sol.firing.times.size(); ++i) {
    firing.add_row({sol.firing.times[i], sol.firing.values[i]});
  }
  RunOutput out;
  out.tables.push_back({"density.csv", std::move(density)});
  out.tables.push_back({"firing.csv", std::move(firing)});
  return out;
}

RunOutput run_experiment(const ExperimentConfig& config) {
  switch (config.experiment) {
    case Experiment::Convergence: return run_convergence_study(config).output;
    case Experiment::SelfSimilar: return run_self_similar_study(config).output;
    case Experiment::Validate: return run_validation_suite(config).output;
    case Experiment::Simulate: return run_simulation(config);
    case Experiment::Solve: return run_solve(config);
  }
  throw ConfigError(0, "experiment", "unknown experiment");
}

}  // namespace softwall::experiment
