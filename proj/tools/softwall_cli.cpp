// Command-line front end for the softwall experiments.

#include <CLI11.hpp>

#include <cstdio>
#include <exception>
#include <iostream>
#include <optional>
#include <string>

#include "softwall/experiment/config.hpp"
#include "softwall/experiment/studies.hpp"

namespace sx = softwall::experiment;

namespace {

struct Overrides {
  std::string config_path;
  std::optional<std::string> out;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> paths;
  std::optional<std::size_t> cells;
  std::optional<double> tau;
  std::optional<unsigned> threads;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_path, "key = value configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--out", o.out, "output directory");
  cmd->add_option("--seed", o.seed, "Monte Carlo seed");
  cmd->add_option("--paths", o.paths, "Monte Carlo path count")->check(CLI::PositiveNumber);
  cmd->add_option("--cells", o.cells, "PDE cells")->check(CLI::Range(16, 1 << 24));
  cmd->add_option("--tau", o.tau, "PDE time step")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", o.threads, "worker threads (0 = all cores)");
}

sx::ExperimentConfig resolve(sx::Experiment experiment, const Overrides& o) {
  sx::ExperimentConfig c = o.config_path.empty() ? sx::parse_config("") : sx::load_config(o.config_path);
  c.experiment = experiment;
  if (o.out) c.output_dir = *o.out;
  if (o.seed) c.seed = *o.seed;
  if (o.paths) c.paths = *o.paths;
  if (o.cells) c.n_cells = *o.cells;
  if (o.tau) c.tau = *o.tau;
  if (o.threads) c.threads = *o.threads;
  c.validate();
  return c;
}

void print_table(const std::string& name, const sx::CsvTable& table) {
  std::cout << "== " << name << '\n' << table.to_string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"softwall: integrate-and-fire discharge regularization experiments"};
  app.require_subcommand(1);

  struct Command {
    const char* name;
    const char* help;
    sx::Experiment experiment;
    const char* summary_table;
  };
  const Command commands[] = {
      {"convergence", "delta sweep of discrepancies and fitted convergence rates",
       sx::Experiment::Convergence, "table1.csv"},
      {"selfsim", "self-similar fit of the super-threshold density", sx::Experiment::SelfSimilar,
       "table2.csv"},
      {"validate", "Monte Carlo against PDE cross-checks", sx::Experiment::Validate, "validation.csv"},
      {"simulate", "path ensemble with binned firing rate", sx::Experiment::Simulate, "summary.csv"},
      {"solve", "single Fokker-Planck solve", sx::Experiment::Solve, "firing.csv"},
  };

  Overrides overrides;
  const Command* chosen = nullptr;
  for (const auto& cmd : commands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    add_common(sub, overrides);
    sub->callback([&chosen, &cmd] { chosen = &cmd; });
  }

  CLI11_PARSE(app, argc, argv);
  if (chosen == nullptr) return 2;

  try {
    const sx::ExperimentConfig config = resolve(chosen->experiment, overrides);
    const sx::RunOutput out = sx::run_experiment(config);
    sx::write_run(config, out);
    if (const auto* t = out.find(chosen->summary_table)) print_table(chosen->summary_table, *t);
    std::cout << "outputs written to " << config.output_dir << '\n';
    return out.all_passed ? 0 : 1;
  } catch (const sx::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
