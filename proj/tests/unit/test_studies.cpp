#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <string>
#include <variant>

#include "softwall/experiment/studies.hpp"

namespace ex = softwall::experiment;

namespace {

ex::ExperimentConfig small_config(const std::string& name) {
  ex::ExperimentConfig c;
  c.b_values = {0.0, -1.0};
  c.k_range = {0, 3};
  c.fit_window = {1, 3};
  c.n_cells = 192;
  c.tau = 5e-3;
  c.paths = 4000;
  c.coupled_samples = 500;
  c.output_dir = (std::filesystem::path(testing::TempDir()) / name).string();
  return c;
}

bool has_text(const ex::CsvTable& t, const std::string& text) {
  for (const auto& row : t.rows()) {
    for (const auto& cell : row) {
      if (const auto* s = std::get_if<std::string>(&cell); s && *s == text) return true;
    }
  }
  return false;
}

}  // namespace

TEST(ConvergenceStudy, DiscrepanciesAreFiniteAndNonnegative) {
  const auto study = ex::run_convergence_study(small_config("conv"));
  ASSERT_EQ(study.cells.size(), 2u * 4u);
  for (const auto& cell : study.cells) {
    EXPECT_TRUE(cell.failure.empty()) << cell.failure;
    for (auto q : ex::kQuantities) {
      EXPECT_TRUE(std::isfinite(cell.at(q)));
      EXPECT_GE(cell.at(q), 0.0);
    }
  }
  for (const auto& d : study.diagnostics) {
    EXPECT_GE(d.min_density, 0.0);
    EXPECT_TRUE(d.failure.empty());
  }
  EXPECT_TRUE(study.output.all_passed);
  const auto* fit = study.find(ex::Quantity::Density, 0.0);
  ASSERT_NE(fit, nullptr);
  ASSERT_TRUE(fit->report.has_value());
  EXPECT_GT(fit->report->fit.rate, 0.0);
  const auto* table = study.output.find("table1.csv");
  ASSERT_NE(table, nullptr);
  EXPECT_EQ(table->rows().size(), 4u * 2u);
  EXPECT_NE(study.output.find("diagnostics.csv"), nullptr);
}

TEST(ConvergenceStudy, UnfittableWindowIsMarkedFailed) {
  auto c = small_config("conv_fail");
  c.b_values = {0.0};
  c.k_range = {0, 1};
  c.fit_window = {5, 7};  // no computed level falls inside
  const auto study = ex::run_convergence_study(c);
  EXPECT_FALSE(study.output.all_passed);
  const auto* table = study.output.find("table1.csv");
  ASSERT_NE(table, nullptr);
  EXPECT_TRUE(has_text(*table, ex::kFailed));
}

TEST(SelfSimilarStudy, ProfilesLiveOnNonnegativeZ) {
  auto c = small_config("selfsim");
  c.b_values = {0.0};
  const auto study = ex::run_self_similar_study(c);
  ASSERT_EQ(study.entries.size(), 2u);
  for (const auto& e : study.entries) {
    ASSERT_TRUE(e.fit.has_value()) << e.failure;
    EXPECT_TRUE(std::isfinite(e.fit->alpha));
    EXPECT_TRUE(std::isfinite(e.fit->beta));
    EXPECT_GE(e.fit->collapse_error, 0.0);
    for (const auto& p : e.fit->profiles) {
      for (double z : p.z) EXPECT_GE(z, 0.0);
      for (double v : p.psi) EXPECT_GE(v, 0.0);
    }
  }
  EXPECT_NE(study.find(0.0, true), nullptr);
  EXPECT_NE(study.output.find("table2.csv"), nullptr);
  EXPECT_NE(study.output.find("collapse.csv"), nullptr);
}

TEST(Runs, SolveAndSimulateWriteTheirTables) {
  auto c = small_config("runs");
  c.experiment = ex::Experiment::Solve;
  const auto solved = ex::run_experiment(c);
  ASSERT_NE(solved.find("density.csv"), nullptr);
  ASSERT_NE(solved.find("firing.csv"), nullptr);
  c.experiment = ex::Experiment::Simulate;
  c.trace_paths = 3;
  const auto simulated = ex::run_experiment(c);
  ASSERT_NE(simulated.find("paths.csv"), nullptr);
  ASSERT_NE(simulated.find("summary.csv"), nullptr);
  ex::write_run(c, simulated);
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(c.output_dir) / "config.txt"));
  EXPECT_TRUE(std::filesystem::exists(std::filesystem::path(c.output_dir) / "summary.csv"));
}

TEST(Runs, SimulatingAKilledHardWallIsAConfigError) {
  auto c = small_config("runs_bad");
  c.model = softwall::fp::Mode::HardWallKilled;
  EXPECT_THROW(ex::run_simulation(c), ex::ConfigError);
}
