#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <string>

#include "softwall/experiment/config.hpp"

namespace ex = softwall::experiment;

TEST(ParseConfig, EmptyTextGivesDefaults) {
  EXPECT_EQ(ex::parse_config(""), ex::ExperimentConfig{});
  EXPECT_EQ(ex::parse_config("# only a comment\n\n   \n"), ex::ExperimentConfig{});
}

TEST(ParseConfig, ReadsEveryKind) {
  const auto c = ex::parse_config(
      "experiment = selfsim\n"
      "b_values = 0, -1   # two values\n"
      "k_range = 2..6\n"
      "n_cells = 256\n"
      "tau = 5e-4\n"
      "rate_kind = ramp\n"
      "model = hard-wall-killed\n"
      "seed = 42\n"
      "output_dir = runs/a\n");
  EXPECT_EQ(c.experiment, ex::Experiment::SelfSimilar);
  EXPECT_EQ(c.b_values, (std::vector<double>{0.0, -1.0}));
  EXPECT_EQ(c.k_range, (softwall::analysis::KRange{2, 6}));
  EXPECT_EQ(c.n_cells, 256u);
  EXPECT_EQ(c.tau, 5e-4);
  EXPECT_EQ(c.rate_kind, softwall::sim::RateKind::LinearRamp);
  EXPECT_EQ(c.model, softwall::fp::Mode::HardWallKilled);
  EXPECT_EQ(c.seed, 42u);
  EXPECT_EQ(c.output_dir, "runs/a");
}

TEST(ParseConfig, InvalidValueNamesTheKey) {
  try {
    ex::parse_config("tau = 1e-3\nt_max = -1\n");
    FAIL() << "expected ConfigError";
  } catch (const ex::ConfigError& e) {
    EXPECT_EQ(e.key(), "t_max");
    EXPECT_NE(std::string(e.what()).find("t_max"), std::string::npos);
  }
}

TEST(ParseConfig, RejectsMalformedInput) {
  auto key_of = [](const char* text) {
    try {
      ex::parse_config(text);
    } catch (const ex::ConfigError& e) {
      return e.key();
    }
    return std::string("<none>");
  };
  EXPECT_EQ(key_of("colour = blue\n"), "colour");
  EXPECT_EQ(key_of("n_cells = 12.5\n"), "n_cells");
  EXPECT_EQ(key_of("k_range = 5..2\n"), "k_range");
  EXPECT_EQ(key_of("experiment = everything\n"), "experiment");
  EXPECT_EQ(key_of("paths = 0\n"), "paths");
  EXPECT_THROW(ex::parse_config("just words\n"), ex::ConfigError);
  try {
    ex::parse_config("tau = 1e-3\n\nbogus = 1\n");
  } catch (const ex::ConfigError& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(SerializeConfig, RoundTrips) {
  ex::ExperimentConfig c;
  c.experiment = ex::Experiment::Validate;
  c.b_values = {0.1, -0.3, 1.0 / 3.0};
  c.k_range = {1, 5};
  c.tau = 1.0 / 7.0 * 1e-2;
  c.sigma0 = 0.123456789;
  c.model = softwall::fp::Mode::DischargeKilled;
  c.rate_kind = softwall::sim::RateKind::Off;
  c.seed = 18446744073709551615ull;
  c.output_dir = "out dir";
  EXPECT_EQ(ex::parse_config(ex::serialize_config(c)), c);
  EXPECT_EQ(ex::parse_config(ex::serialize_config(ex::ExperimentConfig{})), ex::ExperimentConfig{});
}

TEST(LoadConfig, ReadsFileAndReportsMissing) {
  const auto path = std::filesystem::path(testing::TempDir()) / "softwall_config_test.txt";
  std::ofstream(path) << "delta = 0.25\n";
  EXPECT_EQ(ex::load_config(path.string()).delta, 0.25);
  EXPECT_ANY_THROW(ex::load_config((path.parent_path() / "does-not-exist.txt").string()));
}

TEST(SolverConfig, CarriesCellSettings) {
  ex::ExperimentConfig c;
  c.n_cells = 300;
  c.sigma0 = 0.2;
  const auto s = ex::solver_config(c, softwall::fp::Mode::HardWallFull, 0.5, -1.0);
  EXPECT_EQ(s.mode, softwall::fp::Mode::HardWallFull);
  EXPECT_EQ(s.spec.delta, 0.5);
  EXPECT_EQ(s.spec.b, -1.0);
  EXPECT_EQ(s.n_cells, 300u);
  EXPECT_EQ(s.initial.sigma, 0.2);
  EXPECT_EQ(s.initial.mean, c.x0);
}
