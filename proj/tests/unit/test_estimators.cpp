#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "softwall/sim/estimators.hpp"

namespace sim = softwall::sim;

namespace {

sim::PathRecord record(std::vector<double> jumps, double state_at_one) {
  sim::PathRecord p;
  p.times = {1.0};
  p.states = {state_at_one};
  p.jump_times = std::move(jumps);
  p.reset_states.assign(p.jump_times.size(), 0.0);
  p.end_time = 1.0;
  p.end_state = state_at_one;
  return p;
}

}  // namespace

TEST(EmpiricalCdf, StepFunctionProperties) {
  const auto cdf = sim::empirical_cdf({0.3, -1.0, 0.3, 2.0});
  EXPECT_EQ(cdf(-5.0), 0.0);
  EXPECT_EQ(cdf(-1.0), 0.25);
  EXPECT_EQ(cdf(0.29), 0.25);
  EXPECT_EQ(cdf(0.3), 0.75);
  EXPECT_EQ(cdf(2.0), 1.0);
  EXPECT_EQ(cdf(100.0), 1.0);
  EXPECT_EQ(cdf.size(), 4u);
}

TEST(EmpiricalCdf, EmptySampleThrows) { EXPECT_THROW(sim::empirical_cdf({}), std::invalid_argument); }

TEST(PathRecord, JumpCountIsRightContinuous) {
  const auto p = record({0.2, 0.5}, 0.0);
  EXPECT_EQ(p.jump_count_at(0.19), 0u);
  EXPECT_EQ(p.jump_count_at(0.2), 1u);
  EXPECT_EQ(p.jump_count_at(0.5), 2u);
  EXPECT_EQ(p.jump_count_at(10.0), 2u);
}

TEST(PathRecord, StateAtUnobservedTimeThrows) {
  const auto p = record({}, 0.4);
  EXPECT_EQ(p.state_at(1.0), 0.4);
  EXPECT_TRUE(p.observed_at(1.0));
  EXPECT_FALSE(p.observed_at(0.5));
  EXPECT_THROW(p.state_at(0.5), std::out_of_range);
}

TEST(SubCdf, SinglePathWithoutJumps) {
  const std::vector<sim::PathRecord> paths{record({}, 0.25)};
  EXPECT_EQ(sim::empirical_sub_cdf(paths, 0, 0.25, 1.0), 1.0);
  EXPECT_EQ(sim::empirical_sub_cdf(paths, 0, 0.9, 1.0), 1.0);
  EXPECT_EQ(sim::empirical_sub_cdf(paths, 0, 0.2, 1.0), 0.0);
  EXPECT_EQ(sim::empirical_sub_cdf(paths, 1, 0.9, 1.0), 0.0);
}

TEST(SubCdf, PartitionSumsToFullCdf) {
  sim::SimConfig c;
  c.spec.delta = 0.125;
  c.spec.x0 = 0.0;
  c.t_max = 1.5;
  c.observe_times = {0.5, 1.5};
  const auto paths = sim::simulate_ensemble(sim::PathModel::Discharge, c, 3, 5000, 1);
  for (double t : {0.5, 1.5}) {
    const auto cdf = sim::empirical_cdf(sim::states_at(paths, t));
    for (double x : {-1.0, 0.0, 0.5, 1.0, 1.2}) {
      std::size_t total = 0;
      for (std::size_t n = 0; n < 50; ++n) total += sim::sub_cdf_count(paths, n, x, t);
      EXPECT_EQ(static_cast<double>(total) / paths.size(), cdf(x)) << "x=" << x << " t=" << t;
    }
  }
}

TEST(JumpTimeDensity, MassEqualsEventProbability) {
  sim::SimConfig c;
  c.spec.delta = 0.125;
  c.spec.x0 = 0.0;
  const auto paths = sim::simulate_ensemble(sim::PathModel::Discharge, c, 8, 4000, 1);
  for (std::size_t n : {1u, 2u}) {
    const auto h = sim::empirical_jump_time_density(paths, n, 0.05, 1.0);
    const double p = sim::empirical_jump_probability(paths, n, 1.0);
    EXPECT_NEAR(h.mass(), p, 1e-12);
    EXPECT_LE(p, 1.0);
  }
  EXPECT_THROW(sim::empirical_jump_time_density(paths, 1, 0.0, 1.0), std::invalid_argument);
  EXPECT_THROW(sim::empirical_jump_time_density({}, 1, 0.1, 1.0), std::invalid_argument);
}

TEST(JumpTimeDensity, KilledRecordsCountTheirJump) {
  sim::SimConfig c;
  c.spec.delta = 0.125;
  c.spec.x0 = 0.5;
  const auto paths = sim::simulate_ensemble(sim::PathModel::KilledDischarge, c, 8, 3000, 1);
  const auto h = sim::empirical_jump_time_density(paths, 1, 0.05, 1.0);
  std::size_t killed = 0;
  for (const auto& p : paths) killed += p.terminal == sim::Terminal::KilledAtFirstJump;
  EXPECT_NEAR(h.mass(), static_cast<double>(killed) / paths.size(), 1e-12);
}

TEST(JumpProbability, NonincreasingInN) {
  sim::SimConfig c;
  c.spec.delta = 0.125;
  c.spec.x0 = 0.0;
  c.t_max = 2.0;
  const auto paths = sim::simulate_ensemble(sim::PathModel::Discharge, c, 9, 4000, 1);
  double prev = 1.0;
  for (std::size_t n = 1; n <= 6; ++n) {
    const double p = sim::empirical_jump_probability(paths, n, 2.0);
    EXPECT_LE(p, prev);
    prev = p;
  }
}

TEST(FiringRate, CountsPerPathPerBin) {
  std::vector<sim::PathRecord> paths{record({0.05, 0.15}, 0.0), record({0.12}, 0.0)};
  const auto r = sim::empirical_firing_rate(paths, 0.1, 0.2);
  ASSERT_EQ(r.values.size(), 2u);
  EXPECT_NEAR(r.values[0], 1.0 / (2 * 0.1), 1e-12);
  EXPECT_NEAR(r.values[1], 2.0 / (2 * 0.1), 1e-12);
  EXPECT_NEAR(r.centers[0], 0.05, 1e-12);
  EXPECT_THROW(sim::empirical_firing_rate(paths, -0.1, 1.0), std::invalid_argument);
}

TEST(BinomialStderr, ClosedForm) {
  EXPECT_NEAR(sim::binomial_stderr(0.5, 100), 0.05, 1e-15);
  EXPECT_EQ(sim::binomial_stderr(0.0, 10), 0.0);
}
