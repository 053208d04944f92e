#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "softwall/fp/solver.hpp"
#include "softwall/sim/estimators.hpp"
#include "softwall/sim/paths.hpp"

namespace sim = softwall::sim;
namespace fp = softwall::fp;

namespace {

sim::SimConfig base_config(double delta = 0.125) {
  sim::SimConfig c;
  c.spec.delta = delta;
  c.spec.x0 = -1.0;
  c.dt = 1e-3;
  c.t_max = 1.0;
  return c;
}

double mean_jumps(const std::vector<sim::PathRecord>& paths, double t) {
  double s = 0.0;
  for (const auto& p : paths) s += static_cast<double>(p.jump_count_at(t));
  return s / static_cast<double>(paths.size());
}

bool identical(const sim::PathRecord& a, const sim::PathRecord& b) {
  return a.times == b.times && a.states == b.states && a.jump_times == b.jump_times &&
         a.reset_states == b.reset_states && a.terminal == b.terminal && a.end_time == b.end_time &&
         a.end_state == b.end_state;
}

}  // namespace

TEST(SimConfig, RejectsBadTimes) {
  auto c = base_config();
  c.t_max = 0.0;
  EXPECT_THROW(sim::simulate_discharge(c, {1, 0}), std::invalid_argument);
  c = base_config();
  c.dt = -1.0;
  EXPECT_THROW(sim::simulate_hard_wall(c, {1, 0}), std::invalid_argument);
  c = base_config();
  c.dt = 0.0;
  EXPECT_THROW(sim::simulate_killed_discharge(c, {1, 0}), std::invalid_argument);
}

TEST(HardWall, RejectsStartAtOrAboveThreshold) {
  auto c = base_config();
  c.spec.x0 = 1.0;
  EXPECT_THROW(sim::simulate_hard_wall(c, {1, 0}), std::invalid_argument);
}

TEST(HardWall, NoJumpsInAVanishingHorizon) {
  auto c = base_config();
  c.spec.x0 = 0.0;
  c.t_max = 1e-3;
  c.dt = 1e-4;
  const auto paths = sim::simulate_ensemble(sim::PathModel::HardWall, c, 11, 2000, 1);
  for (const auto& p : paths) EXPECT_TRUE(p.jump_times.empty());
}

TEST(HardWall, PathInvariants) {
  auto c = base_config();
  c.spec.x0 = 0.5;
  c.t_max = 3.0;
  for (int i = 0; i <= 300; ++i) c.observe_times.push_back(0.01 * i);
  const auto paths = sim::simulate_ensemble(sim::PathModel::HardWall, c, 5, 300, 1);
  std::size_t total_jumps = 0;
  for (const auto& p : paths) {
    for (double x : p.states) EXPECT_LE(x, 1.0);
    for (double r : p.reset_states) EXPECT_EQ(r, 0.0);
    for (std::size_t i = 1; i < p.jump_times.size(); ++i) EXPECT_LT(p.jump_times[i - 1], p.jump_times[i]);
    std::size_t prev = 0;
    for (int i = 0; i <= 300; ++i) {
      const std::size_t n = p.jump_count_at(0.01 * i);
      EXPECT_GE(n, prev);
      prev = n;
    }
    total_jumps += p.jump_times.size();
  }
  EXPECT_GT(total_jumps, 0u);
}

TEST(HardWall, FirstPassageDensityMatchesKilledFokkerPlanck) {
  // Oracle: the boundary flux of the hard-wall killed Fokker-Planck solve from the same
  // Gaussian start (mean 0, sd 0.1).
  fp::SolverConfig pc;
  pc.mode = fp::Mode::HardWallKilled;
  pc.initial.mean = 0.0;
  pc.initial.sigma = 0.1;
  const auto pde = fp::solve_fp(pc);

  auto c = base_config();
  c.spec.x0 = 0.0;
  c.x0_sigma = 0.1;
  const auto paths = sim::simulate_ensemble(sim::PathModel::HardWall, c, 99, 100000, 0);
  const double w = 0.02;
  const auto hist = sim::empirical_jump_time_density(paths, 1, w, 1.0);
  double l1 = 0.0;
  for (std::size_t i = 0; i < hist.centers.size(); ++i) {
    // Bin average of the PDE rate, trapezoid over the tau grid.
    const double lo = hist.centers[i] - w / 2;
    const double hi = hist.centers[i] + w / 2;
    double acc = 0.0;
    int cnt = 0;
    for (std::size_t m = 0; m < pde.firing.times.size(); ++m) {
      if (pde.firing.times[m] >= lo - 1e-12 && pde.firing.times[m] <= hi + 1e-12) {
        acc += pde.firing.values[m];
        ++cnt;
      }
    }
    l1 += std::abs(hist.values[i] - acc / cnt) * w;
  }
  EXPECT_LE(l1, 0.05);
}

TEST(Discharge, NoJumpsWithoutReachingThreshold) {
  auto c = base_config();
  c.spec.x0 = -3.0;
  c.t_max = 0.05;
  const auto paths = sim::simulate_ensemble(sim::PathModel::Discharge, c, 2, 2000, 1);
  for (const auto& p : paths) EXPECT_TRUE(p.jump_times.empty());
}

TEST(Discharge, ResetStatesAreZeroAndTimesIncrease) {
  auto c = base_config(0.0625);
  c.spec.x0 = 0.5;
  c.t_max = 3.0;
  const auto paths = sim::simulate_ensemble(sim::PathModel::Discharge, c, 4, 500, 1);
  for (const auto& p : paths) {
    for (double r : p.reset_states) EXPECT_EQ(r, 0.0);
    for (std::size_t i = 1; i < p.jump_times.size(); ++i) EXPECT_LT(p.jump_times[i - 1], p.jump_times[i]);
  }
}

TEST(Discharge, MeanJumpCountNonincreasingInDelta) {
  auto coarse = base_config(0.5);
  auto fine = base_config(0.125);
  const auto pc = sim::simulate_ensemble(sim::PathModel::Discharge, coarse, 8, 20000, 0);
  const auto pf = sim::simulate_ensemble(sim::PathModel::Discharge, fine, 8, 20000, 0);
  const double mc = mean_jumps(pc, 1.0);
  const double mf = mean_jumps(pf, 1.0);
  EXPECT_TRUE(std::isfinite(mc));
  EXPECT_LE(mc, mf);
}

TEST(Discharge, MeanJumpCountMatchesRateIntegral) {
  fp::SolverConfig pc;
  pc.mode = fp::Mode::DischargeFull;
  pc.spec.delta = 0.125;
  const auto pde = fp::solve_fp(pc);
  double integral = 0.0;
  for (std::size_t m = 1; m < pde.firing.times.size(); ++m) {
    integral += 0.5 * (pde.firing.times[m] - pde.firing.times[m - 1]) *
                (pde.firing.values[m] + pde.firing.values[m - 1]);
  }
  auto c = base_config(0.125);
  c.x0_sigma = 0.1;
  const auto paths = sim::simulate_ensemble(sim::PathModel::Discharge, c, 21, 100000, 0);
  EXPECT_NEAR(mean_jumps(paths, 1.0), integral, 0.02);
}

TEST(KilledDischarge, RecordStopsAtTheFirstJump) {
  auto c = base_config(0.125);
  c.spec.x0 = 0.5;
  const auto paths = sim::simulate_ensemble(sim::PathModel::KilledDischarge, c, 6, 3000, 1);
  std::size_t killed = 0;
  for (const auto& p : paths) {
    EXPECT_TRUE(p.jump_times.empty());
    if (p.terminal == sim::Terminal::KilledAtFirstJump) {
      ++killed;
      EXPECT_GT(p.end_time, 0.0);
      EXPECT_LE(p.end_time, c.t_max);
    } else {
      EXPECT_EQ(p.end_time, c.t_max);
    }
  }
  EXPECT_GT(killed, 0u);
}

TEST(KilledDischarge, ZeroRateNeverKills) {
  auto c = base_config();
  c.spec.rate_kind = sim::RateKind::Off;
  c.spec.x0 = 0.9;
  const auto paths = sim::simulate_ensemble(sim::PathModel::KilledDischarge, c, 6, 2000, 1);
  for (const auto& p : paths) EXPECT_EQ(p.terminal, sim::Terminal::Survived);
}

TEST(KilledDischarge, SurvivalMatchesKilledMass) {
  fp::SolverConfig pc;
  pc.mode = fp::Mode::DischargeKilled;
  pc.spec.delta = 0.125;
  const auto pde = fp::solve_fp(pc);
  auto c = base_config(0.125);
  c.x0_sigma = 0.1;
  const auto paths = sim::simulate_ensemble(sim::PathModel::KilledDischarge, c, 17, 100000, 0);
  const auto survived = std::count_if(paths.begin(), paths.end(),
                                      [](const auto& p) { return p.terminal == sim::Terminal::Survived; });
  EXPECT_NEAR(static_cast<double>(survived) / 100000.0, pde.mass.back(), 0.02);
}

TEST(Coupling, HardWallFiresFirst) {
  sim::CoupledConfig c;
  c.delta = 0.125;
  const auto samples = sim::simulate_coupled_ensemble(c, 12, 10000, 0);
  std::size_t uncensored = 0;
  for (const auto& s : samples) {
    EXPECT_LE(s.t_hard, s.t_soft);
    EXPECT_GE(s.gamma, 0.0);
    if (!s.soft_censored()) ++uncensored;
  }
  EXPECT_GT(uncensored, 100u);
}

TEST(Coupling, ZeroClockFiresAtHardWallTime) {
  sim::CoupledConfig c;
  c.forced_gamma = 0.0;
  c.t_max = 5.0;
  for (std::uint64_t i = 0; i < 200; ++i) {
    const auto s = sim::simulate_coupled_first_jumps(c, {3, i});
    if (s.hard_censored()) continue;
    EXPECT_NEAR(s.t_soft, s.t_hard, 1e-12);
  }
}

TEST(Coupling, DelayShrinksWithDelta) {
  const double eta = 0.1;
  double prev = 2.0;
  for (double delta : {0.5, 0.125, 1.0 / 32.0}) {
    sim::CoupledConfig c;
    c.delta = delta;
    c.t_max = 3.0;
    const auto samples = sim::simulate_coupled_ensemble(c, 77, 20000, 0);
    std::size_t hits = 0;
    std::size_t late = 0;
    for (const auto& s : samples) {
      if (s.hard_censored()) continue;
      ++hits;
      if (s.t_soft - s.t_hard > eta) ++late;
    }
    const double p = static_cast<double>(late) / static_cast<double>(hits);
    EXPECT_LT(p, prev) << "delta = " << delta;
    prev = p;
  }
}

TEST(Ensemble, DeterministicAcrossThreadCounts) {
  auto c = base_config(0.125);
  c.x0_sigma = 0.1;
  c.observe_times = {0.5, 1.0};
  const auto one = sim::simulate_ensemble(sim::PathModel::Discharge, c, 5, 257, 1);
  const auto many = sim::simulate_ensemble(sim::PathModel::Discharge, c, 5, 257, 4);
  ASSERT_EQ(one.size(), many.size());
  for (std::size_t i = 0; i < one.size(); ++i) EXPECT_TRUE(identical(one[i], many[i])) << i;
  EXPECT_TRUE(identical(one[17], sim::simulate_discharge(c, {5, 17})));
}

TEST(Ensemble, CoupledDeterministicAcrossThreadCounts) {
  sim::CoupledConfig c;
  const auto a = sim::simulate_coupled_ensemble(c, 9, 100, 1);
  const auto b = sim::simulate_coupled_ensemble(c, 9, 100, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_EQ(a[i].t_hard, b[i].t_hard);
    EXPECT_EQ(a[i].t_soft, b[i].t_soft);
    EXPECT_EQ(a[i].gamma, b[i].gamma);
  }
}

TEST(Regularization, SoftSurvivalDominatesHardSurvival) {
  auto c = base_config(0.125);
  c.x0_sigma = 0.1;
  const std::size_t n = 40000;
  const auto soft = sim::simulate_ensemble(sim::PathModel::KilledDischarge, c, 31, n, 0);
  const auto hard = sim::simulate_ensemble(sim::PathModel::HardWall, c, 32, n, 0);
  for (double t : {0.25, 0.5, 0.75, 1.0}) {
    const double ps = 1.0 - sim::empirical_jump_probability(soft, 1, t);
    const double ph = 1.0 - sim::empirical_jump_probability(hard, 1, t);
    const double se = std::hypot(sim::binomial_stderr(ps, n), sim::binomial_stderr(ph, n));
    EXPECT_GE(ps, ph - 2.0 * se) << "t = " << t;
  }
}

TEST(JumpCounts, ExponentialDecayInN) {
  // A horizon of 4 keeps P(T_n <= t) resolvable up to n = 6; at t = 1 it is zero by n = 5.
  auto c = base_config(0.125);
  c.spec.x0 = 0.0;
  c.t_max = 4.0;
  c.observe_times = {4.0};
  const std::size_t n_paths = 100000;
  const auto paths = sim::simulate_ensemble(sim::PathModel::Discharge, c, 41, n_paths, 0);
  std::vector<double> logp;
  for (std::size_t n = 1; n <= 6; ++n) {
    const double p = sim::empirical_jump_probability(paths, n, 4.0);
    ASSERT_GT(p * n_paths, 20.0) << "n = " << n;
    logp.push_back(std::log(p));
  }
  for (std::size_t i = 1; i < logp.size(); ++i) EXPECT_LT(logp[i], logp[i - 1]);
  // Concave or linear: successive decrements do not shrink, up to sampling noise.
  for (std::size_t i = 2; i < logp.size(); ++i) {
    EXPECT_LE(logp[i] - logp[i - 1], logp[i - 1] - logp[i - 2] + 0.15) << "n = " << i + 1;
  }
}

TEST(JumpCounts, SubCdfAtThresholdDecaysGeometrically) {
  auto c = base_config(0.125);
  c.spec.x0 = 0.0;
  c.t_max = 4.0;
  c.observe_times = {4.0};
  const auto paths = sim::simulate_ensemble(sim::PathModel::Discharge, c, 43, 20000, 0);
  std::vector<double> n_axis;
  std::vector<double> logf;
  for (std::size_t n = 3; n <= 6; ++n) {
    const double f = sim::empirical_sub_cdf(paths, n, 1.0, 4.0);
    ASSERT_GT(f, 0.0);
    n_axis.push_back(static_cast<double>(n));
    logf.push_back(std::log(f));
  }
  // Least-squares slope of log F_n against n.
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < n_axis.size(); ++i) {
    mx += n_axis[i];
    my += logf[i];
  }
  mx /= n_axis.size();
  my /= n_axis.size();
  double sxy = 0.0;
  double sxx = 0.0;
  for (std::size_t i = 0; i < n_axis.size(); ++i) {
    sxy += (n_axis[i] - mx) * (logf[i] - my);
    sxx += (n_axis[i] - mx) * (n_axis[i] - mx);
  }
  EXPECT_LT(sxy / sxx, 0.0);
}
