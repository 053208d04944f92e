#include <cmath>
#include <exception>
#include <limits>
#include <optional>
#include <utility>

#include "softwall/analysis/metrics.hpp"
#include "softwall/detail/parallel.hpp"
#include "softwall/experiment/studies.hpp"

namespace softwall::experiment {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

std::string b_tag(double b) { return "b" + format_number(b); }

bool same_b(double a, double b) { return a == b; }

SolveDiagnostics diagnose(const fp::Solution& s, double b, int k) {
  SolveDiagnostics d;
  d.b = b;
  d.k = k;
  d.mode = s.config.mode;
  d.min_density = s.min_density;
  d.clamps = s.clamps.size();
  if (fp::is_killed(s.config.mode)) {
    for (std::size_t m = 1; m < s.mass.size(); ++m) {
      d.max_mass_increase = std::max(d.max_mass_increase, s.mass[m] - s.mass[m - 1]);
    }
  } else {
    d.mass_drift = std::abs(s.mass.back() - 1.0);
  }
  return d;
}

/// Result slot of one solve: either a solution or the reason it failed.
struct SolveSlot {
  std::optional<fp::Solution> solution;
  std::string failure;
};

SolveSlot solve_guarded(const fp::SolverConfig& cfg) {
  SolveSlot slot;
  try {
    slot.solution = fp::solve_fp(cfg);
  } catch (const std::exception& e) {
    slot.failure = e.what();
  }
  return slot;
}

CsvTable diagnostics_table(const std::vector<SolveDiagnostics>& diags) {
  CsvTable t({"b", "k", "mode", "min_density", "mass_drift", "max_mass_increase", "clamps", "status"});
  for (const auto& d : diags) {
    t.add_row({d.b, std::int64_t{d.k}, std::string(fp::to_string(d.mode)), d.min_density, d.mass_drift,
               d.max_mass_increase, static_cast<std::int64_t>(d.clamps),
               d.failure.empty() ? std::string("ok") : std::string(kFailed)});
  }
  return t;
}

std::vector<int> levels(const analysis::KRange& r) {
  std::vector<int> ks;
  for (int k = r.first; k <= r.last; ++k) ks.push_back(k);
  return ks;
}

}  // namespace

const char* to_string(Quantity q) {
  switch (q) {
    case Quantity::Density: return "Df";
    case Quantity::DensityKilled: return "Df0";
    case Quantity::Rate: return "DN";
    case Quantity::RateKilled: return "DN0";
  }
  return "?";
}

const CsvTable* RunOutput::find(const std::string& file) const {
  for (const auto& t : tables) {
    if (t.file == file) return &t.table;
  }
  return nullptr;
}

const RateFit* ConvergenceStudy::find(Quantity q, double b) const {
  for (const auto& f : fits) {
    if (f.quantity == q && same_b(f.b, b)) return &f;
  }
  return nullptr;
}

const SelfSimilarEntry* SelfSimilarStudy::find(double b, bool killed) const {
  for (const auto& e : entries) {
    if (e.killed == killed && same_b(e.b, b)) return &e;
  }
  return nullptr;
}

ConvergenceStudy run_convergence_study(const ExperimentConfig& config) {
  config.validate();
  const std::vector<int> ks = levels(config.k_range);
  const std::size_t nb = config.b_values.size();
  const std::size_t nk = ks.size();

  // References: (b, full/killed) hard-wall solves.
  std::vector<SolveSlot> refs(2 * nb);
  detail::parallel_for(refs.size(), config.threads, [&](std::size_t i) {
    const fp::Mode mode = i % 2 == 0 ? fp::Mode::HardWallFull : fp::Mode::HardWallKilled;
    refs[i] = solve_guarded(solver_config(config, mode, 1.0, config.b_values[i / 2]));
  });

  ConvergenceStudy study;
  study.cells.resize(nb * nk);
  std::vector<std::array<SolveDiagnostics, 2>> cell_diags(nb * nk);
  std::vector<std::array<bool, 2>> cell_ran(nb * nk, {false, false});
  detail::parallel_for(nb * nk, config.threads, [&](std::size_t i) {
    const std::size_t ib = i / nk;
    const double b = config.b_values[ib];
    const int k = ks[i % nk];
    const double delta = std::ldexp(1.0, -k);
    SweepCell& cell = study.cells[i];
    cell.b = b;
    cell.k = k;
    cell.delta = delta;
    cell.discrepancy.fill(kNaN);

    const SolveSlot& ref_full = refs[2 * ib];
    const SolveSlot& ref_killed = refs[2 * ib + 1];
    SolveSlot full = solve_guarded(solver_config(config, fp::Mode::DischargeFull, delta, b));
    SolveSlot killed = solve_guarded(solver_config(config, fp::Mode::DischargeKilled, delta, b));
    if (full.solution) {
      cell_diags[i][0] = diagnose(*full.solution, b, k);
      cell_ran[i][0] = true;
    }
    if (killed.solution) {
      cell_diags[i][1] = diagnose(*killed.solution, b, k);
      cell_ran[i][1] = true;
    }
    try {
      if (full.solution && ref_full.solution) {
        cell.discrepancy[0] = analysis::sup_discrepancy_density(analysis::final_profile(*full.solution),
                                                                analysis::final_profile(*ref_full.solution));
        cell.discrepancy[2] = analysis::sup_discrepancy_rate(full.solution->firing, ref_full.solution->firing);
      }
      if (killed.solution && ref_killed.solution) {
        cell.discrepancy[1] = analysis::sup_discrepancy_density(
            analysis::final_profile(*killed.solution), analysis::final_profile(*ref_killed.solution));
        cell.discrepancy[3] =
            analysis::sup_discrepancy_rate(killed.solution->firing, ref_killed.solution->firing);
      }
    } catch (const std::exception& e) {
      cell.failure = e.what();
    }
    for (const SolveSlot* s : {&std::as_const(full), &std::as_const(killed), &ref_full, &ref_killed}) {
      if (cell.failure.empty() && !s->failure.empty()) cell.failure = s->failure;
    }
  });

  for (std::size_t ib = 0; ib < nb; ++ib) {
    for (std::size_t r = 0; r < 2; ++r) {
      const SolveSlot& ref = refs[2 * ib + r];
      SolveDiagnostics d;
      if (ref.solution) {
        d = diagnose(*ref.solution, config.b_values[ib], -1);
      } else {
        d.b = config.b_values[ib];
        d.mode = r == 0 ? fp::Mode::HardWallFull : fp::Mode::HardWallKilled;
        d.failure = ref.failure;
      }
      study.diagnostics.push_back(d);
    }
    for (std::size_t ik = 0; ik < nk; ++ik) {
      const std::size_t i = ib * nk + ik;
      for (std::size_t r = 0; r < 2; ++r) {
        if (cell_ran[i][r]) {
          study.diagnostics.push_back(cell_diags[i][r]);
        } else {
          SolveDiagnostics d;
          d.b = config.b_values[ib];
          d.k = ks[ik];
          d.mode = r == 0 ? fp::Mode::DischargeFull : fp::Mode::DischargeKilled;
          d.failure = study.cells[i].failure.empty() ? "solve failed" : study.cells[i].failure;
          study.diagnostics.push_back(d);
        }
      }
    }
  }

  CsvTable table1({"quantity", "b", "R_or_alpha", "A_or_beta", "residual"});
  for (Quantity q : kQuantities) {
    for (std::size_t ib = 0; ib < nb; ++ib) {
      RateFit fit;
      fit.quantity = q;
      fit.b = config.b_values[ib];
      std::vector<double> values;
      for (std::size_t ik = 0; ik < nk; ++ik) values.push_back(study.cells[ib * nk + ik].at(q));
      try {
        fit.report = analysis::make_convergence_report(ks, values, config.fit_window);
      } catch (const std::exception& e) {
        fit.failure = e.what();
      }

      CsvTable report({"delta", "D", "in_fit_window"});
      for (std::size_t ik = 0; ik < nk; ++ik) {
        const double v = values[ik];
        CsvCell d_cell = std::isfinite(v) ? CsvCell{v} : CsvCell{std::string(kFailed)};
        report.add_row({std::ldexp(1.0, -ks[ik]), d_cell,
                        std::int64_t{config.fit_window.contains(ks[ik]) ? 1 : 0}});
      }
      study.output.tables.push_back(
          {std::string("report_") + to_string(q) + "_" + b_tag(fit.b) + ".csv", std::move(report)});

      if (fit.report) {
        table1.add_row({std::string(to_string(q)), fit.b, fit.report->fit.rate, fit.report->fit.prefactor,
                        fit.report->fit.residual});
      } else {
        table1.add_row({std::string(to_string(q)), fit.b, std::string(kFailed), std::string(kFailed),
                        std::string(kFailed)});
      }
      if (!fit.failure.empty()) study.output.all_passed = false;
      study.fits.push_back(std::move(fit));
    }
  }
  study.output.tables.insert(study.output.tables.begin(), NamedTable{"table1.csv", std::move(table1)});
  study.output.tables.push_back({"diagnostics.csv", diagnostics_table(study.diagnostics)});
  return study;
}

SelfSimilarStudy run_self_similar_study(const ExperimentConfig& config) {
  config.validate();
  const std::vector<int> ks = levels(config.fit_window);
  const std::size_t nb = config.b_values.size();
  const std::size_t nk = ks.size();

  std::vector<SolveSlot> slots(2 * nb * nk);
  detail::parallel_for(slots.size(), config.threads, [&](std::size_t i) {
    const std::size_t model = i / (nb * nk);
    const std::size_t ib = (i / nk) % nb;
    const double delta = std::ldexp(1.0, -ks[i % nk]);
    const fp::Mode mode = model == 0 ? fp::Mode::DischargeFull : fp::Mode::DischargeKilled;
    slots[i] = solve_guarded(solver_config(config, mode, delta, config.b_values[ib]));
  });

  SelfSimilarStudy study;
  CsvTable table2({"quantity", "b", "R_or_alpha", "A_or_beta", "residual"});
  CsvTable collapse({"model", "b", "collapse_error", "z_max"});
  std::vector<NamedTable> profiles;
  for (std::size_t model = 0; model < 2; ++model) {
    const std::string name = model == 0 ? "discharge" : "killed";
    for (std::size_t ib = 0; ib < nb; ++ib) {
      SelfSimilarEntry entry;
      entry.b = config.b_values[ib];
      entry.killed = model == 1;
      std::vector<analysis::SuperThresholdDensity> family;
      for (std::size_t ik = 0; ik < nk; ++ik) {
        const SolveSlot& slot = slots[(model * nb + ib) * nk + ik];
        if (!slot.solution) {
          entry.failure = slot.failure;
          break;
        }
        family.push_back(analysis::restrict_to_super_threshold(std::ldexp(1.0, -ks[ik]),
                                                               analysis::final_profile(*slot.solution)));
      }
      if (entry.failure.empty()) {
        try {
          entry.fit = analysis::fit_self_similar(family);
        } catch (const std::exception& e) {
          entry.failure = e.what();
        }
      }

      CsvTable profile({"delta", "z", "psi"});
      if (entry.fit) {
        const auto& fit = *entry.fit;
        table2.add_row({name, entry.b, fit.alpha, fit.beta, std::max(fit.alpha_residual, fit.beta_residual)});
        collapse.add_row({name, entry.b, fit.collapse_error, analysis::bulk_window(fit.profiles, 0.05).hi});
        for (const auto& p : fit.profiles) {
          for (std::size_t i = 0; i < p.z.size(); ++i) profile.add_row({p.delta, p.z[i], p.psi[i]});
        }
      } else {
        const std::string f(kFailed);
        table2.add_row({name, entry.b, f, f, f});
        collapse.add_row({name, entry.b, f, f});
      }
      if (!entry.failure.empty()) study.output.all_passed = false;
      profiles.push_back({"profile_" + name + "_" + b_tag(entry.b) + ".csv", std::move(profile)});
      study.entries.push_back(std::move(entry));
    }
  }
  study.output.tables.push_back({"table2.csv", std::move(table2)});
  study.output.tables.push_back({"collapse.csv", std::move(collapse)});
  for (auto& p : profiles) study.output.tables.push_back(std::move(p));
  return study;
}

}  // namespace softwall::experiment
