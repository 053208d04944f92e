#include "softwall/analysis/power_law.hpp"

#include <cmath>
#include <stdexcept>

namespace softwall::analysis {

LineFit fit_line(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw std::invalid_argument("fit_line: need at least two (x, y) pairs");
  }
  const double n = static_cast<double>(x.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("fit_line: abscissae are all equal");
  LineFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.intercept + fit.slope * x[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

PowerLawFit fit_power_law(std::span<const double> deltas, std::span<const double> values,
                          std::size_t first, std::size_t last) {
  if (deltas.size() != values.size()) throw std::invalid_argument("fit_power_law: size mismatch");
  if (last >= deltas.size() || first >= last) {
    throw std::invalid_argument("fit_power_law: window must hold at least two points");
  }
  std::vector<double> lx;
  std::vector<double> ly;
  for (std::size_t i = first; i <= last; ++i) {
    if (!(deltas[i] > 0.0) || !(values[i] > 0.0) || !std::isfinite(values[i])) {
      throw std::invalid_argument("fit_power_law: values and deltas in the window must be positive");
    }
    lx.push_back(std::log(deltas[i]));
    ly.push_back(std::log(values[i]));
  }
  const LineFit line = fit_line(lx, ly);
  return PowerLawFit{line.slope, std::exp(line.intercept), line.residual};
}

ConvergenceReport make_convergence_report(std::vector<int> ks, std::vector<double> discrepancies,
                                          KRange window) {
  if (ks.size() != discrepancies.size()) {
    throw std::invalid_argument("make_convergence_report: ks/discrepancies size mismatch");
  }
  for (std::size_t i = 1; i < ks.size(); ++i) {
    if (ks[i] <= ks[i - 1]) throw std::invalid_argument("make_convergence_report: ks must increase");
  }
  ConvergenceReport report;
  report.ks = std::move(ks);
  report.discrepancies = std::move(discrepancies);
  report.fit_window = window;
  for (int k : report.ks) report.deltas.push_back(std::ldexp(1.0, -k));

  std::size_t first = report.ks.size();
  std::size_t last = 0;
  for (std::size_t i = 0; i < report.ks.size(); ++i) {
    if (!window.contains(report.ks[i])) continue;
    first = std::min(first, i);
    last = i;
  }
  if (first >= report.ks.size()) throw std::invalid_argument("make_convergence_report: empty fit window");
  report.fit = fit_power_law(report.deltas, report.discrepancies, first, last);
  return report;
}

}  // namespace softwall::analysis
