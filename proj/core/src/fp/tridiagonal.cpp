#include "softwall/fp/tridiagonal.hpp"

#include <stdexcept>
#include <string>

namespace softwall::fp {

namespace {

void check_shape(const TridiagonalSystem& s) {
  const std::size_t n = s.diag.size();
  if (n == 0 || s.lower.size() != n || s.upper.size() != n || s.rhs.size() != n) {
    throw std::invalid_argument("TridiagonalSystem: lower/diag/upper/rhs must share a nonzero length");
  }
}

}  // namespace

std::vector<double> TridiagonalSystem::apply(const std::vector<double>& u) const {
  check_shape(*this);
  const std::size_t n = diag.size();
  if (u.size() != n) throw std::invalid_argument("TridiagonalSystem::apply: size mismatch");
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double v = diag[i] * u[i];
    if (i > 0) v += lower[i] * u[i - 1];
    if (i + 1 < n) v += upper[i] * u[i + 1];
    out[i] = v;
  }
  return out;
}

std::vector<double> thomas_solve(const TridiagonalSystem& s) {
  check_shape(s);
  const std::size_t n = s.diag.size();
  std::vector<double> c(n, 0.0);
  std::vector<double> d(n, 0.0);

  double pivot = s.diag[0];
  if (pivot == 0.0) throw std::runtime_error("thomas_solve: zero pivot at row 0");
  c[0] = n > 1 ? s.upper[0] / pivot : 0.0;
  d[0] = s.rhs[0] / pivot;
  for (std::size_t i = 1; i < n; ++i) {
    pivot = s.diag[i] - s.lower[i] * c[i - 1];
    if (pivot == 0.0) throw std::runtime_error("thomas_solve: zero pivot at row " + std::to_string(i));
    c[i] = i + 1 < n ? s.upper[i] / pivot : 0.0;
    d[i] = (s.rhs[i] - s.lower[i] * d[i - 1]) / pivot;
  }
  std::vector<double> u(n);
  u[n - 1] = d[n - 1];
  for (std::size_t i = n - 1; i-- > 0;) u[i] = d[i] - c[i] * u[i + 1];
  return u;
}

}  // namespace softwall::fp
