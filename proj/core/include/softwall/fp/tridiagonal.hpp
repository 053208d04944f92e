#pragma once

#include <cstddef>
#include <vector>

namespace softwall::fp {

/// Row i reads lower[i] u[i-1] + diag[i] u[i] + upper[i] u[i+1] = rhs[i];
/// lower[0] and upper[n-1] are ignored.
struct TridiagonalSystem {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;
  std::vector<double> rhs;

  std::size_t size() const { return diag.size(); }
  /// A u evaluated row by row.
  std::vector<double> apply(const std::vector<double>& u) const;
};

/// Forward elimination / back substitution without pivoting.
/// Throws std::runtime_error on a zero pivot and std::invalid_argument on ragged input.
std::vector<double> thomas_solve(const TridiagonalSystem& system);

}  // namespace softwall::fp
