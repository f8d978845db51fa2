#pragma once

#include <span>
#include <vector>

namespace wavecoeff {

/// Tridiagonal system with sub-diagonal `lower`, diagonal `diag` and
/// super-diagonal `upper` (lower[0] and upper[n-1] unused), factored once by
/// Thomas elimination and then solved for any number of right-hand sides.
class TridiagonalFactor {
 public:
  TridiagonalFactor(std::vector<double> lower, std::vector<double> diag,
                    std::vector<double> upper);

  std::size_t size() const noexcept { return diag_.size(); }

  /// Overwrites rhs with the solution.
  void solve_in_place(std::span<double> rhs) const;

  /// max_i |(A x - b)_i| for the original matrix.
  double residual_max(std::span<const double> x, std::span<const double> b) const;

 private:
  std::vector<double> lower_;
  std::vector<double> diag_;
  std::vector<double> upper_;
  std::vector<double> c_prime_;
  std::vector<double> inv_denom_;
};

}  // namespace wavecoeff
