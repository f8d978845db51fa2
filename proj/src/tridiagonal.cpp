#include "wavecoeff/tridiagonal.hpp"

#include <cassert>
#include <cmath>

#include "wavecoeff/errors.hpp"

namespace wavecoeff {

TridiagonalFactor::TridiagonalFactor(std::vector<double> lower, std::vector<double> diag,
                                     std::vector<double> upper)
    : lower_(std::move(lower)), diag_(std::move(diag)), upper_(std::move(upper)) {
  const std::size_t n = diag_.size();
  if (n == 0 || lower_.size() != n || upper_.size() != n)
    throw DimensionMismatchError("tridiagonal bands must have equal nonzero length");
  c_prime_.assign(n, 0.0);
  inv_denom_.assign(n, 0.0);
  double c_prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double denom = diag_[i] - (i ? lower_[i] * c_prev : 0.0);
    if (denom == 0.0 || !std::isfinite(denom))
      throw DegenerateCoefficientError("singular tridiagonal system");
    inv_denom_[i] = 1.0 / denom;
    c_prev = (i + 1 < n) ? upper_[i] * inv_denom_[i] : 0.0;
    c_prime_[i] = c_prev;
  }
}

void TridiagonalFactor::solve_in_place(std::span<double> rhs) const {
  const std::size_t n = diag_.size();
  assert(rhs.size() == n);
  rhs[0] *= inv_denom_[0];
  for (std::size_t i = 1; i < n; ++i)
    rhs[i] = (rhs[i] - lower_[i] * rhs[i - 1]) * inv_denom_[i];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= c_prime_[i] * rhs[i + 1];
}

double TridiagonalFactor::residual_max(std::span<const double> x,
                                       std::span<const double> b) const {
  const std::size_t n = diag_.size();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double ax = diag_[i] * x[i];
    if (i > 0) ax += lower_[i] * x[i - 1];
    if (i + 1 < n) ax += upper_[i] * x[i + 1];
    worst = std::max(worst, std::abs(ax - b[i]));
  }
  return worst;
}

}  // namespace wavecoeff
