#include "wavecoeff/elliptic.hpp"

#include <cmath>

#include "wavecoeff/errors.hpp"
#include "wavecoeff/tridiagonal.hpp"

namespace wavecoeff {

SpatialField solve_poisson(const PoissonProblem& problem) {
  const auto& rhs = problem.rhs;
  const Grid1D& grid = rhs.grid;
  const int n = grid.n_cells();
  for (int i = 1; i < n; ++i)
    if (!std::isfinite(rhs[i])) throw InvalidFieldError("Poisson right-hand side is not finite");
  if (!std::isfinite(problem.boundary_left) || !std::isfinite(problem.boundary_right))
    throw InvalidFieldError("Poisson boundary data is not finite");

  SpatialField p(grid);
  p[0] = problem.boundary_left;
  p[n] = problem.boundary_right;
  if (n == 1) return p;

  // Interior unknowns 1..n-1, equations scaled by h^2.
  const int m = n - 1;
  const double h2 = grid.h() * grid.h();
  std::vector<double> lower(m, 1.0), diag(m, -2.0), upper(m, 1.0), b(m);
  for (int j = 0; j < m; ++j) b[j] = h2 * rhs[j + 1];
  b.front() -= problem.boundary_left;
  b.back() -= problem.boundary_right;
  TridiagonalFactor factor(std::move(lower), std::move(diag), std::move(upper));
  factor.solve_in_place(b);
  for (int j = 0; j < m; ++j) p[j + 1] = b[j];
  return p;
}

}  // namespace wavecoeff
