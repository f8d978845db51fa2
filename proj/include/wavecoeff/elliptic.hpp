#pragma once

#include "wavecoeff/mesh.hpp"

namespace wavecoeff {

/// Delta p = rhs at interior nodes, p = boundary data at both ends.
struct PoissonProblem {
  SpatialField rhs;
  double boundary_left = 0.0;
  double boundary_right = 0.0;
};

/// Direct tridiagonal solve of the 3-point discretisation. Boundary entries
/// of rhs are ignored.
SpatialField solve_poisson(const PoissonProblem& problem);

}  // namespace wavecoeff
