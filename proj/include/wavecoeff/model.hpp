#pragma once

#include "wavecoeff/mesh.hpp"

namespace wavecoeff {

/// The known parts of the forward problem: mesh, source F and initial value u0.
struct ForwardModel {
  SpaceTimeField source;
  SpatialField initial_value;

  const Grid1D& grid() const noexcept { return source.grid; }
  const TimeGrid& time_grid() const noexcept { return source.tgrid; }

  /// u(p).
  SpaceTimeField solve(const SpatialField& p) const;
};

/// The numerical setting used throughout the reconstruction examples:
/// F(x, t) = x + t + 1 and u0 = 1.
ForwardModel make_reference_model(const Grid1D& grid, const TimeGrid& tgrid);

}  // namespace wavecoeff
