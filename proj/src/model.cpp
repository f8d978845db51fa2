#include "wavecoeff/model.hpp"

#include "wavecoeff/wave.hpp"

namespace wavecoeff {

SpaceTimeField ForwardModel::solve(const SpatialField& p) const {
  WaveSolver solver(p, time_grid());
  return solver.solve(source, initial_value);
}

ForwardModel make_reference_model(const Grid1D& grid, const TimeGrid& tgrid) {
  return ForwardModel{
      SpaceTimeField::sample(grid, tgrid, [](double x, double t) { return x + t + 1.0; }),
      SpatialField(grid, 1.0)};
}

}  // namespace wavecoeff
