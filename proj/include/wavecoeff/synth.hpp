#pragma once

#include <cstdint>

#include "wavecoeff/mesh.hpp"
#include "wavecoeff/model.hpp"
#include "wavecoeff/window.hpp"

namespace wavecoeff {

struct NoisySample {
  SpaceTimeField clean;  // u(p_true)
  SpaceTimeField noisy;  // u^delta
  double delta = 0.0;    // absolute level: delta0 * max |clean|
  double delta0 = 0.0;   // relative level
  std::uint64_t seed = 0;
  /// Number of perturbed mesh entries (window nodes times time levels).
  std::size_t n_perturbed = 0;
};

/// u^delta = u(p_true) + delta * xi with xi uniform on [-1, 1). Noise is drawn
/// only at nodes with nonzero window weight, traversing time levels in order
/// and nodes in ascending index within a level; draw n uses counter n.
NoisySample make_observation(const ForwardModel& model, const SpatialField& p_true,
                             const ObservationWindow& window, double delta0,
                             std::uint64_t seed);

}  // namespace wavecoeff
