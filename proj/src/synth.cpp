#include "wavecoeff/synth.hpp"

#include "wavecoeff/errors.hpp"
#include "wavecoeff/rng.hpp"

namespace wavecoeff {

NoisySample make_observation(const ForwardModel& model, const SpatialField& p_true,
                             const ObservationWindow& window, double delta0,
                             std::uint64_t seed) {
  if (!(delta0 >= 0.0 && delta0 < 1.0))
    throw InvalidParameterError("relative noise level must lie in [0, 1)");
  window.require_compatible(model.grid());

  NoisySample out{model.solve(p_true), SpaceTimeField(model.grid(), model.time_grid()), 0.0,
                  delta0, seed, 0};
  out.noisy = out.clean;
  out.delta = delta0 * max_abs(out.clean.values);
  const auto chi = window.indicator(model.grid());
  const CounterRng rng(seed);
  std::uint64_t counter = 0;
  for (int k = 0; k < out.noisy.n_levels(); ++k) {
    auto row = out.noisy.level(k);
    for (int i = 0; i < out.noisy.n_nodes(); ++i) {
      if (chi[i] == 0.0) continue;
      if (out.delta != 0.0) row[i] += out.delta * rng.symmetric(counter);
      ++counter;
    }
  }
  out.n_perturbed = counter;
  return out;
}

}  // namespace wavecoeff
