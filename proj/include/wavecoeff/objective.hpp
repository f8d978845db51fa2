#pragma once

#include <cstdint>
#include <vector>

#include "wavecoeff/mesh.hpp"
#include "wavecoeff/model.hpp"
#include "wavecoeff/window.hpp"

namespace wavecoeff {

struct ObjectiveConfig {
  double alpha = 0.0;
  ObservationWindow window = ObservationWindow::full();
};

/// J(p) = misfit_sq + regularization, with
///   misfit_sq      = ||u(p) - u^delta||^2 over omega x (0, T)
///   regularization = alpha ||grad p||^2 over Omega
struct ObjectiveValue {
  double misfit_sq = 0.0;
  double regularization = 0.0;
  double total = 0.0;
};

ObjectiveValue evaluate_J(const SpatialField& p, const SpaceTimeField& u_of_p,
                          const SpaceTimeField& data, const ObjectiveConfig& cfg);

/// g(x) = int_0^T u_x z_x dt: grid derivative per level, trapezoid in time.
/// Boundary entries are set to zero; only interior values are meaningful.
SpatialField gradient_field(const SpaceTimeField& u, const SpaceTimeField& z);

/// Two evaluations of J'(p) direction.
struct DirectionalDerivative {
  /// -2 int (g + alpha Delta p) direction dx, via the backward problem.
  double adjoint_form = 0.0;
  /// 2 int int w0 chi (u - u^delta) + 2 alpha int grad p . grad direction,
  /// via the sensitivity problem.
  double sensitivity_form = 0.0;
};

/// `direction` must vanish at both boundary nodes.
DirectionalDerivative directional_derivative(const ForwardModel& model,
                                             const SpatialField& p,
                                             const SpatialField& direction,
                                             const SpaceTimeField& data,
                                             const ObjectiveConfig& cfg);

/// J^s(p, q) = J(p) + K ||grad(p - q)||^2 - ||u(p) - u(q)||^2_{omega x (0,T)}.
double evaluate_surrogate(const SpatialField& p, const SpatialField& q,
                          const SpaceTimeField& u_p, const SpaceTimeField& u_q,
                          const SpaceTimeField& data, double K,
                          const ObjectiveConfig& cfg);

/// One sampled pair for the K condition
///   ||u(p) - u(q)||^2 <= K ||grad(p - q)||^2.
struct SurrogateSample {
  double forward_gap_sq = 0.0;   // ||u(p) - u(q)||^2 over omega x (0, T)
  double gradient_gap_sq = 0.0;  // ||grad(p - q)||^2
  double ratio = 0.0;            // forward_gap_sq / gradient_gap_sq
  double surrogate = 0.0;        // J^s(p, q)
  bool condition_holds = false;  // ratio <= K
};

struct SurrogateSamplingOptions {
  int n_samples = 20;
  std::uint64_t seed = 1;
  double boundary_left = 1.0;
  double boundary_right = 1.0;
  double kappa1 = 0.1;
  /// Largest amplitude of each random sine mode added to the boundary lift.
  double amplitude = 0.3;
  int n_modes = 4;
};

/// Draws random admissible pairs and evaluates both sides of the K condition
/// and J^s for each.
std::vector<SurrogateSample> sample_surrogate(const ForwardModel& model,
                                              const SpaceTimeField& data, double K,
                                              const ObjectiveConfig& cfg,
                                              const SurrogateSamplingOptions& opts);

/// max ratio over the samples.
double empirical_K(const std::vector<SurrogateSample>& samples);

}  // namespace wavecoeff
