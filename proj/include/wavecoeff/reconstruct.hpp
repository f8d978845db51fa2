#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "wavecoeff/mesh.hpp"
#include "wavecoeff/model.hpp"
#include "wavecoeff/objective.hpp"
#include "wavecoeff/window.hpp"

namespace wavecoeff {

/// Admissible set: p = h0 on the boundary, p >= kappa1, ||p||_{H^1} <= M1.
struct CoefficientSpec {
  double boundary_left = 1.0;
  double boundary_right = 1.0;
  double kappa1 = 0.1;
  /// Reported against, never enforced.
  double M1 = 10.0;
  bool clamp_enabled = true;

  void validate() const;
};

struct IterationConfig {
  double K = 2e-5;
  double alpha = 1e-7;
  double epsilon = 1e-3;
  int max_iter = 500;
  std::uint64_t seed = 1;

  void validate() const;
};

struct IterationRecord {
  int iter = 0;            // m + 1
  double step_ratio = 0;   // ||p_{m+1} - p_m|| / ||p_m||
  double J = 0;            // J(p_m)
  double misfit = 0;       // ||u(p_m) - u^delta||^2 over omega x (0, T)
  double err = 0;          // relative L2 error of p_{m+1}; NaN without p_true
  double h1_norm = 0;      // ||p_{m+1}||_{H^1}
  bool clamped = false;    // the kappa1 clamp changed p_{m+1}
};

struct ReconstructionResult {
  SpatialField p_final;
  int iterations = 0;
  double rel_error = 0.0;  // NaN without p_true
  std::vector<IterationRecord> history;
  double elapsed_seconds = 0.0;
  bool converged = false;
};

/// State carried between iterations: the iterate and the Poisson right-hand
/// side that produced it (its discrete Laplacian).
struct IterateState {
  SpatialField p;
  SpatialField laplacian;
};

struct IterateOutput {
  IterateState next;
  ObjectiveValue objective;  // J at the incoming iterate
  bool clamped = false;
};

/// Laplacian update q_{m+1} = K/(K+alpha) q_m - g/(K+alpha) at interior nodes.
SpatialField update_laplacian(const SpatialField& laplacian, const SpatialField& g,
                              double K, double alpha);

/// One step: forward solve, backward solve, gradient field, Laplacian update
/// and Poisson solve with the boundary data of `spec`. `iteration` is used only
/// to label a DegenerateIterateError.
IterateOutput iterate_once(const ForwardModel& model, const ObservationWindow& window,
                           const SpaceTimeField& data, const CoefficientSpec& spec,
                           const IterationConfig& cfg, const IterateState& state,
                           int iteration = 0);

struct RunOptions {
  /// Initial guess; defaults to p0 = 1.
  std::optional<SpatialField> initial_guess;
  std::optional<SpatialField> p_true;
};

/// Repeats iterate_once until the relative step falls to epsilon or max_iter
/// steps are taken. Not converging is reported through `converged`.
ReconstructionResult run_reconstruction(const ForwardModel& model,
                                        const ObservationWindow& window,
                                        const SpaceTimeField& data,
                                        const CoefficientSpec& spec,
                                        const IterationConfig& cfg,
                                        const RunOptions& options = {});

struct SuggestedParameters {
  double K;
  double alpha;
  double epsilon;
};

/// Empirical rules K = c_K |omega|, alpha = c_alpha delta0, epsilon = c_eps
/// delta0, with floors for noiseless data.
SuggestedParameters suggest_parameters(const ObservationWindow& window, double delta0);

namespace suggest {
inline constexpr double kPerMeasure = 1e-4;       // K per unit |omega|
inline constexpr double kAlphaPerNoise = 1e-5;    // alpha per unit delta0
inline constexpr double kAlphaFloor = 1e-9;
inline constexpr double kEpsilonPerNoise = 0.015;   // epsilon per unit delta0
inline constexpr double kEpsilonFloor = 1e-4;
}  // namespace suggest

double relative_l2_error(const SpatialField& p, const SpatialField& p_true);

/// ||p||_{H^1} with the trapezoid rule and grad_spatial.
double h1_norm(const SpatialField& p);

}  // namespace wavecoeff
