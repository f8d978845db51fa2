#include "wavecoeff/reconstruct.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>

#include "wavecoeff/elliptic.hpp"
#include "wavecoeff/errors.hpp"
#include "wavecoeff/wave.hpp"

namespace wavecoeff {

void CoefficientSpec::validate() const {
  if (!(kappa1 > 0.0)) throw InvalidParameterError("kappa1 must be positive");
  if (!(boundary_left >= kappa1) || !(boundary_right >= kappa1))
    throw InvalidParameterError("boundary values of p must be at least kappa1");
  if (!(M1 > 0.0)) throw InvalidParameterError("M1 must be positive");
}

void IterationConfig::validate() const {
  if (!(K > 0.0)) throw InvalidParameterError("K must be positive");
  if (!(alpha > 0.0)) throw InvalidParameterError("alpha must be positive");
  if (!(epsilon > 0.0)) throw InvalidParameterError("epsilon must be positive");
  if (max_iter < 1) throw InvalidParameterError("max_iter must be at least 1");
}

double relative_l2_error(const SpatialField& p, const SpatialField& p_true) {
  require_same_grid(p, p_true);
  SpatialField diff(p.grid);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = p[i] - p_true[i];
  return l2_norm_spatial(diff) / l2_norm_spatial(p_true);
}

double h1_norm(const SpatialField& p) {
  const auto g = grad_spatial(p);
  return std::sqrt(inner_product(p, p) + inner_product(g, g));
}

SpatialField update_laplacian(const SpatialField& laplacian, const SpatialField& g, double K,
                              double alpha) {
  require_same_grid(laplacian, g);
  const double keep = K / (K + alpha);
  const double step = 1.0 / (K + alpha);
  SpatialField out(laplacian.grid);
  const int n = laplacian.grid.n_cells();
  for (int i = 1; i < n; ++i) out[i] = keep * laplacian[i] - step * g[i];
  return out;
}

IterateOutput iterate_once(const ForwardModel& model, const ObservationWindow& window,
                           const SpaceTimeField& data, const CoefficientSpec& spec,
                           const IterationConfig& cfg, const IterateState& state,
                           int iteration) {
  const auto& p = state.p;
  const double p_min = *std::min_element(p.values.begin(), p.values.end());
  if (!(p_min > 0.0))
    throw DegenerateIterateError(iteration, "coefficient lost positivity (min p = " +
                                                std::to_string(p_min) + ")");

  const auto u = model.solve(p);
  SpaceTimeField residual(u.grid, u.tgrid);
  for (std::size_t j = 0; j < residual.values.size(); ++j)
    residual.values[j] = u.values[j] - data.values[j];
  const auto z = solve_backward(p, residual, window);
  const auto g = gradient_field(u, z);

  IterateOutput out{{SpatialField(p.grid), update_laplacian(state.laplacian, g, cfg.K, cfg.alpha)},
                    evaluate_J(p, u, data, ObjectiveConfig{cfg.alpha, window}),
                    false};
  out.next.p = solve_poisson({out.next.laplacian, spec.boundary_left, spec.boundary_right});
  if (spec.clamp_enabled) {
    for (double& v : out.next.p.values) {
      if (v < spec.kappa1) {
        v = spec.kappa1;
        out.clamped = true;
      }
    }
  }
  return out;
}

ReconstructionResult run_reconstruction(const ForwardModel& model,
                                        const ObservationWindow& window,
                                        const SpaceTimeField& data,
                                        const CoefficientSpec& spec,
                                        const IterationConfig& cfg,
                                        const RunOptions& options) {
  spec.validate();
  cfg.validate();
  require_same_mesh(data, model.source);
  window.require_compatible(model.grid());
  if (options.p_true) require_same_grid(*options.p_true, model.initial_value);

  const auto start = std::chrono::steady_clock::now();
  IterateState state{options.initial_guess.value_or(SpatialField(model.grid(), 1.0)),
                     SpatialField(model.grid())};
  require_same_grid(state.p, model.initial_value);
  state.laplacian = laplacian_spatial(state.p);

  constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
  ReconstructionResult result{state.p, 0, kNaN, {}, 0.0, false};
  for (int m = 0; m < cfg.max_iter; ++m) {
    auto step = iterate_once(model, window, data, spec, cfg, state, m + 1);
    SpatialField diff(state.p.grid);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = step.next.p[i] - state.p[i];

    IterationRecord rec;
    rec.iter = m + 1;
    rec.step_ratio = l2_norm_spatial(diff) / l2_norm_spatial(state.p);
    rec.J = step.objective.total;
    rec.misfit = step.objective.misfit_sq;
    rec.err = options.p_true ? relative_l2_error(step.next.p, *options.p_true) : kNaN;
    rec.h1_norm = h1_norm(step.next.p);
    rec.clamped = step.clamped;
    result.history.push_back(rec);

    state = std::move(step.next);
    if (rec.step_ratio <= cfg.epsilon) {
      result.converged = true;
      break;
    }
  }
  result.iterations = static_cast<int>(result.history.size());
  result.p_final = state.p;
  if (options.p_true) result.rel_error = relative_l2_error(result.p_final, *options.p_true);
  result.elapsed_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

SuggestedParameters suggest_parameters(const ObservationWindow& window, double delta0) {
  if (!(delta0 >= 0.0 && delta0 < 1.0))
    throw InvalidParameterError("relative noise level must lie in [0, 1)");
  return {suggest::kPerMeasure * window.measure(),
          std::max(suggest::kAlphaPerNoise * delta0, suggest::kAlphaFloor),
          std::max(suggest::kEpsilonPerNoise * delta0, suggest::kEpsilonFloor)};
}

}  // namespace wavecoeff
