#include "wavecoeff/objective.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "wavecoeff/errors.hpp"
#include "wavecoeff/kernels.hpp"
#include "wavecoeff/rng.hpp"
#include "wavecoeff/wave.hpp"

namespace wavecoeff {

namespace {

SpaceTimeField difference(const SpaceTimeField& a, const SpaceTimeField& b) {
  require_same_mesh(a, b);
  SpaceTimeField d(a.grid, a.tgrid);
  for (std::size_t j = 0; j < d.values.size(); ++j) d.values[j] = a.values[j] - b.values[j];
  return d;
}

double gradient_norm_sq(const SpatialField& f) {
  const auto g = grad_spatial(f);
  return inner_product(g, g);
}

}  // namespace

ObjectiveValue evaluate_J(const SpatialField& p, const SpaceTimeField& u_of_p,
                          const SpaceTimeField& data, const ObjectiveConfig& cfg) {
  require_same_mesh(u_of_p, data);
  require_same_mesh(u_of_p, p);
  if (!(cfg.alpha >= 0.0)) throw InvalidParameterError("alpha must be nonnegative");
  ObjectiveValue out;
  const double misfit = l2_norm_spacetime(difference(u_of_p, data), cfg.window);
  out.misfit_sq = misfit * misfit;
  out.regularization = cfg.alpha == 0.0 ? 0.0 : cfg.alpha * gradient_norm_sq(p);
  out.total = out.misfit_sq + out.regularization;
  return out;
}

SpatialField gradient_field(const SpaceTimeField& u, const SpaceTimeField& z) {
  require_same_mesh(u, z);
  SpatialField g(u.grid);
  kernels::parallel::time_integrated_gradient_product(u.values, z.values,
                                                      u.tgrid.trapezoid_weights(),
                                                      u.n_nodes(), u.grid.h(), g.values);
  g.values.front() = 0.0;
  g.values.back() = 0.0;
  return g;
}

DirectionalDerivative directional_derivative(const ForwardModel& model, const SpatialField& p,
                                             const SpatialField& direction,
                                             const SpaceTimeField& data,
                                             const ObjectiveConfig& cfg) {
  require_same_grid(p, direction);
  const auto u = model.solve(p);
  const auto residual = difference(u, data);

  // Sensitivity route; also validates the boundary condition on `direction`.
  const auto w0 = solve_sensitivity(p, direction, u);
  const auto chi = cfg.window.indicator(p.grid);
  SpaceTimeField chi_residual(u.grid, u.tgrid);
  kernels::parallel::windowed_residual(u.values, data.values, chi, chi_residual.values);

  DirectionalDerivative out;
  out.sensitivity_form = 2.0 * inner_product(w0, chi_residual) +
                         2.0 * cfg.alpha * inner_product(grad_spatial(p), grad_spatial(direction));

  const auto z = solve_backward(p, residual, cfg.window);
  auto g = gradient_field(u, z);
  const auto lap = laplacian_spatial(p);
  for (std::size_t i = 0; i < g.size(); ++i) g[i] += cfg.alpha * lap[i];
  out.adjoint_form = -2.0 * inner_product(g, direction);
  return out;
}

double evaluate_surrogate(const SpatialField& p, const SpatialField& q,
                          const SpaceTimeField& u_p, const SpaceTimeField& u_q,
                          const SpaceTimeField& data, double K, const ObjectiveConfig& cfg) {
  require_same_grid(p, q);
  if (!(K > 0.0)) throw InvalidParameterError("K must be positive");
  const auto J = evaluate_J(p, u_p, data, cfg);
  SpatialField diff(p.grid);
  for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = p[i] - q[i];
  const double gap = l2_norm_spacetime(difference(u_p, u_q), cfg.window);
  return J.total + K * gradient_norm_sq(diff) - gap * gap;
}

std::vector<SurrogateSample> sample_surrogate(const ForwardModel& model,
                                              const SpaceTimeField& data, double K,
                                              const ObjectiveConfig& cfg,
                                              const SurrogateSamplingOptions& opts) {
  if (opts.n_samples < 1) throw InvalidParameterError("need at least one surrogate sample");
  const Grid1D& grid = model.grid();
  const CounterRng rng(opts.seed);
  std::uint64_t counter = 0;

  auto random_coefficient = [&]() {
    std::vector<double> amp(opts.n_modes);
    for (int m = 0; m < opts.n_modes; ++m)
      amp[m] = opts.amplitude * rng.symmetric(counter++) / (m + 1);
    return SpatialField::sample(grid, [&](double x) {
      const double s = (x - grid.x_min()) / grid.length();
      double v = (1.0 - s) * opts.boundary_left + s * opts.boundary_right;
      for (int m = 0; m < opts.n_modes; ++m)
        v += amp[m] * std::sin((m + 1) * std::numbers::pi * s);
      return std::max(v, opts.kappa1);
    });
  };

  std::vector<SurrogateSample> samples;
  samples.reserve(opts.n_samples);
  for (int s = 0; s < opts.n_samples; ++s) {
    const auto p = random_coefficient();
    const auto q = random_coefficient();
    const auto u_p = model.solve(p);
    const auto u_q = model.solve(q);
    SpatialField diff(grid);
    for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = p[i] - q[i];
    SurrogateSample out;
    const double gap = l2_norm_spacetime(difference(u_p, u_q), cfg.window);
    out.forward_gap_sq = gap * gap;
    out.gradient_gap_sq = gradient_norm_sq(diff);
    out.ratio = out.gradient_gap_sq > 0.0 ? out.forward_gap_sq / out.gradient_gap_sq : 0.0;
    out.surrogate = evaluate_surrogate(p, q, u_p, u_q, data, K, cfg);
    out.condition_holds = out.ratio <= K;
    samples.push_back(out);
  }
  return samples;
}

double empirical_K(const std::vector<SurrogateSample>& samples) {
  double k = 0.0;
  for (const auto& s : samples) k = std::max(k, s.ratio);
  return k;
}

}  // namespace wavecoeff
