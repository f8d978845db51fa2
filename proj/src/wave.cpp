#include "wavecoeff/wave.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "wavecoeff/errors.hpp"
#include "wavecoeff/kernels.hpp"
#include "wavecoeff/window.hpp"

namespace wavecoeff {

namespace {

TridiagonalFactor build_implicit_matrix(const SpatialField& p, double tau) {
  const int n = p.grid.n_cells();
  const double c = 0.25 * tau * tau / (p.grid.h() * p.grid.h());
  std::vector<double> lower(n + 1, 0.0), diag(n + 1, 1.0), upper(n + 1, 0.0);
  for (int i = 1; i < n; ++i) {
    const double p_left = 0.5 * (p[i - 1] + p[i]);
    const double p_right = 0.5 * (p[i] + p[i + 1]);
    lower[i] = -c * p_left;
    upper[i] = -c * p_right;
    diag[i] = 1.0 + c * (p_left + p_right);
  }
  const double p_first = 0.5 * (p[0] + p[1]);
  const double p_last = 0.5 * (p[n - 1] + p[n]);
  diag[0] = 1.0 + 2.0 * c * p_first;
  upper[0] = -2.0 * c * p_first;
  diag[n] = 1.0 + 2.0 * c * p_last;
  lower[n] = -2.0 * c * p_last;
  return TridiagonalFactor(std::move(lower), std::move(diag), std::move(upper));
}

const SpatialField& checked_coefficient(const SpatialField& p) {
  p.validate();
  const double p_min = *std::min_element(p.values.begin(), p.values.end());
  if (!(p_min > 0.0))
    throw DegenerateCoefficientError("coefficient must be positive, min p = " +
                                     std::to_string(p_min));
  return p;
}

}  // namespace

WaveSolver::WaveSolver(const SpatialField& p, const TimeGrid& tgrid)
    : p_(checked_coefficient(p)), tgrid_(tgrid), factor_(build_implicit_matrix(p, tgrid.tau())) {}

SpaceTimeField WaveSolver::solve(const SpaceTimeField& source,
                                 const SpatialField& initial_value) const {
  if (!(source.grid == p_.grid) || !(source.tgrid == tgrid_))
    throw DimensionMismatchError("wave source does not match the solver mesh");
  require_same_grid(p_, initial_value);
  initial_value.validate();

  const int n_nodes = p_.grid.n_nodes();
  const double h = p_.grid.h();
  const double tau2 = tgrid_.tau() * tgrid_.tau();
  const double c = 0.25 * tau2;

  SpaceTimeField u(p_.grid, tgrid_);
  std::vector<double> combo(n_nodes), l_combo(n_nodes);

  auto u0 = u.level(0);
  std::copy(initial_value.values.begin(), initial_value.values.end(), u0.begin());

  // First step on the virtual level u^{-1} = u^1.
  {
    kernels::parallel::apply_flux_operator(p_.values, u0, h, l_combo);
    auto f0 = source.level(0);
    auto f1 = source.level(1);
    auto u1 = u.level(1);
    for (int i = 0; i < n_nodes; ++i)
      u1[i] = u0[i] + c * l_combo[i] + 0.25 * tau2 * (f1[i] + f0[i]);
    factor_.solve_in_place(u1);
  }

  for (int k = 1; k < tgrid_.n_steps(); ++k) {
    auto prev = u.level(k - 1);
    auto cur = u.level(k);
    auto next = u.level(k + 1);
    auto fp = source.level(k - 1);
    auto fc = source.level(k);
    auto fn = source.level(k + 1);
    for (int i = 0; i < n_nodes; ++i) combo[i] = 2.0 * cur[i] + prev[i];
    kernels::parallel::apply_flux_operator(p_.values, combo, h, l_combo);
    for (int i = 0; i < n_nodes; ++i)
      next[i] = 2.0 * cur[i] - prev[i] + c * l_combo[i] +
                0.25 * tau2 * (fn[i] + 2.0 * fc[i] + fp[i]);
    factor_.solve_in_place(next);
  }
  return u;
}

SpaceTimeField solve_forward(const WaveProblem& problem) {
  problem.source.validate();
  WaveSolver solver(problem.p, problem.source.tgrid);
  return solver.solve(problem.source, problem.initial_value);
}

SpaceTimeField solve_backward(const SpatialField& p, const SpaceTimeField& residual,
                              const ObservationWindow& window) {
  residual.validate();
  window.require_compatible(residual.grid);
  const auto chi = window.indicator(residual.grid);
  SpaceTimeField source(residual.grid, residual.tgrid);
  const SpaceTimeField zero(residual.grid, residual.tgrid);
  kernels::parallel::windowed_residual(residual.values, zero.values, chi, source.values);
  WaveSolver solver(p, residual.tgrid);
  return solver.solve(source.time_reversed(), SpatialField(residual.grid)).time_reversed();
}

SpaceTimeField solve_sensitivity(const SpatialField& p, const SpatialField& direction,
                                 const SpaceTimeField& u) {
  require_same_grid(p, direction);
  require_same_mesh(u, p);
  direction.validate();
  const double scale = std::max(1.0, max_abs(direction.values));
  if (std::abs(direction.values.front()) > 1e-12 * scale ||
      std::abs(direction.values.back()) > 1e-12 * scale)
    throw AdmissibilityError("perturbation direction must vanish at both boundary nodes");

  WaveSolver solver(p, u.tgrid);
  SpaceTimeField source(u.grid, u.tgrid);
  for (int k = 0; k < u.n_levels(); ++k)
    kernels::parallel::apply_flux_operator(direction.values, u.level(k), u.grid.h(),
                                           source.level(k));
  return solver.solve(source, SpatialField(u.grid));
}

SpatialField flux_operator(const SpatialField& p, const SpatialField& u) {
  require_same_grid(p, u);
  SpatialField out(u.grid);
  kernels::serial::apply_flux_operator(p.values, u.values, u.grid.h(), out.values);
  return out;
}

double discrete_energy(const SpatialField& p, const SpaceTimeField& u, int k) {
  require_same_mesh(u, p);
  const int n = u.grid.n_cells();
  const double tau = u.tgrid.tau();
  const double h = u.grid.h();
  const auto wx = u.grid.trapezoid_weights();
  auto a = u.level(k);
  auto b = u.level(k + 1);
  double kinetic = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double v = (b[i] - a[i]) / tau;
    kinetic += wx[i] * v * v;
  }
  double potential = 0.0;
  for (int j = 0; j < n; ++j) {
    const double dm = 0.5 * (b[j + 1] + a[j + 1]) - 0.5 * (b[j] + a[j]);
    potential += 0.5 * (p[j] + p[j + 1]) * dm * dm / h;
  }
  return 0.5 * kinetic + 0.5 * potential;
}

double scheme_residual_max(const SpatialField& p, const SpaceTimeField& u,
                           const SpaceTimeField& source, const SpatialField& initial_value) {
  require_same_mesh(u, source);
  const int n_nodes = u.n_nodes();
  const double h = u.grid.h();
  const double tau2 = u.tgrid.tau() * u.tgrid.tau();
  std::vector<double> combo(n_nodes), l_combo(n_nodes);
  double worst = 0.0;
  for (int i = 0; i < n_nodes; ++i)
    worst = std::max(worst, std::abs(u.at(0, i) - initial_value[i]));

  for (int i = 0; i < n_nodes; ++i) combo[i] = u.at(1, i) + u.at(0, i);
  kernels::serial::apply_flux_operator(p.values, combo, h, l_combo);
  for (int i = 0; i < n_nodes; ++i) {
    const double r = (u.at(1, i) - u.at(0, i)) - 0.25 * tau2 * l_combo[i] -
                     0.25 * tau2 * (source.at(1, i) + source.at(0, i));
    worst = std::max(worst, std::abs(r));
  }
  for (int k = 1; k < u.tgrid.n_steps(); ++k) {
    for (int i = 0; i < n_nodes; ++i)
      combo[i] = u.at(k + 1, i) + 2.0 * u.at(k, i) + u.at(k - 1, i);
    kernels::serial::apply_flux_operator(p.values, combo, h, l_combo);
    for (int i = 0; i < n_nodes; ++i) {
      const double r = (u.at(k + 1, i) - 2.0 * u.at(k, i) + u.at(k - 1, i)) -
                       0.25 * tau2 * l_combo[i] -
                       0.25 * tau2 * (source.at(k + 1, i) + 2.0 * source.at(k, i) + source.at(k - 1, i));
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

}  // namespace wavecoeff
