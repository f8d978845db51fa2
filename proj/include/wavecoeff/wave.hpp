#pragma once

#include "wavecoeff/mesh.hpp"
#include "wavecoeff/tridiagonal.hpp"

namespace wavecoeff {

class ObservationWindow;

/// u_tt - (p u_x)_x = F on the mesh, u(., 0) = u0, u_t(., 0) = 0, and
/// homogeneous Neumann data at both ends.
struct WaveProblem {
  SpatialField p;
  SpaceTimeField source;
  SpatialField initial_value;
};

/// Average-acceleration (Newmark beta = 1/4, gamma = 1/2) integrator for the
/// flux-form wave operator. The implicit matrix depends only on p and tau, so
/// it is factored once at construction and reused for every time level.
///
/// Scheme, for n >= 1:
///   (u^{n+1} - 2u^n + u^{n-1}) / tau^2 = L (u^{n+1} + 2u^n + u^{n-1}) / 4
///                                        + (F^{n+1} + 2F^n + F^{n-1}) / 4
/// with the first step taken on the virtual level u^{-1} = u^1, F^{-1} = F^1.
class WaveSolver {
 public:
  WaveSolver(const SpatialField& p, const TimeGrid& tgrid);

  const SpatialField& coefficient() const noexcept { return p_; }
  const TimeGrid& time_grid() const noexcept { return tgrid_; }

  SpaceTimeField solve(const SpaceTimeField& source,
                       const SpatialField& initial_value) const;

 private:
  SpatialField p_;
  TimeGrid tgrid_;
  TridiagonalFactor factor_;
};

SpaceTimeField solve_forward(const WaveProblem& problem);

/// Adjoint problem driven by chi_omega * residual with zero data at t = T,
/// obtained by running the forward integrator on the time-reversed source.
SpaceTimeField solve_backward(const SpatialField& p, const SpaceTimeField& residual,
                              const ObservationWindow& window);

/// Linearisation of u(p) in the direction of `direction`: zero initial data and
/// source div(direction * grad u), assembled with the operator's own stencil.
SpaceTimeField solve_sensitivity(const SpatialField& p, const SpatialField& direction,
                                 const SpaceTimeField& u);

/// Flux-form div(p grad u) for one level with mirrored ghost nodes.
SpatialField flux_operator(const SpatialField& p, const SpatialField& u);

/// Discrete energy between levels k and k+1:
///   1/2 |(u^{k+1} - u^k)/tau|^2 + 1/2 sum_j p_{j+1/2} (m_{j+1} - m_j)^2 / h,
/// where m is the mean of the two levels. Conserved exactly for F = 0.
double discrete_energy(const SpatialField& p, const SpaceTimeField& u, int k);

/// Largest nodal residual of the time-stepping equations, for verification.
double scheme_residual_max(const SpatialField& p, const SpaceTimeField& u,
                           const SpaceTimeField& source,
                           const SpatialField& initial_value);

}  // namespace wavecoeff
