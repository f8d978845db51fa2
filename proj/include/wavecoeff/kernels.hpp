#pragma once

#include <span>

// Data-parallel inner loops. Each kernel exists twice: a plain serial
// reference kept for testing and benchmarking, and an OpenMP version used by
// the library. Both write every output entry from a fixed sequence of
// floating-point operations, so they agree bitwise for any thread count.

namespace wavecoeff::kernels {

/// Grids below this node count run the OpenMP kernels on one thread.
inline constexpr int kParallelThreshold = 2048;

namespace serial {

/// out = div(p grad u) in flux form with mirrored ghost nodes at both ends.
void apply_flux_operator(std::span<const double> p, std::span<const double> u,
                         double h, std::span<double> out);

/// out[i] = sum_k wt[k] * Du(k, i) * Dz(k, i), where D is the grid derivative
/// used by grad_spatial and u, z are time-major space-time arrays.
void time_integrated_gradient_product(std::span<const double> u,
                                      std::span<const double> z,
                                      std::span<const double> wt, int n_nodes,
                                      double h, std::span<double> out);

/// out[k * n + i] = chi[i] * (u - data)[k * n + i].
void windowed_residual(std::span<const double> u, std::span<const double> data,
                       std::span<const double> chi, std::span<double> out);

}  // namespace serial

namespace parallel {

void apply_flux_operator(std::span<const double> p, std::span<const double> u,
                         double h, std::span<double> out);

void time_integrated_gradient_product(std::span<const double> u,
                                      std::span<const double> z,
                                      std::span<const double> wt, int n_nodes,
                                      double h, std::span<double> out);

void windowed_residual(std::span<const double> u, std::span<const double> data,
                       std::span<const double> chi, std::span<double> out);

}  // namespace parallel

}  // namespace wavecoeff::kernels
