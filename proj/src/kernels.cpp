#include "wavecoeff/kernels.hpp"

#include <omp.h>

#include <cassert>

namespace wavecoeff::kernels {

namespace {

inline double flux_at(const double* p, const double* u, int i, int last, double inv_h2) {
  if (i == 0) return 2.0 * (0.5 * (p[0] + p[1])) * (u[1] - u[0]) * inv_h2;
  if (i == last) return 2.0 * (0.5 * (p[last - 1] + p[last])) * (u[last - 1] - u[last]) * inv_h2;
  const double p_right = 0.5 * (p[i] + p[i + 1]);
  const double p_left = 0.5 * (p[i - 1] + p[i]);
  return (p_right * (u[i + 1] - u[i]) - p_left * (u[i] - u[i - 1])) * inv_h2;
}

inline double derivative_at(const double* v, int i, int last, double inv_2h) {
  if (i == 0) return (-3.0 * v[0] + 4.0 * v[1] - v[2]) * inv_2h;
  if (i == last) return (3.0 * v[last] - 4.0 * v[last - 1] + v[last - 2]) * inv_2h;
  return (v[i + 1] - v[i - 1]) * inv_2h;
}

}  // namespace

namespace serial {

void apply_flux_operator(std::span<const double> p, std::span<const double> u, double h,
                         std::span<double> out) {
  assert(p.size() == u.size() && u.size() == out.size() && u.size() >= 3);
  const int last = static_cast<int>(u.size()) - 1;
  const double inv_h2 = 1.0 / (h * h);
  for (int i = 0; i <= last; ++i) out[i] = flux_at(p.data(), u.data(), i, last, inv_h2);
}

void time_integrated_gradient_product(std::span<const double> u, std::span<const double> z,
                                      std::span<const double> wt, int n_nodes, double h,
                                      std::span<double> out) {
  assert(u.size() == z.size() && u.size() == wt.size() * n_nodes);
  const int last = n_nodes - 1;
  const double inv_2h = 1.0 / (2.0 * h);
  for (int i = 0; i < n_nodes; ++i) out[i] = 0.0;
  for (std::size_t k = 0; k < wt.size(); ++k) {
    const double* uk = u.data() + k * n_nodes;
    const double* zk = z.data() + k * n_nodes;
    for (int i = 0; i < n_nodes; ++i)
      out[i] += wt[k] * (derivative_at(uk, i, last, inv_2h) * derivative_at(zk, i, last, inv_2h));
  }
}

void windowed_residual(std::span<const double> u, std::span<const double> data,
                       std::span<const double> chi, std::span<double> out) {
  assert(u.size() == data.size() && u.size() == out.size() && u.size() % chi.size() == 0);
  const std::size_t n = chi.size();
  for (std::size_t j = 0; j < u.size(); ++j) out[j] = chi[j % n] * (u[j] - data[j]);
}

}  // namespace serial

namespace parallel {

void apply_flux_operator(std::span<const double> p, std::span<const double> u, double h,
                         std::span<double> out) {
  assert(p.size() == u.size() && u.size() == out.size() && u.size() >= 3);
  const int last = static_cast<int>(u.size()) - 1;
  const double inv_h2 = 1.0 / (h * h);
  const double* pp = p.data();
  const double* uu = u.data();
  double* oo = out.data();
#pragma omp parallel for schedule(static) if (last + 1 >= kParallelThreshold)
  for (int i = 0; i <= last; ++i) oo[i] = flux_at(pp, uu, i, last, inv_h2);
}

void time_integrated_gradient_product(std::span<const double> u, std::span<const double> z,
                                      std::span<const double> wt, int n_nodes, double h,
                                      std::span<double> out) {
  assert(u.size() == z.size() && u.size() == wt.size() * n_nodes);
  const int last = n_nodes - 1;
  const int n_levels = static_cast<int>(wt.size());
  const double inv_2h = 1.0 / (2.0 * h);
  const double* uu = u.data();
  const double* zz = z.data();
  const double* ww = wt.data();
  double* oo = out.data();
  // Each thread owns a contiguous block of nodes and sweeps the levels in
  // order, so every node sees the serial summation order.
#pragma omp parallel if (n_nodes * n_levels >= kParallelThreshold * 8)
  {
    const int n_threads = omp_get_num_threads();
    const int t = omp_get_thread_num();
    const int lo = static_cast<int>(static_cast<long long>(n_nodes) * t / n_threads);
    const int hi = static_cast<int>(static_cast<long long>(n_nodes) * (t + 1) / n_threads);
    for (int i = lo; i < hi; ++i) oo[i] = 0.0;
    for (int k = 0; k < n_levels; ++k) {
      const double* uk = uu + static_cast<std::size_t>(k) * n_nodes;
      const double* zk = zz + static_cast<std::size_t>(k) * n_nodes;
      const double w = ww[k];
      for (int i = lo; i < hi; ++i)
        oo[i] += w * (derivative_at(uk, i, last, inv_2h) * derivative_at(zk, i, last, inv_2h));
    }
  }
}

void windowed_residual(std::span<const double> u, std::span<const double> data,
                       std::span<const double> chi, std::span<double> out) {
  assert(u.size() == data.size() && u.size() == out.size() && u.size() % chi.size() == 0);
  const long long total = static_cast<long long>(u.size());
  const long long n = static_cast<long long>(chi.size());
  const double* uu = u.data();
  const double* dd = data.data();
  const double* cc = chi.data();
  double* oo = out.data();
#pragma omp parallel for schedule(static) if (total >= kParallelThreshold * 8)
  for (long long j = 0; j < total; ++j) oo[j] = cc[j % n] * (uu[j] - dd[j]);
}

}  // namespace parallel

}  // namespace wavecoeff::kernels
