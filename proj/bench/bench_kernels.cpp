#include <benchmark/benchmark.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "wavecoeff/kernels.hpp"
#include "wavecoeff/model.hpp"
#include "wavecoeff/reconstruct.hpp"
#include "wavecoeff/synth.hpp"

namespace k = wavecoeff::kernels;

namespace {

std::vector<double> wave_data(std::size_t n, double phase) {
  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = std::sin(1e-3 * static_cast<double>(i) + phase);
  return v;
}

template <auto Kernel>
void flux_operator(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const auto p = wave_data(n, 1.0);
  const auto u = wave_data(n, 0.3);
  std::vector<double> out(n);
  for (auto _ : state) {
    Kernel(p, u, 1.0 / (n - 1), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n);
}

template <auto Kernel>
void gradient_product(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int levels = 201;
  const auto u = wave_data(static_cast<std::size_t>(n) * levels, 0.1);
  const auto z = wave_data(static_cast<std::size_t>(n) * levels, 0.7);
  const std::vector<double> wt(levels, 1.0 / (levels - 1));
  std::vector<double> out(n);
  for (auto _ : state) {
    Kernel(u, z, wt, n, 1.0 / (n - 1), out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n * levels);
}

template <auto Kernel>
void windowed_residual(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const int levels = 201;
  const auto u = wave_data(static_cast<std::size_t>(n) * levels, 0.1);
  const auto d = wave_data(static_cast<std::size_t>(n) * levels, 0.2);
  std::vector<double> chi(n, 1.0);
  for (int i = n / 10; i < n - n / 10; ++i) chi[i] = 0.0;
  std::vector<double> out(u.size());
  for (auto _ : state) {
    Kernel(u, d, chi, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * n * levels);
}

void reconstruction_step(benchmark::State& state) {
  using namespace wavecoeff;
  const int n = static_cast<int>(state.range(0));
  const Grid1D g(0.0, 1.0, n);
  const TimeGrid tg(1.0, n);
  const auto model = make_reference_model(g, tg);
  const auto window = ObservationWindow::complement(0.1, 0.9);
  const auto truth = SpatialField::sample(g, [](double x) { return 0.5 * std::sin(std::numbers::pi * x) + 1.0; });
  const auto data = make_observation(model, truth, window, 0.01, 1).noisy;
  const IterateState start{SpatialField(g, 1.0), SpatialField(g)};
  for (auto _ : state) {
    auto out = iterate_once(model, window, data, {}, {}, start);
    benchmark::DoNotOptimize(out.next.p.values.data());
  }
}

}  // namespace

BENCHMARK(flux_operator<k::serial::apply_flux_operator>)->Name("flux_operator/serial")->RangeMultiplier(8)->Range(1 << 10, 1 << 19);
BENCHMARK(flux_operator<k::parallel::apply_flux_operator>)->Name("flux_operator/parallel")->RangeMultiplier(8)->Range(1 << 10, 1 << 19);
BENCHMARK(gradient_product<k::serial::time_integrated_gradient_product>)->Name("gradient_product/serial")->RangeMultiplier(4)->Range(1 << 8, 1 << 14);
BENCHMARK(gradient_product<k::parallel::time_integrated_gradient_product>)->Name("gradient_product/parallel")->RangeMultiplier(4)->Range(1 << 8, 1 << 14);
BENCHMARK(windowed_residual<k::serial::windowed_residual>)->Name("windowed_residual/serial")->RangeMultiplier(4)->Range(1 << 8, 1 << 14);
BENCHMARK(windowed_residual<k::parallel::windowed_residual>)->Name("windowed_residual/parallel")->RangeMultiplier(4)->Range(1 << 8, 1 << 14);
BENCHMARK(reconstruction_step)->Arg(100)->Arg(200)->Arg(400)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
