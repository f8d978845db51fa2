#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "wavecoeff/carleman.hpp"
#include "wavecoeff/cli/descriptors.hpp"
#include "wavecoeff/cli/runner.hpp"
#include "wavecoeff/elliptic.hpp"
#include "wavecoeff/objective.hpp"
#include "wavecoeff/reconstruct.hpp"
#include "wavecoeff/synth.hpp"
#include "wavecoeff/wave.hpp"

using namespace wavecoeff;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

int failures = 0;

void report(int id, const char* title, bool pass, const std::string& detail) {
  std::printf("%s  %2d  %s: %s\n", pass ? "PASS" : "FAIL", id, title, detail.c_str());
  std::fflush(stdout);
  if (!pass) ++failures;
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), f, args...);
  return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SpatialField bump(const Grid1D& g) {
  return SpatialField::sample(g, [](double x) { return 0.5 * std::sin(pi * x) + 1.0; });
}

struct Mesh {
  Grid1D grid{0.0, 1.0, 100};
  TimeGrid tgrid{1.0, 100};
};

// Standing wave cos(pi x) cos(pi t) with p = 1, F = 0.
struct StandingWave {
  double final_error;
  double spacetime_error;
  double seconds;
};

StandingWave standing_wave(int n) {
  Grid1D g(0.0, 1.0, n);
  TimeGrid tg(1.0, n);
  const auto t0 = std::chrono::steady_clock::now();
  const auto u = solve_forward({SpatialField(g, 1.0), SpaceTimeField(g, tg),
                                SpatialField::sample(g, [](double x) { return std::cos(pi * x); })});
  const double secs = seconds_since(t0);
  StandingWave s{0.0, 0.0, secs};
  for (int k = 0; k <= n; ++k)
    for (int i = 0; i <= n; ++i) {
      const double e = std::abs(u.at(k, i) - std::cos(pi * g.node(i)) * std::cos(pi * tg.level(k)));
      s.spacetime_error = std::max(s.spacetime_error, e);
      if (k == n) s.final_error = std::max(s.final_error, e);
    }
  return s;
}

void criterion_1() {
  const auto a = standing_wave(50);
  const auto b = standing_wave(100);
  const double ratio = a.final_error / b.final_error;
  const bool pass = ratio >= 3.4 && ratio <= 4.6 && b.final_error < 5e-3 &&
                    std::max(a.seconds, b.seconds) < 1.0;
  report(1, "forward-solver convergence", pass,
         fmt("error at T=1: %.3e (50) %.3e (100), ratio %.2f (need 3.4..4.6); "
             "space-time max ratio %.2f; solve %.3f s",
             a.final_error, b.final_error, ratio, a.spacetime_error / b.spacetime_error,
             b.seconds));
}

void criterion_2() {
  Mesh m;
  const auto u = solve_forward({bump(m.grid), SpaceTimeField(m.grid, m.tgrid), SpatialField(m.grid, 1.0)});
  double dev = 0.0;
  for (double v : u.values) dev = std::max(dev, std::abs(v - 1.0));
  report(2, "constant preservation", dev < 1e-12, fmt("max |u - 1| = %.3e", dev));
}

void criterion_3() {
  Mesh m;
  const SpatialField p(m.grid, 1.0);
  const auto u = solve_forward({p, SpaceTimeField(m.grid, m.tgrid),
                                SpatialField::sample(m.grid, [](double x) { return std::cos(pi * x); })});
  const double e0 = discrete_energy(p, u, 0);
  double drift = 0.0;
  for (int k = 1; k < m.tgrid.n_steps(); ++k)
    drift = std::max(drift, std::abs(discrete_energy(p, u, k) - e0) / e0);
  report(3, "energy conservation", drift < 1e-8, fmt("relative drift %.3e", drift));
}

double gradient_gap(int n, double* relative) {
  Grid1D g(0.0, 1.0, n);
  TimeGrid tg(1.0, n);
  const auto model = make_reference_model(g, tg);
  const auto window = ObservationWindow::complement(0.1, 0.9);
  const auto data = make_observation(model, bump(g), window, 0.01, 1).noisy;
  const ObjectiveConfig cfg{1e-7, window};
  const auto p = SpatialField::sample(g, [](double x) { return 1.0 + 0.1 * std::sin(pi * x); });
  auto dir = SpatialField::sample(g, [](double x) { return std::sin(pi * x); });
  dir.values.front() = dir.values.back() = 0.0;
  const double eps = 1e-4;
  SpatialField plus(g), minus(g);
  for (std::size_t i = 0; i < p.size(); ++i) {
    plus[i] = p[i] + eps * dir[i];
    minus[i] = p[i] - eps * dir[i];
  }
  const double fd = (evaluate_J(plus, model.solve(plus), data, cfg).total -
                     evaluate_J(minus, model.solve(minus), data, cfg).total) / (2.0 * eps);
  const double ad = directional_derivative(model, p, dir, data, cfg).adjoint_form;
  if (relative) *relative = std::abs(fd - ad) / std::abs(fd);
  return std::abs(fd - ad);
}

void criterion_4() {
  double rel = 0.0;
  const double coarse = gradient_gap(50, nullptr);
  const double fine = gradient_gap(100, &rel);
  report(4, "adjoint/gradient consistency", rel < 1e-2 && fine < coarse,
         fmt("relative gap %.3e on 100x100; absolute gap %.3e (50) -> %.3e (100)", rel, coarse, fine));
}

double poisson_sine_error(int n) {
  Grid1D g(0.0, 1.0, n);
  const auto p = solve_poisson(
      {SpatialField::sample(g, [](double x) { return -pi * pi * std::sin(pi * x); }), 0.0, 0.0});
  double e = 0.0;
  for (int i = 0; i <= n; ++i) e = std::max(e, std::abs(p[i] - std::sin(pi * g.node(i))));
  return e;
}

void criterion_5() {
  Grid1D g(0.0, 1.0, 100);
  const auto q = solve_poisson({SpatialField(g, 2.0), 0.0, 0.0});
  double quad = 0.0;
  for (int i = 0; i <= 100; ++i) {
    const double x = g.node(i);
    quad = std::max(quad, std::abs(q[i] - (x * x - x)));
  }
  const double e100 = poisson_sine_error(100);
  const double ratio = e100 / poisson_sine_error(200);
  report(5, "Poisson exactness", quad < 1e-12 && e100 < 1e-3 && ratio > 3.5 && ratio < 4.5,
         fmt("quadratic error %.3e; sine error %.3e, halving ratio %.2f", quad, e100, ratio));
}

ReconstructionResult reconstruct(const std::string& p_true, const ObservationWindow& window,
                                 double delta0, double K, double alpha) {
  Mesh m;
  const auto model = make_reference_model(m.grid, m.tgrid);
  const auto truth = SpatialField::sample(m.grid, cli::parse_profile(p_true));
  const auto obs = make_observation(model, truth, window, delta0, 1);
  IterationConfig cfg;
  cfg.K = K;
  cfg.alpha = alpha;
  cfg.epsilon = suggest_parameters(window, delta0).epsilon;
  RunOptions opts;
  opts.p_true = truth;
  return run_reconstruction(model, window, obs.noisy, {}, cfg, opts);
}

void criterion_6() {
  struct Case {
    const char* name;
    const char* p_true;
    int reference_N;
    double max_err;
  };
  const Case cases[] = {{"a", "paper_a", 21, 0.02}, {"b", "paper_b", 35, 0.02}, {"c", "paper_c", 9, 0.04}};
  bool pass = true;
  std::string detail;
  for (const auto& c : cases) {
    const auto r = reconstruct(c.p_true, ObservationWindow::complement(0.1, 0.9), 0.01, 2e-5, 1e-7);
    const bool ok = r.converged && r.rel_error <= c.max_err && 3 * r.iterations >= c.reference_N &&
                    r.iterations <= 3 * c.reference_N && r.elapsed_seconds < 10.0;
    pass = pass && ok;
    detail += fmt("(%s) N=%d err=%.2f%% %.2fs%s  ", c.name, r.iterations, 100 * r.rel_error,
                  r.elapsed_seconds, ok ? "" : " [out of band]");
  }
  report(6, "reference reconstructions", pass, detail);
}

void criterion_7() {
  const auto window = ObservationWindow::complement(0.1, 0.9);
  const double levels[] = {0.0, 0.02, 0.04, 0.08};
  const double alphas[] = {1e-9, 2e-7, 4e-7, 8e-7};
  double err[4];
  for (int j = 0; j < 4; ++j) err[j] = reconstruct("paper_a", window, levels[j], 2e-5, alphas[j]).rel_error;
  const bool pass = err[0] < err[1] && err[1] < err[2] && err[0] <= 0.015 && err[3] <= 0.40;
  report(7, "noise-level trend", pass,
         fmt("err %.2f%% / %.2f%% / %.2f%% / %.2f%% for delta0 = 0/2/4/8%%", 100 * err[0],
             100 * err[1], 100 * err[2], 100 * err[3]));
}

void criterion_8() {
  const double bounds[][2] = {{0.2, 0.8}, {0.1, 0.9}, {0.05, 0.95}};
  const double Ks[] = {4e-5, 2e-5, 1e-5};
  int N[3];
  for (int j = 0; j < 3; ++j)
    N[j] = reconstruct("paper_a", ObservationWindow::complement(bounds[j][0], bounds[j][1]), 0.01,
                       Ks[j], 1e-7)
               .iterations;
  report(8, "window-size trend", N[0] <= N[1] && N[1] <= N[2],
         fmt("N = %d / %d / %d for |omega| = 0.4/0.2/0.1 (need non-decreasing)", N[0], N[1], N[2]));
}

void criterion_9() {
  Mesh m;
  const auto model = make_reference_model(m.grid, m.tgrid);
  const auto window = ObservationWindow::complement(0.1, 0.9);
  const auto p = SpatialField::sample(m.grid, [](double x) { return 1.0 + 0.5 * x; });
  const auto out = iterate_once(model, window, model.solve(p), {1.0, 1.5}, {}, {p, laplacian_spatial(p)});
  double shift = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) shift = std::max(shift, std::abs(out.next.p[i] - p[i]));

  const SpatialField one(m.grid, 1.0);
  RunOptions opts;
  opts.p_true = one;
  const auto r = run_reconstruction(model, window, model.solve(one), {}, {}, opts);
  report(9, "fixed-point property", shift < 1e-12 && r.converged && r.iterations <= 2,
         fmt("stationary step moves p by %.3e; perfect guess stops after N = %d", shift, r.iterations));
}

void criterion_10() {
  const SquaredDistance d;
  const auto set = level_set_omega(d, 0.25);
  const bool set_ok = set.size() == 1 && std::abs(set[0].lo - 0.4) < 1e-9 && std::abs(set[0].hi - 1.0) < 1e-9;
  const auto window = ObservationWindow::complement(0.1, 0.9);
  const auto r1 = check_observation_geometry(CarlemanWeights{}, window, 1.0);
  const bool time_ok = !r1.time_condition && std::abs(r1.minimal_T - 1.1) < 1e-9;
  const auto r2 = check_observation_geometry(CarlemanWeights{}, window, 1.2);
  const bool beta_ok = r2.beta_range && std::abs(r2.beta_range->lo - 1.21 / 1.44) < 1e-9 &&
                       std::abs(r2.beta_range->hi - 1.0) < 1e-9;
  report(10, "geometry diagnostics", set_ok && time_ok && beta_ok,
         fmt("Omega(0.25) = %s; T=1 time condition %s, minimal T %.10g; beta range at T=1.2 %s",
             format_intervals(set).c_str(), r1.time_condition ? "holds" : "fails", r1.minimal_T,
             r2.beta_range ? format_intervals({*r2.beta_range}).c_str() : "empty"));
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_tool(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"reconstruct"};
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream sink;
  return cli::run_cli(static_cast<int>(argv.size()), argv.data(), sink, sink);
}

void criterion_11() {
  const auto root = fs::temp_directory_path() / "wavecoeff_acceptance";
  fs::remove_all(root);
  fs::create_directories(root);
  const auto cfg = root / "timings.ini";
  std::ofstream(cfg) << "[output]\ntimings = none\n";
  bool ran = true;
  for (const char* run : {"a", "b"}) {
    ran = ran && run_tool({"--preset", "table1a", "--out", (root / run / "single").string()}) == 0;
    ran = ran && run_tool({cfg.string(), "--preset", "table2", "--out", (root / run / "sweep").string()}) == 0;
  }
  const bool history_same = slurp(root / "a/single/history.csv") == slurp(root / "b/single/history.csv");
  const bool sweep_same = slurp(root / "a/sweep/sweep.csv") == slurp(root / "b/sweep/sweep.csv");
  report(11, "determinism", ran && history_same && sweep_same,
         fmt("history.csv %s, sweep.csv %s", history_same ? "identical" : "differs",
             sweep_same ? "identical" : "differs"));
  fs::remove_all(root);
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  std::printf("%d of 11 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
