#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>

#include "doctest.h"
#include "wavecoeff/errors.hpp"
#include "wavecoeff/objective.hpp"
#include "wavecoeff/synth.hpp"
#include "wavecoeff/wave.hpp"

using namespace wavecoeff;
using std::numbers::pi;

namespace {

SpatialField p_true_a(const Grid1D& g) {
  return SpatialField::sample(g, [](double x) { return 0.5 * std::sin(pi * x) + 1.0; });
}

struct Problem {
  ForwardModel model;
  SpaceTimeField data;
  ObjectiveConfig cfg;
};

Problem example_problem(int n, double alpha = 1e-7) {
  Grid1D g(0.0, 1.0, n);
  TimeGrid tg(1.0, n);
  auto model = make_reference_model(g, tg);
  const auto window = ObservationWindow::complement(0.1, 0.9);
  auto obs = make_observation(model, p_true_a(g), window, 0.01, 1);
  return {std::move(model), std::move(obs.noisy), {alpha, window}};
}

double J_at(const Problem& pr, const SpatialField& p) {
  return evaluate_J(p, pr.model.solve(p), pr.data, pr.cfg).total;
}

double central_difference(const Problem& pr, const SpatialField& p, const SpatialField& dir,
                          double eps) {
  SpatialField plus(p.grid), minus(p.grid);
  for (std::size_t i = 0; i < p.size(); ++i) {
    plus[i] = p[i] + eps * dir[i];
    minus[i] = p[i] - eps * dir[i];
  }
  return (J_at(pr, plus) - J_at(pr, minus)) / (2.0 * eps);
}

SpatialField p_reference(const Grid1D& g) {
  return SpatialField::sample(g, [](double x) { return 1.0 + 0.1 * std::sin(pi * x); });
}

SpatialField sine(const Grid1D& g) {
  auto f = SpatialField::sample(g, [](double x) { return std::sin(pi * x); });
  f.values.front() = f.values.back() = 0.0;
  return f;
}

}  // namespace

TEST_CASE("J vanishes for exact data and a constant coefficient") {
  Grid1D g(0.0, 1.0, 20);
  TimeGrid tg(1.0, 20);
  const auto model = make_reference_model(g, tg);
  const SpatialField p(g, 1.0);
  const auto u = model.solve(p);
  const auto J = evaluate_J(p, u, u, {1e-3, ObservationWindow::complement(0.1, 0.9)});
  CHECK(J.total == 0.0);
  CHECK(J.misfit_sq == 0.0);
  CHECK(J.regularization == 0.0);
}

TEST_CASE("alpha zero leaves only the misfit") {
  const auto pr = example_problem(40);
  const auto p = p_reference(pr.model.grid());
  ObjectiveConfig cfg = pr.cfg;
  cfg.alpha = 0.0;
  const auto J = evaluate_J(p, pr.model.solve(p), pr.data, cfg);
  CHECK(J.total == J.misfit_sq);
  CHECK(J.regularization == 0.0);
  CHECK(J.misfit_sq > 0.0);
}

TEST_CASE("J on a three-node, three-level mesh matches a brute-force sum") {
  Grid1D g(0.0, 1.0, 2);
  TimeGrid tg(1.0, 2);
  const SpatialField p(g, std::vector<double>{1.0, 1.6, 1.2});
  SpaceTimeField u(g, tg), d(g, tg);
  u.values = {0.3, -1.1, 2.0, 0.7, 0.25, -0.4, 1.9, 0.0, -0.8};
  d.values = {0.1, -0.6, 1.5, 1.0, 0.0, 0.5, 1.2, 0.3, -1.0};
  const double alpha = 0.3;

  const double h = 0.5;
  const double wx[3] = {h / 2, h, h / 2};
  const double wt[3] = {0.25, 0.5, 0.25};
  double misfit = 0.0;
  for (int k = 0; k < 3; ++k)
    for (int i = 0; i < 3; ++i) {
      const double r = u.values[3 * k + i] - d.values[3 * k + i];
      misfit += wt[k] * wx[i] * r * r;
    }
  const double dp[3] = {(-3.0 * p[0] + 4.0 * p[1] - p[2]) / (2 * h), (p[2] - p[0]) / (2 * h),
                        (p[0] - 4.0 * p[1] + 3.0 * p[2]) / (2 * h)};
  double reg = 0.0;
  for (int i = 0; i < 3; ++i) reg += wx[i] * dp[i] * dp[i];

  const auto J = evaluate_J(p, u, d, {alpha, ObservationWindow::full()});
  CHECK(J.misfit_sq == doctest::Approx(misfit).epsilon(1e-14));
  CHECK(J.regularization == doctest::Approx(alpha * reg).epsilon(1e-14));
  CHECK(J.total == doctest::Approx(misfit + alpha * reg).epsilon(1e-14));
}

TEST_CASE("J rejects fields on different meshes") {
  Grid1D g(0.0, 1.0, 10);
  const SpatialField p(g, 1.0);
  SpaceTimeField u(g, TimeGrid(1.0, 10)), d(g, TimeGrid(1.0, 12));
  CHECK_THROWS_AS(evaluate_J(p, u, d, {}), DimensionMismatchError);
}

TEST_CASE("gradient field") {
  Grid1D g(0.0, 1.0, 100);
  TimeGrid tg(1.0, 100);
  SUBCASE("zero adjoint gives zero") {
    const auto u = SpaceTimeField::sample(g, tg, [](double x, double t) { return x * x + t; });
    const auto gf = gradient_field(u, SpaceTimeField(g, tg));
    for (double v : gf.values) CHECK(v == 0.0);
  }
  SUBCASE("spatially constant state gives zero") {
    const auto u = SpaceTimeField::sample(g, tg, [](double, double t) { return std::cos(t); });
    const auto z = SpaceTimeField::sample(g, tg, [](double x, double t) { return x * t; });
    const auto gf = gradient_field(u, z);
    for (double v : gf.values) CHECK(v == 0.0);
  }
  SUBCASE("x t against x integrates to one half") {
    const auto u = SpaceTimeField::sample(g, tg, [](double x, double t) { return x * t; });
    const auto z = SpaceTimeField::sample(g, tg, [](double x, double) { return x; });
    const auto gf = gradient_field(u, z);
    for (int i = 1; i < g.n_cells(); ++i) CHECK(std::abs(gf[i] - 0.5) < 1e-10);
  }
}

TEST_CASE("zero direction gives a zero derivative") {
  const auto pr = example_problem(40);
  const auto p = p_reference(pr.model.grid());
  const auto dd = directional_derivative(pr.model, p, SpatialField(p.grid), pr.data, pr.cfg);
  CHECK(dd.adjoint_form == 0.0);
  CHECK(dd.sensitivity_form == 0.0);
}

TEST_CASE("derivative vanishes at a stationary point") {
  Grid1D g(0.0, 1.0, 50);
  TimeGrid tg(1.0, 50);
  const auto model = make_reference_model(g, tg);
  const auto p = p_reference(g);
  const auto data = model.solve(p);
  const ObjectiveConfig cfg{0.0, ObservationWindow::complement(0.1, 0.9)};
  std::mt19937_64 gen(4);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 3; ++trial) {
    SpatialField dir(g);
    for (int i = 1; i < g.n_cells(); ++i) dir[i] = dist(gen);
    const auto dd = directional_derivative(model, p, dir, data, cfg);
    CHECK(dd.adjoint_form == 0.0);
    CHECK(dd.sensitivity_form == 0.0);
  }
}

TEST_CASE("direction must vanish on the boundary") {
  const auto pr = example_problem(20);
  const auto p = p_reference(pr.model.grid());
  const SpatialField dir(p.grid, 1.0);
  CHECK_THROWS_AS(directional_derivative(pr.model, p, dir, pr.data, pr.cfg), AdmissibilityError);
}

TEST_CASE("adjoint derivative matches a central difference") {
  const auto pr = example_problem(100);
  const auto p = p_reference(pr.model.grid());
  const auto dir = sine(p.grid);
  const double fd = central_difference(pr, p, dir, 1e-4);
  const auto dd = directional_derivative(pr.model, p, dir, pr.data, pr.cfg);
  MESSAGE("fd = " << fd << ", adjoint = " << dd.adjoint_form
                  << ", sensitivity = " << dd.sensitivity_form);
  CHECK(std::abs(fd - dd.adjoint_form) / std::abs(fd) < 1e-2);
  CHECK(std::abs(fd - dd.sensitivity_form) / std::abs(fd) < 1e-2);
}

TEST_CASE("adjoint derivative matches central differences in random directions") {
  const auto pr = example_problem(100);
  const auto& g = pr.model.grid();
  const auto p = p_reference(g);
  std::mt19937_64 gen(21);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  for (int trial = 0; trial < 5; ++trial) {
    double a[4];
    for (double& v : a) v = dist(gen);
    auto dir = SpatialField::sample(g, [&](double x) {
      double s = 0.0;
      for (int m = 0; m < 4; ++m) s += a[m] * std::sin((m + 1) * pi * x) / (m + 1);
      return s;
    });
    dir.values.front() = dir.values.back() = 0.0;
    const double fd = central_difference(pr, p, dir, 1e-4);
    const double ad = directional_derivative(pr.model, p, dir, pr.data, pr.cfg).adjoint_form;
    CHECK(std::abs(fd - ad) / std::max(1.0, std::abs(fd)) < 1e-2);
    CHECK(std::abs(fd - ad) / std::abs(fd) < 1e-2);
  }
}

TEST_CASE("finite difference discrepancy shrinks under refinement") {
  double gap[2];
  const int sizes[2] = {50, 100};
  for (int j = 0; j < 2; ++j) {
    const auto pr = example_problem(sizes[j]);
    const auto p = p_reference(pr.model.grid());
    const auto dir = sine(p.grid);
    const double fd = central_difference(pr, p, dir, 1e-4);
    gap[j] = std::abs(fd - directional_derivative(pr.model, p, dir, pr.data, pr.cfg).adjoint_form);
  }
  MESSAGE("discrepancy 50: " << gap[0] << ", 100: " << gap[1]);
  CHECK(gap[1] < gap[0]);
}

TEST_CASE("the two derivative forms converge at second order") {
  double gap[3];
  const int sizes[3] = {25, 50, 100};
  for (int j = 0; j < 3; ++j) {
    const auto pr = example_problem(sizes[j]);
    const auto p = p_reference(pr.model.grid());
    const auto dd = directional_derivative(pr.model, p, sine(p.grid), pr.data, pr.cfg);
    gap[j] = std::abs(dd.adjoint_form - dd.sensitivity_form);
  }
  MESSAGE("form gap 25: " << gap[0] << ", 50: " << gap[1] << ", 100: " << gap[2]);
  CHECK(gap[0] / gap[1] >= 3.0);
  CHECK(gap[0] / gap[1] <= 5.0);
  CHECK(gap[1] / gap[2] >= 3.0);
  CHECK(gap[1] / gap[2] <= 5.0);
}

TEST_CASE("surrogate reduces to J when q equals p") {
  const auto pr = example_problem(60);
  const auto p = p_reference(pr.model.grid());
  const auto u = pr.model.solve(p);
  const double Js = evaluate_surrogate(p, p, u, u, pr.data, 2e-5, pr.cfg);
  CHECK(std::abs(Js - evaluate_J(p, u, pr.data, pr.cfg).total) < 1e-12);
}

TEST_CASE("sampled surrogate pairs") {
  const auto pr = example_problem(60);
  SurrogateSamplingOptions opts;
  opts.n_samples = 20;
  const auto samples = sample_surrogate(pr.model, pr.data, 2e-5, pr.cfg, opts);
  REQUIRE(samples.size() == 20);
  double k_max = 0.0;
  for (const auto& s : samples) {
    CHECK(s.gradient_gap_sq > 0.0);
    CHECK(s.ratio == doctest::Approx(s.forward_gap_sq / s.gradient_gap_sq));
    CHECK(s.condition_holds == (s.ratio <= 2e-5));
    if (s.condition_holds) CHECK(s.surrogate >= 0.0);
    k_max = std::max(k_max, s.ratio);
  }
  CHECK(empirical_K(samples) == k_max);
  MESSAGE("empirical K = " << k_max);
  const auto again = sample_surrogate(pr.model, pr.data, 2e-5, pr.cfg, opts);
  CHECK(empirical_K(again) == k_max);
}
