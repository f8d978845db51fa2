#include "wavecoeff/mesh.hpp"

#include <cmath>
#include <string>

#include "wavecoeff/errors.hpp"
#include "wavecoeff/window.hpp"

namespace wavecoeff {

Grid1D::Grid1D(double x_min, double x_max, int n_cells)
    : x_min_(x_min), x_max_(x_max), n_cells_(n_cells), h_(0.0) {
  if (n_cells < 2)
    throw GridTooCoarseError("grid needs at least 2 cells, got " + std::to_string(n_cells));
  if (!(x_max > x_min) || !std::isfinite(x_min) || !std::isfinite(x_max))
    throw InvalidParameterError("grid requires finite x_min < x_max");
  h_ = (x_max - x_min) / n_cells;
}

std::vector<double> Grid1D::nodes() const {
  std::vector<double> x(static_cast<std::size_t>(n_nodes()));
  for (int i = 0; i < n_nodes(); ++i) x[i] = node(i);
  return x;
}

std::vector<double> Grid1D::trapezoid_weights() const {
  std::vector<double> w(static_cast<std::size_t>(n_nodes()), h_);
  w.front() = 0.5 * h_;
  w.back() = 0.5 * h_;
  return w;
}

TimeGrid::TimeGrid(double t_max, int n_steps) : t_max_(t_max), n_steps_(n_steps), tau_(0.0) {
  if (n_steps < 2)
    throw GridTooCoarseError("time grid needs at least 2 steps, got " + std::to_string(n_steps));
  if (!(t_max > 0.0) || !std::isfinite(t_max))
    throw InvalidParameterError("time grid requires finite T > 0");
  tau_ = t_max / n_steps;
}

std::vector<double> TimeGrid::trapezoid_weights() const {
  std::vector<double> w(static_cast<std::size_t>(n_levels()), tau_);
  w.front() = 0.5 * tau_;
  w.back() = 0.5 * tau_;
  return w;
}

SpatialField::SpatialField(const Grid1D& g, std::vector<double> v) : grid(g), values(std::move(v)) {
  if (values.size() != static_cast<std::size_t>(g.n_nodes()))
    throw DimensionMismatchError("spatial field has " + std::to_string(values.size()) +
                                 " values for " + std::to_string(g.n_nodes()) + " nodes");
}

void SpatialField::validate() const {
  if (values.size() != static_cast<std::size_t>(grid.n_nodes()))
    throw InvalidFieldError("spatial field size does not match its grid");
  for (double v : values)
    if (!std::isfinite(v)) throw InvalidFieldError("spatial field has a non-finite value");
}

SpatialField SpaceTimeField::level_field(int k) const {
  auto row = level(k);
  return SpatialField(grid, std::vector<double>(row.begin(), row.end()));
}

SpaceTimeField SpaceTimeField::time_reversed() const {
  SpaceTimeField out(grid, tgrid);
  const int last = tgrid.n_steps();
  for (int k = 0; k <= last; ++k) {
    auto src = level(last - k);
    auto dst = out.level(k);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  return out;
}

void SpaceTimeField::validate() const {
  if (values.size() != static_cast<std::size_t>(grid.n_nodes()) * tgrid.n_levels())
    throw InvalidFieldError("space-time field size does not match its mesh");
  for (double v : values)
    if (!std::isfinite(v)) throw InvalidFieldError("space-time field has a non-finite value");
}

void require_same_grid(const SpatialField& a, const SpatialField& b) {
  if (!(a.grid == b.grid) || a.size() != b.size())
    throw DimensionMismatchError("spatial fields live on different grids");
}

void require_same_mesh(const SpaceTimeField& a, const SpaceTimeField& b) {
  if (!(a.grid == b.grid) || !(a.tgrid == b.tgrid) || a.values.size() != b.values.size())
    throw DimensionMismatchError("space-time fields live on different meshes");
}

void require_same_mesh(const SpaceTimeField& a, const SpatialField& b) {
  if (!(a.grid == b.grid)) throw DimensionMismatchError("field grids differ");
}

double inner_product(const SpatialField& f, const SpatialField& g) {
  require_same_grid(f, g);
  const auto w = f.grid.trapezoid_weights();
  double sum = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) sum += w[i] * f.values[i] * g.values[i];
  return sum;
}

double l2_norm_spatial(const SpatialField& f) {
  f.validate();
  return std::sqrt(inner_product(f, f));
}

namespace {

double weighted_spacetime_sum_sq(const SpaceTimeField& f, const std::vector<double>& wx) {
  const auto wt = f.tgrid.trapezoid_weights();
  double total = 0.0;
  for (int k = 0; k < f.n_levels(); ++k) {
    auto row = f.level(k);
    double level_sum = 0.0;
    for (int i = 0; i < f.n_nodes(); ++i) level_sum += wx[i] * row[i] * row[i];
    total += wt[k] * level_sum;
  }
  return total;
}

}  // namespace

double l2_norm_spacetime(const SpaceTimeField& f, const ObservationWindow& window) {
  f.validate();
  window.require_compatible(f.grid);
  auto wx = f.grid.trapezoid_weights();
  const auto chi = window.indicator(f.grid);
  for (std::size_t i = 0; i < wx.size(); ++i) wx[i] *= chi[i];
  return std::sqrt(weighted_spacetime_sum_sq(f, wx));
}

double l2_norm_spacetime(const SpaceTimeField& f) {
  f.validate();
  return std::sqrt(weighted_spacetime_sum_sq(f, f.grid.trapezoid_weights()));
}

double inner_product(const SpaceTimeField& f, const SpaceTimeField& g) {
  require_same_mesh(f, g);
  const auto wx = f.grid.trapezoid_weights();
  const auto wt = f.tgrid.trapezoid_weights();
  double total = 0.0;
  for (int k = 0; k < f.n_levels(); ++k) {
    double level_sum = 0.0;
    for (int i = 0; i < f.n_nodes(); ++i) level_sum += wx[i] * f.at(k, i) * g.at(k, i);
    total += wt[k] * level_sum;
  }
  return total;
}

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

SpatialField grad_spatial(const SpatialField& f) {
  f.validate();
  const int n = f.grid.n_cells();
  const double h = f.grid.h();
  const auto& v = f.values;
  SpatialField out(f.grid);
  for (int i = 1; i < n; ++i) out[i] = (v[i + 1] - v[i - 1]) / (2.0 * h);
  out[0] = (-3.0 * v[0] + 4.0 * v[1] - v[2]) / (2.0 * h);
  out[n] = (3.0 * v[n] - 4.0 * v[n - 1] + v[n - 2]) / (2.0 * h);
  return out;
}

SpatialField laplacian_spatial(const SpatialField& f) {
  f.validate();
  const int n = f.grid.n_cells();
  const double inv_h2 = 1.0 / (f.grid.h() * f.grid.h());
  const auto& v = f.values;
  SpatialField out(f.grid);
  for (int i = 1; i < n; ++i) out[i] = (v[i + 1] - 2.0 * v[i] + v[i - 1]) * inv_h2;
  return out;
}

}  // namespace wavecoeff
