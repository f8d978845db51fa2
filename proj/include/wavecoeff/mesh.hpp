#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace wavecoeff {

class ObservationWindow;

/// Uniform node-centred grid on [x_min, x_max] with n_cells intervals.
class Grid1D {
 public:
  Grid1D(double x_min, double x_max, int n_cells);

  double x_min() const noexcept { return x_min_; }
  double x_max() const noexcept { return x_max_; }
  int n_cells() const noexcept { return n_cells_; }
  int n_nodes() const noexcept { return n_cells_ + 1; }
  double h() const noexcept { return h_; }
  double length() const noexcept { return x_max_ - x_min_; }

  // Affine formula, so the last node is x_max exactly.
  double node(int i) const noexcept {
    if (i == n_cells_) return x_max_;
    return x_min_ + (x_max_ - x_min_) * static_cast<double>(i) / n_cells_;
  }
  std::vector<double> nodes() const;

  /// Composite trapezoid weights: h/2 at the ends, h elsewhere.
  std::vector<double> trapezoid_weights() const;

  friend bool operator==(const Grid1D&, const Grid1D&) = default;

 private:
  double x_min_;
  double x_max_;
  int n_cells_;
  double h_;
};

class TimeGrid {
 public:
  TimeGrid(double t_max, int n_steps);

  double t_max() const noexcept { return t_max_; }
  int n_steps() const noexcept { return n_steps_; }
  int n_levels() const noexcept { return n_steps_ + 1; }
  double tau() const noexcept { return tau_; }

  double level(int k) const noexcept {
    if (k == n_steps_) return t_max_;
    return t_max_ * static_cast<double>(k) / n_steps_;
  }

  std::vector<double> trapezoid_weights() const;

  friend bool operator==(const TimeGrid&, const TimeGrid&) = default;

 private:
  double t_max_;
  int n_steps_;
  double tau_;
};

/// Nodal samples of a function of x.
struct SpatialField {
  Grid1D grid;
  std::vector<double> values;

  explicit SpatialField(const Grid1D& g, double fill = 0.0)
      : grid(g), values(static_cast<std::size_t>(g.n_nodes()), fill) {}
  SpatialField(const Grid1D& g, std::vector<double> v);

  template <class Fn>
  static SpatialField sample(const Grid1D& g, Fn&& fn) {
    SpatialField f(g);
    for (int i = 0; i < g.n_nodes(); ++i) f.values[i] = fn(g.node(i));
    return f;
  }

  std::size_t size() const noexcept { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }

  /// Throws InvalidFieldError on a size mismatch or non-finite entry.
  void validate() const;
};

/// Samples on the space-time mesh, stored time-major: values[k * n_nodes + i].
struct SpaceTimeField {
  Grid1D grid;
  TimeGrid tgrid;
  std::vector<double> values;

  SpaceTimeField(const Grid1D& g, const TimeGrid& tg, double fill = 0.0)
      : grid(g),
        tgrid(tg),
        values(static_cast<std::size_t>(g.n_nodes()) * tg.n_levels(), fill) {}

  template <class Fn>
  static SpaceTimeField sample(const Grid1D& g, const TimeGrid& tg, Fn&& fn) {
    SpaceTimeField f(g, tg);
    for (int k = 0; k < tg.n_levels(); ++k)
      for (int i = 0; i < g.n_nodes(); ++i) f.at(k, i) = fn(g.node(i), tg.level(k));
    return f;
  }

  int n_nodes() const noexcept { return grid.n_nodes(); }
  int n_levels() const noexcept { return tgrid.n_levels(); }

  double& at(int k, int i) { return values[static_cast<std::size_t>(k) * n_nodes() + i]; }
  double at(int k, int i) const { return values[static_cast<std::size_t>(k) * n_nodes() + i]; }

  std::span<double> level(int k) {
    return {values.data() + static_cast<std::size_t>(k) * n_nodes(),
            static_cast<std::size_t>(n_nodes())};
  }
  std::span<const double> level(int k) const {
    return {values.data() + static_cast<std::size_t>(k) * n_nodes(),
            static_cast<std::size_t>(n_nodes())};
  }

  SpatialField level_field(int k) const;

  /// Field with level k replaced by level (n_steps - k).
  SpaceTimeField time_reversed() const;

  void validate() const;
};

void require_same_grid(const SpatialField& a, const SpatialField& b);
void require_same_mesh(const SpaceTimeField& a, const SpaceTimeField& b);
void require_same_mesh(const SpaceTimeField& a, const SpatialField& b);

/// Trapezoid inner product over the spatial grid.
double inner_product(const SpatialField& f, const SpatialField& g);

/// Discrete L2(Omega) norm, trapezoid rule.
double l2_norm_spatial(const SpatialField& f);

/// Discrete L2(omega x (0,T)) norm: trapezoid in x and t, weighted by the
/// nodal indicator of the window.
double l2_norm_spacetime(const SpaceTimeField& f, const ObservationWindow& window);

/// Same quadrature as l2_norm_spacetime, over the full domain.
double l2_norm_spacetime(const SpaceTimeField& f);

/// Space-time inner product with trapezoid weights (full domain).
double inner_product(const SpaceTimeField& f, const SpaceTimeField& g);

double max_abs(std::span<const double> v);

/// Derivative: centred at interior nodes, second-order one-sided at the ends.
SpatialField grad_spatial(const SpatialField& f);

/// 3-point second difference at interior nodes. The two boundary entries are
/// not defined by the stencil and are returned as zero.
SpatialField laplacian_spatial(const SpatialField& f);

}  // namespace wavecoeff
