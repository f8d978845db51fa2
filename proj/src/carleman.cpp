#include "wavecoeff/carleman.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <sstream>

#include "wavecoeff/errors.hpp"

namespace wavecoeff {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double interpolate(const SpatialField& f, double x) {
  const auto& g = f.grid;
  const double s = std::clamp((x - g.x_min()) / g.h(), 0.0, static_cast<double>(g.n_cells()));
  const int i = std::min(static_cast<int>(s), g.n_cells() - 1);
  const double frac = s - i;
  return (1.0 - frac) * f[i] + frac * f[i + 1];
}

std::vector<Interval> sampled_level_set(const SpatialField& d, double delta) {
  const auto& g = d.grid;
  std::vector<Interval> out;
  const int n = g.n_cells();
  auto crossing = [&](int i) {
    // Root of the linear interpolant between nodes i and i + 1.
    const double a = d[i] - delta;
    const double b = d[i + 1] - delta;
    return g.node(i) + g.h() * a / (a - b);
  };
  bool inside = d[0] > delta;
  double start = g.x_min();
  for (int i = 0; i < n; ++i) {
    const bool next_inside = d[i + 1] > delta;
    if (next_inside == inside) continue;
    const double x = crossing(i);
    if (inside)
      out.push_back({start, x});
    else
      start = x;
    inside = next_inside;
  }
  if (inside) out.push_back({start, g.x_max()});
  return out;
}

std::string fmt(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

}  // namespace

double profile_value(const WeightProfile& d, double x) {
  return std::visit(overloaded{[x](const SquaredDistance& s) { return (x - s.x0) * (x - s.x0); },
                               [x](const SpatialField& f) { return interpolate(f, x); }},
                    d);
}

double profile_derivative(const WeightProfile& d, double x) {
  return std::visit(
      overloaded{[x](const SquaredDistance& s) { return 2.0 * (x - s.x0); },
                 [x](const SpatialField& f) {
                   const auto& g = f.grid;
                   const double s = std::clamp((x - g.x_min()) / g.h(), 0.0,
                                               static_cast<double>(g.n_cells()));
                   const int i = std::min(static_cast<int>(s), g.n_cells() - 1);
                   return (f[i + 1] - f[i]) / g.h();
                 }},
      d);
}

double profile_domain_lo(const WeightProfile& d) {
  return std::visit(overloaded{[](const SquaredDistance& s) { return s.domain_lo; },
                               [](const SpatialField& f) { return f.grid.x_min(); }},
                    d);
}

double profile_domain_hi(const WeightProfile& d) {
  return std::visit(overloaded{[](const SquaredDistance& s) { return s.domain_hi; },
                               [](const SpatialField& f) { return f.grid.x_max(); }},
                    d);
}

double profile_max(const WeightProfile& d) {
  return std::visit(
      overloaded{[](const SquaredDistance& s) {
                   const double a = (s.domain_lo - s.x0) * (s.domain_lo - s.x0);
                   const double b = (s.domain_hi - s.x0) * (s.domain_hi - s.x0);
                   return std::max(a, b);
                 },
                 [](const SpatialField& f) {
                   return *std::max_element(f.values.begin(), f.values.end());
                 }},
      d);
}

double profile_min(const WeightProfile& d) {
  return std::visit(
      overloaded{[](const SquaredDistance& s) {
                   if (s.domain_lo <= s.x0 && s.x0 <= s.domain_hi) return 0.0;
                   const double a = (s.domain_lo - s.x0) * (s.domain_lo - s.x0);
                   const double b = (s.domain_hi - s.x0) * (s.domain_hi - s.x0);
                   return std::min(a, b);
                 },
                 [](const SpatialField& f) {
                   return *std::min_element(f.values.begin(), f.values.end());
                 }},
      d);
}

void CarlemanWeights::validate() const {
  if (!(profile_min(d) > 0.0)) throw InvalidParameterError("weight profile d must be positive");
  if (!(beta > 0.0 && beta < 1.0)) throw InvalidParameterError("beta must lie in (0, 1)");
  if (!(lambda > 0.0)) throw InvalidParameterError("lambda must be positive");
  if (!(delta >= 0.0)) throw InvalidParameterError("level delta must be nonnegative");
}

double psi(const CarlemanWeights& w, double x, double t) {
  return profile_value(w.d, x) - w.beta * t * t;
}

double phi(const CarlemanWeights& w, double x, double t) {
  return std::exp(w.lambda * psi(w, x, t));
}

std::vector<Interval> level_set_omega(const WeightProfile& d, double delta) {
  return std::visit(
      overloaded{
          [delta](const SquaredDistance& s) {
            std::vector<Interval> out;
            if (delta < 0.0) {
              out.push_back({s.domain_lo, s.domain_hi});
              return out;
            }
            // (x - x0)^2 > delta  <=>  x < x0 - r  or  x > x0 + r.
            const double r = std::sqrt(delta);
            const double left_hi = std::min(s.x0 - r, s.domain_hi);
            const double right_lo = std::max(s.x0 + r, s.domain_lo);
            if (left_hi > s.domain_lo) out.push_back({s.domain_lo, left_hi});
            if (right_lo < s.domain_hi) out.push_back({right_lo, s.domain_hi});
            return out;
          },
          [delta](const SpatialField& f) { return sampled_level_set(f, delta); }},
      d);
}

std::vector<std::vector<Interval>> level_set_spacetime(const CarlemanWeights& w,
                                                       const TimeGrid& tgrid) {
  std::vector<std::vector<Interval>> out;
  out.reserve(tgrid.n_levels());
  for (int k = 0; k < tgrid.n_levels(); ++k) {
    const double t = tgrid.level(k);
    out.push_back(level_set_omega(w.d, w.delta + w.beta * t * t));
  }
  return out;
}

GeometryReport check_observation_geometry(const CarlemanWeights& w,
                                          const ObservationWindow& window, double t_max,
                                          const SpatialField* initial_value) {
  w.validate();
  if (!(t_max > 0.0)) throw InvalidParameterError("T must be positive");
  GeometryReport r;
  r.max_d = profile_max(w.d);
  r.min_d = profile_min(w.d);
  r.t_max = t_max;
  r.time_condition = t_max * t_max > r.max_d;
  r.minimal_T = std::sqrt(r.max_d);

  r.covers_left = window.covers_left_boundary();
  r.covers_right = window.covers_right_boundary();
  r.boundary_coverage = r.covers_left && r.covers_right;

  // The closure of Omega(delta) may touch an end of Omega only where omega
  // reaches that end.
  r.level_set = level_set_omega(w.d, w.delta);
  const double lo = profile_domain_lo(w.d);
  const double hi = profile_domain_hi(w.d);
  const double tol = 1e-12 * (hi - lo);
  bool touches_lo = false, touches_hi = false;
  for (const auto& iv : r.level_set) {
    touches_lo = touches_lo || std::abs(iv.lo - lo) <= tol;
    touches_hi = touches_hi || std::abs(iv.hi - hi) <= tol;
  }
  r.level_set_containment = (!touches_lo || r.covers_left) && (!touches_hi || r.covers_right);

  const double beta_lo = r.max_d / (t_max * t_max);
  if (beta_lo < 1.0) r.beta_range = Interval{std::max(beta_lo, 0.0), 1.0};
  r.beta_admissible = r.beta_range && w.beta > r.beta_range->lo && w.beta < r.beta_range->hi;

  if (initial_value) {
    const auto& g = initial_value->grid;
    const auto du = grad_spatial(*initial_value);
    double m = std::numeric_limits<double>::infinity();
    for (int i = 0; i < g.n_nodes(); ++i)
      m = std::min(m, std::abs(du[i] * profile_derivative(w.d, g.node(i))));
    r.min_nonvanishing = m;
  }
  return r;
}

std::string format_intervals(const std::vector<Interval>& intervals) {
  if (intervals.empty()) return "empty";
  std::ostringstream os;
  for (std::size_t j = 0; j < intervals.size(); ++j) {
    if (j) os << " U ";
    os << '(' << fmt(intervals[j].lo) << ", " << fmt(intervals[j].hi) << ')';
  }
  return os.str();
}

}  // namespace wavecoeff
