#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wavecoeff/mesh.hpp"
#include "wavecoeff/window.hpp"

namespace wavecoeff {

/// d(x) = (x - x0)^2 on [domain_lo, domain_hi]; positive when x0 lies outside.
struct SquaredDistance {
  double x0 = -0.1;
  double domain_lo = 0.0;
  double domain_hi = 1.0;
};

/// d given by nodal samples, linearly interpolated between nodes.
using WeightProfile = std::variant<SquaredDistance, SpatialField>;

double profile_value(const WeightProfile& d, double x);
double profile_derivative(const WeightProfile& d, double x);
double profile_max(const WeightProfile& d);
double profile_min(const WeightProfile& d);
double profile_domain_lo(const WeightProfile& d);
double profile_domain_hi(const WeightProfile& d);

struct CarlemanWeights {
  WeightProfile d = SquaredDistance{};
  double beta = 0.5;
  double lambda = 1.0;
  double delta = 0.0;

  void validate() const;
};

/// psi(x, t) = d(x) - beta t^2.
double psi(const CarlemanWeights& w, double x, double t);
/// phi(x, t) = exp(lambda psi(x, t)).
double phi(const CarlemanWeights& w, double x, double t);

/// Omega(delta) = {x in Omega : d(x) > delta} as maximal open intervals, sorted.
std::vector<Interval> level_set_omega(const WeightProfile& d, double delta);
inline std::vector<Interval> level_set_omega(const CarlemanWeights& w) {
  return level_set_omega(w.d, w.delta);
}

/// Q(delta) = {(x, t) : psi(x, t) > delta}, one interval list per time level.
std::vector<std::vector<Interval>> level_set_spacetime(const CarlemanWeights& w,
                                                       const TimeGrid& tgrid);

struct GeometryReport {
  double max_d = 0.0;
  double min_d = 0.0;
  double t_max = 0.0;

  /// (i) T^2 > max d.
  bool time_condition = false;
  double minimal_T = 0.0;  // sqrt(max d); the condition needs T strictly above

  /// (ii) omega reaches both ends of Omega.
  bool boundary_coverage = false;
  bool covers_left = false;
  bool covers_right = false;

  /// (iii) closure of Omega(delta) lies in Omega plus the covered boundary.
  bool level_set_containment = false;
  std::vector<Interval> level_set;

  /// beta values in (0, 1) with beta T^2 > max d; empty when none exist.
  std::optional<Interval> beta_range;
  bool beta_admissible = false;

  /// min over nodes of |u0' d'|; reported only when u0 is supplied.
  std::optional<double> min_nonvanishing;

  bool all_hold() const noexcept {
    return time_condition && boundary_coverage && level_set_containment;
  }
};

GeometryReport check_observation_geometry(const CarlemanWeights& w,
                                          const ObservationWindow& window,
                                          double t_max,
                                          const SpatialField* initial_value = nullptr);

std::string format_intervals(const std::vector<Interval>& intervals);

}  // namespace wavecoeff
