#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "wavecoeff/mesh.hpp"

namespace wavecoeff {

struct Interval {
  double lo;
  double hi;

  double length() const noexcept { return hi - lo; }
  friend bool operator==(const Interval&, const Interval&) = default;
};

/// Observation subdomain omega, a finite union of disjoint open intervals of
/// the spatial domain. Intervals are stored sorted by their left endpoint.
class ObservationWindow {
 public:
  ObservationWindow(std::vector<Interval> intervals, double domain_lo = 0.0,
                    double domain_hi = 1.0);

  /// omega = (domain_lo, a) U (b, domain_hi).
  static ObservationWindow complement(double a, double b, double domain_lo = 0.0,
                                      double domain_hi = 1.0);

  /// The whole domain.
  static ObservationWindow full(double domain_lo = 0.0, double domain_hi = 1.0);

  /// Accepts "full", "complement:a,b" or a list "lo,hi;lo,hi;...".
  static ObservationWindow parse(std::string_view text, double domain_lo = 0.0,
                                 double domain_hi = 1.0);

  const std::vector<Interval>& intervals() const noexcept { return intervals_; }
  double domain_lo() const noexcept { return domain_lo_; }
  double domain_hi() const noexcept { return domain_hi_; }

  double measure() const noexcept;
  bool covers_left_boundary() const noexcept;
  bool covers_right_boundary() const noexcept;
  /// Both endpoints of the domain are endpoints of some interval.
  bool covers_boundary() const noexcept {
    return covers_left_boundary() && covers_right_boundary();
  }

  bool contains(double x) const noexcept;

  /// Nodal indicator: 1 strictly inside, 0 outside, 1/2 at an interval endpoint
  /// lying in the interior of the domain. Endpoints on the domain boundary get
  /// weight 1, since the trapezoid rule already halves those nodes.
  std::vector<double> indicator(const Grid1D& grid) const;

  /// Canonical textual form, e.g. "0,0.1;0.9,1".
  std::string describe() const;

  void require_compatible(const Grid1D& grid) const;

  friend bool operator==(const ObservationWindow&, const ObservationWindow&) = default;

 private:
  std::vector<Interval> intervals_;
  double domain_lo_;
  double domain_hi_;
};

}  // namespace wavecoeff
