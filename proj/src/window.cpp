#include "wavecoeff/window.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "wavecoeff/errors.hpp"

namespace wavecoeff {

namespace {

std::string format_number(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, end);
}

double parse_number(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size())
    throw InvalidWindowError("cannot parse window bound '" + std::string(s) + "'");
  return v;
}

Interval parse_pair(std::string_view s) {
  auto comma = s.find(',');
  if (comma == std::string_view::npos)
    throw InvalidWindowError("window interval '" + std::string(s) + "' must be 'lo,hi'");
  return {parse_number(s.substr(0, comma)), parse_number(s.substr(comma + 1))};
}

}  // namespace

ObservationWindow::ObservationWindow(std::vector<Interval> intervals, double domain_lo,
                                     double domain_hi)
    : intervals_(std::move(intervals)), domain_lo_(domain_lo), domain_hi_(domain_hi) {
  if (!(domain_hi > domain_lo)) throw InvalidWindowError("window domain is empty");
  if (intervals_.empty()) throw InvalidWindowError("window has no intervals");
  const double tol = 1e-12 * (domain_hi - domain_lo);
  for (const auto& iv : intervals_) {
    if (!std::isfinite(iv.lo) || !std::isfinite(iv.hi) || !(iv.hi > iv.lo))
      throw InvalidWindowError("window interval (" + format_number(iv.lo) + ", " +
                               format_number(iv.hi) + ") is empty");
    if (iv.lo < domain_lo - tol || iv.hi > domain_hi + tol)
      throw InvalidWindowError("window interval (" + format_number(iv.lo) + ", " +
                               format_number(iv.hi) + ") leaves the domain");
  }
  std::sort(intervals_.begin(), intervals_.end(),
            [](const Interval& a, const Interval& b) { return a.lo < b.lo; });
  for (std::size_t j = 1; j < intervals_.size(); ++j) {
    if (intervals_[j].lo < intervals_[j - 1].hi - tol)
      throw InvalidWindowError("window intervals must be pairwise disjoint: (" +
                               format_number(intervals_[j - 1].lo) + ", " +
                               format_number(intervals_[j - 1].hi) + ") overlaps (" +
                               format_number(intervals_[j].lo) + ", " +
                               format_number(intervals_[j].hi) + ")");
  }
}

ObservationWindow ObservationWindow::complement(double a, double b, double domain_lo,
                                                double domain_hi) {
  if (!(domain_lo < a && a <= b && b < domain_hi))
    throw InvalidWindowError("complement window needs lo < a <= b < hi");
  return ObservationWindow({{domain_lo, a}, {b, domain_hi}}, domain_lo, domain_hi);
}

ObservationWindow ObservationWindow::full(double domain_lo, double domain_hi) {
  return ObservationWindow({{domain_lo, domain_hi}}, domain_lo, domain_hi);
}

ObservationWindow ObservationWindow::parse(std::string_view text, double domain_lo,
                                           double domain_hi) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text == "full") return full(domain_lo, domain_hi);
  constexpr std::string_view kComplement = "complement:";
  if (text.starts_with(kComplement)) {
    auto iv = parse_pair(text.substr(kComplement.size()));
    return complement(iv.lo, iv.hi, domain_lo, domain_hi);
  }
  std::vector<Interval> intervals;
  while (!text.empty()) {
    auto semi = text.find(';');
    intervals.push_back(parse_pair(text.substr(0, semi)));
    if (semi == std::string_view::npos) break;
    text.remove_prefix(semi + 1);
  }
  return ObservationWindow(std::move(intervals), domain_lo, domain_hi);
}

double ObservationWindow::measure() const noexcept {
  double m = 0.0;
  for (const auto& iv : intervals_) m += iv.length();
  return m;
}

bool ObservationWindow::covers_left_boundary() const noexcept {
  const double tol = 1e-12 * (domain_hi_ - domain_lo_);
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const Interval& iv) { return std::abs(iv.lo - domain_lo_) <= tol; });
}

bool ObservationWindow::covers_right_boundary() const noexcept {
  const double tol = 1e-12 * (domain_hi_ - domain_lo_);
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const Interval& iv) { return std::abs(iv.hi - domain_hi_) <= tol; });
}

bool ObservationWindow::contains(double x) const noexcept {
  return std::any_of(intervals_.begin(), intervals_.end(),
                     [&](const Interval& iv) { return iv.lo < x && x < iv.hi; });
}

std::vector<double> ObservationWindow::indicator(const Grid1D& grid) const {
  const double tol = 1e-9 * grid.h();
  auto endpoint_weight = [&](double e) {
    const bool on_boundary =
        std::abs(e - domain_lo_) <= tol || std::abs(e - domain_hi_) <= tol;
    return on_boundary ? 1.0 : 0.5;
  };
  std::vector<double> chi(static_cast<std::size_t>(grid.n_nodes()), 0.0);
  for (int i = 0; i < grid.n_nodes(); ++i) {
    const double x = grid.node(i);
    double w = 0.0;
    for (const auto& iv : intervals_) {
      if (std::abs(x - iv.lo) <= tol)
        w += endpoint_weight(iv.lo);
      else if (std::abs(x - iv.hi) <= tol)
        w += endpoint_weight(iv.hi);
      else if (iv.lo < x && x < iv.hi)
        w += 1.0;
    }
    chi[i] = std::min(w, 1.0);
  }
  return chi;
}

std::string ObservationWindow::describe() const {
  std::ostringstream os;
  for (std::size_t j = 0; j < intervals_.size(); ++j) {
    if (j) os << ';';
    os << format_number(intervals_[j].lo) << ',' << format_number(intervals_[j].hi);
  }
  return os.str();
}

void ObservationWindow::require_compatible(const Grid1D& grid) const {
  const double tol = 1e-12 * grid.length();
  if (std::abs(grid.x_min() - domain_lo_) > tol || std::abs(grid.x_max() - domain_hi_) > tol)
    throw DimensionMismatchError("window domain [" + format_number(domain_lo_) + ", " +
                                 format_number(domain_hi_) + "] does not match the grid");
}

}  // namespace wavecoeff
