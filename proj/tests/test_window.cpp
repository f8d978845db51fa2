#include "doctest.h"
#include "wavecoeff/errors.hpp"
#include "wavecoeff/window.hpp"

using namespace wavecoeff;

TEST_CASE("complement window") {
  const auto w = ObservationWindow::complement(0.1, 0.9);
  CHECK(w.intervals().size() == 2);
  CHECK(w.measure() == doctest::Approx(0.2));
  CHECK(w.covers_boundary());
  CHECK(w.contains(0.05));
  CHECK_FALSE(w.contains(0.5));
  CHECK_FALSE(w.contains(0.1));
  CHECK(w.describe() == "0,0.1;0.9,1");
}

TEST_CASE("nodal indicator") {
  Grid1D g(0.0, 1.0, 10);
  const auto chi = ObservationWindow::complement(0.2, 0.8).indicator(g);
  const std::vector<double> expected = {1, 1, 0.5, 0, 0, 0, 0, 0, 0.5, 1, 1};
  CHECK(chi == expected);

  // Interior window with endpoints between nodes.
  const auto mid = ObservationWindow({{0.25, 0.55}}).indicator(g);
  const std::vector<double> expected_mid = {0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 0};
  CHECK(mid == expected_mid);

  // Adjacent intervals meeting at a node give full weight there.
  const auto joined = ObservationWindow({{0.0, 0.5}, {0.5, 1.0}}).indicator(g);
  for (double v : joined) CHECK(v == 1.0);
}

TEST_CASE("indicator does not depend on interval order") {
  Grid1D g(0.0, 1.0, 50);
  const ObservationWindow a({{0.0, 0.1}, {0.4, 0.45}, {0.9, 1.0}});
  const ObservationWindow b({{0.9, 1.0}, {0.0, 0.1}, {0.4, 0.45}});
  CHECK(a.indicator(g) == b.indicator(g));
  CHECK(a == b);
}

TEST_CASE("boundary coverage is reported, not enforced") {
  const ObservationWindow left({{0.0, 0.2}});
  CHECK(left.covers_left_boundary());
  CHECK_FALSE(left.covers_right_boundary());
  CHECK_FALSE(left.covers_boundary());
  const ObservationWindow inner({{0.3, 0.6}});
  CHECK_FALSE(inner.covers_boundary());
}

TEST_CASE("invalid windows") {
  CHECK_THROWS_AS(ObservationWindow({{0.0, 0.5}, {0.4, 1.0}}), InvalidWindowError);
  CHECK_THROWS_AS(ObservationWindow({{0.3, 0.3}}), InvalidWindowError);
  CHECK_THROWS_AS(ObservationWindow({{-0.2, 0.3}}), InvalidWindowError);
  CHECK_THROWS_AS(ObservationWindow(std::vector<Interval>{}), InvalidWindowError);
  CHECK_THROWS_AS(ObservationWindow::complement(0.9, 0.1), InvalidWindowError);
  try {
    ObservationWindow({{0.0, 0.5}, {0.4, 1.0}});
  } catch (const InvalidWindowError& e) {
    CHECK(std::string(e.what()).find("disjoint") != std::string::npos);
  }
}

TEST_CASE("window parsing") {
  CHECK(ObservationWindow::parse("complement:0.1,0.9") == ObservationWindow::complement(0.1, 0.9));
  CHECK(ObservationWindow::parse("full") == ObservationWindow::full());
  CHECK(ObservationWindow::parse(" 0,0.1 ; 0.9,1 ") == ObservationWindow::complement(0.1, 0.9));
  const auto w = ObservationWindow::parse("0.9,1;0,0.05");
  CHECK(ObservationWindow::parse(w.describe()) == w);
  CHECK_THROWS_AS(ObservationWindow::parse("0,0.1;0.9"), InvalidWindowError);
  CHECK_THROWS_AS(ObservationWindow::parse("complement:abc,1"), InvalidWindowError);
}
