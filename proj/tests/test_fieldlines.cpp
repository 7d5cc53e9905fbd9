#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "beltrami/fieldlines.hpp"
#include "beltrami/fields.hpp"

using namespace beltrami;

TEST_CASE("a start on the knot is stationary") {
  const KnotSpec s = make_knot_spec(2, 3, 0);
  const FieldLine line = integrate_field_line(s, torus_knot_coords(2, 3, 0.7));
  CHECK(line.degenerate());
  CHECK(line.points.empty());
  CHECK(line.stop == LineStop::stationary);
  CHECK(line.warning.has_value());
}

TEST_CASE("a generic start gives a nontrivial in-domain polyline") {
  const KnotSpec s = make_knot_spec(2, 3, 0);
  const FieldLine line = integrate_field_line(s, Vec3d{0.0, 1.25, 0.0});
  CHECK(line.points.size() > 10);
  CHECK_FALSE(line.warning.has_value());
  CHECK((line.stop == LineStop::boundary || line.stop == LineStop::span));
  double max_speed = 0.0;
  for (const Vec3d& x : line.points) {
    CHECK(in_annulus_interior(x, kScanMargin));
    max_speed = std::max(max_speed, norm(field_X_coords(x, s)));
  }
  // Consecutive points are at most about h max|X| apart.
  for (std::size_t i = 1; i < line.points.size(); ++i) {
    CHECK(norm(line.points[i] - line.points[i - 1]) <= 1.01 * line.step * max_speed + 1e-12);
  }
}

TEST_CASE("arc length span stops the integration") {
  const KnotSpec s = make_knot_spec(1, 1, 0);
  FieldLineOptions opts;
  opts.max_arc_length = 0.05;
  const FieldLine line = integrate_field_line(s, Vec3d{0.0, 2.9, 0.2}, opts);
  CHECK(line.stop == LineStop::span);
  CHECK(line.arc_length >= 0.05);
  CHECK(line.arc_length < 0.05 + 0.01);
}

TEST_CASE("RK4 converges at fourth order") {
  // Endpoint differences under halving h in {2e-3, 1e-3, 5e-4} shrink by
  // about 2^4.
  const KnotSpec s = make_knot_spec(2, 3, 0);
  const double ratio = rk4_order_ratio(s, Vec3d{0.0, 2.9, 0.3}, 1e-3, 0.5);
  CHECK(ratio == doctest::Approx(16.0).epsilon(0.1));
}

TEST_CASE("a single RK4 step matches the Taylor expansion to h^5") {
  const KnotSpec s = make_knot_spec(3, 2, 1);
  const Vec3d x{0.3, 2.8, -0.2};
  const Vec3d X = field_X_coords(x, s);
  // x(h) = x + h X + h^2/2 (DX) X + O(h^3)
  const Mat3d DX = jacobian(field_X_coords(seed(x), s));
  for (double h : {1e-3, 1e-4}) {
    const Vec3d taylor = x + X * h + (DX * X) * (0.5 * h * h);
    CHECK(norm(rk4_step(s, x, h) - taylor) <= 50.0 * h * h * h);
  }
}

TEST_CASE("starts outside the margin are rejected") {
  CHECK_THROWS_AS(integrate_field_line(make_knot_spec(2, 3, 0), Vec3d{0, 0, 0}), DomainError);
  CHECK_THROWS_AS(integrate_field_line(make_knot_spec(2, 3, 0), Vec3d{3.4999, 0, 0}), DomainError);
}

TEST_CASE("stop reasons have names") {
  CHECK(to_string(LineStop::boundary) == "boundary");
  CHECK(to_string(LineStop::stationary) == "stationary");
}
