#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "beltrami/calculus.hpp"
#include "beltrami/fields.hpp"
#include "beltrami/sampling.hpp"

using namespace beltrami;

namespace {

std::vector<KnotSpec> all_specs() {
  std::vector<KnotSpec> specs;
  for (auto [p, q] : {std::pair{1, 1}, {2, 3}, {3, 2}, {2, 5}}) {
    for (int k = -2; k <= 2; ++k) specs.push_back(make_knot_spec(p, q, k));
  }
  return specs;
}

// Pushforward of B through psi o twist with the Jacobian from central
// differences of the plain double maps, not jets.
Vec3d fd_pushforward(const Vec3d& xyz, const KnotSpec& s) {
  const Vec3d model = twist_inv_coords(psi_inv_coords(xyz), s);
  const Vec3d B = base_field_coords(model);
  const auto map = [&](const Vec3d& m) { return psi_coords(twist_coords(m, s)); };
  const double h = 1e-6;
  Vec3d out{0.0, 0.0, 0.0};
  for (std::size_t j = 0; j < 3; ++j) {
    Vec3d plus = model, minus = model;
    plus[j] += h;
    minus[j] -= h;
    out += (map(plus) - map(minus)) * (B[j] / (2 * h));
  }
  return out;
}

}  // namespace

TEST_CASE("base field worked values") {
  const Vec3d at_knot = base_field_B(ToroidalPoint(0.7, 0.0, 1.0));
  CHECK(norm(at_knot) < 1e-15);
  const Vec3d quarter = base_field_B(ToroidalPoint(0.3, kPi / 2, 1.0));
  CHECK(quarter[0] == doctest::Approx(1.0));
  CHECK(quarter[1] == doctest::Approx(0.0));
  CHECK(quarter[2] == doctest::Approx(-1.0));
  const Vec3d radial = base_field_B(ToroidalPoint(0.0, 0.0, 1.25));
  CHECK(radial[0] == doctest::Approx(std::cos(0.25) - 1.0));
  CHECK(radial[1] == doctest::Approx(std::sin(-0.25)));
  CHECK(radial[2] == doctest::Approx(0.0));
}

TEST_CASE("multiple angle recurrence matches cos(n theta), sin(n theta)") {
  for (int n = 1; n <= 12; ++n) {
    for (double th : {-2.9, -0.4, 0.0, 0.9, 2.2}) {
      const auto [c, s] = multiple_angle_eval(n, std::cos(th), std::sin(th));
      CHECK(c == doctest::Approx(std::cos(n * th)).epsilon(1e-12));
      CHECK(s == doctest::Approx(std::sin(n * th)).epsilon(1e-12));
    }
  }
  CHECK_THROWS_AS(multiple_angle_eval(0, 1.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(multiple_angle_eval(2, 0.9, 0.0), std::invalid_argument);
}

TEST_CASE("components do not depend on k") {
  PointSampler rng(3);
  for (int i = 0; i < 200; ++i) {
    const ToroidalPoint P = rng.toroidal_point();
    const Vec3d base = components_X(P, make_knot_spec(2, 5, 0));
    for (int k = -3; k <= 3; ++k) {
      CHECK(max_abs_diff(components_X(P, make_knot_spec(2, 5, k)), base) == 0.0);
    }
  }
}

TEST_CASE("recurrence and direct trig paths agree") {
  PointSampler rng(5);
  for (const KnotSpec& s : all_specs()) {
    for (int i = 0; i < 100; ++i) {
      const CartesianPoint x = rng.annulus_point();
      CHECK(max_abs_diff(field_X(x, s, AngleEval::recurrence), field_X(x, s, AngleEval::direct)) <
            1e-12);
    }
  }
}

TEST_CASE("closed form agrees with the jet pushforward oracle") {
  PointSampler rng(17);
  double worst = 0.0;
  for (const KnotSpec& s : all_specs()) {
    for (int i = 0; i < 200; ++i) {
      const CartesianPoint x = rng.annulus_point();
      worst = std::max(worst, max_abs_diff(field_X(x, s), pushforward_oracle(x, s)));
    }
  }
  CHECK(worst <= 1e-10);
}

TEST_CASE("closed form agrees with a finite-difference pushforward") {
  PointSampler rng(19);
  for (const KnotSpec& s : all_specs()) {
    for (int i = 0; i < 50; ++i) {
      const CartesianPoint x = rng.annulus_point();
      const Vec3d X = field_X(x, s);
      CHECK(norm(X - fd_pushforward(x.xyz(), s)) <= 1e-6 * std::max(1.0, norm(X)));
    }
  }
}

TEST_CASE("X vanishes on the torus knot") {
  for (const KnotSpec& s : all_specs()) {
    for (int i = 0; i < 500; ++i) {
      const CartesianPoint x = torus_knot_point(s.p, s.q, kTwoPi * i / 500.0);
      CHECK(norm(field_X(x, s)) <= 1e-10);
    }
  }
}

TEST_CASE("trefoil closed forms match the generic components") {
  PointSampler rng(23);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const CartesianPoint x = rng.annulus_point();
    const Vec3d generic = components_coords(x.xyz(), 2, 3, AngleEval::direct);
    worst = std::max(worst, max_abs_diff(trefoil_components(x), generic));
  }
  CHECK(worst <= 1e-12);
  for (int k = -2; k <= 2; ++k) {
    const KnotSpec s = make_knot_spec(2, 3, k);
    const CartesianPoint x = rng.annulus_point();
    CHECK(max_abs_diff(trefoil_field(x, s), field_X(x, s)) <= 1e-11);
  }
  CHECK_THROWS_AS(trefoil_field(CartesianPoint(3.0, 0.0, 0.0), make_knot_spec(3, 2, 0)),
                  std::invalid_argument);
}

TEST_CASE("frames are the pushed-forward model basis") {
  PointSampler rng(29);
  for (int i = 0; i < 100; ++i) {
    const ToroidalPoint P = rng.toroidal_point();
    const CartesianPoint x = psi(P);
    const FrameTriple f = frames(x);
    const Mat3d J = jacobian_of_map(CoordinateMap::psi, P.coords());
    CHECK(max_abs_diff(f.e_a, J.column(0)) < 1e-12);
    CHECK(max_abs_diff(f.e_c, J.column(1)) < 1e-12);
    CHECK(max_abs_diff(f.e_t, J.column(2)) < 1e-12);
  }
}

TEST_CASE("field evaluation outside the annulus is an error") {
  const KnotSpec s = make_knot_spec(2, 3, 0);
  CHECK_THROWS_AS(field_X(CartesianPoint(0.0, 0.0, 0.0), s), DomainError);
  CHECK_THROWS_AS(field_X(CartesianPoint(2.0, 0.0, 1.6), s), DomainError);
  CHECK_THROWS_AS(trefoil_components(CartesianPoint(4.0, 0.0, 0.0)), DomainError);
}

TEST_CASE("relative residual floors the denominator") {
  CHECK(relative_residual(Vec3d{1e-9, 0, 0}, Vec3d{0, 0, 0}) == doctest::Approx(0.1));
  CHECK(relative_residual(Vec3d{2, 0, 0}, Vec3d{1, 0, 0}) == doctest::Approx(1.0));
}
