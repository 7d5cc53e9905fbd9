#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "beltrami/fields.hpp"
#include "beltrami/metric.hpp"
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

double relative_matrix_gap(const Mat3d& a, const Mat3d& b) {
  return max_abs_diff(a, b) / std::max(1.0, frobenius_norm(b));
}

}  // namespace

TEST_CASE("M_{2,3,0} worked value") {
  const Mat3d M = matrix_M(make_knot_spec(2, 3, 0));
  const Mat3d expected{{{{5, -7, 0}, {-7, 10, 0}, {0, 0, 1}}}};
  CHECK(max_abs_diff(M, expected) == 0.0);
  CHECK(det(M) == doctest::Approx(1.0));
}

TEST_CASE("g_{2,3,0} at (3, 0, 0) worked value") {
  const MetricValue g = metric_g(CartesianPoint(3.0, 0.0, 0.0), make_knot_spec(2, 3, 0));
  const Mat3d expected{{{{1.0, 0.0, 0.0}, {0.0, 5.0 / 9.0, -7.0 / 3.0}, {0.0, -7.0 / 3.0, 10.0}}}};
  CHECK(max_abs_diff(g.g, expected) < 1e-14);
  CHECK(g.det_g == doctest::Approx(1.0 / 9.0).epsilon(1e-12));
  CHECK(g.spd());
}

TEST_CASE("det M = 1 across the family") {
  for (const KnotSpec& s : all_specs()) CHECK(det(matrix_M(s)) == doctest::Approx(1.0));
  for (int k = -20; k <= 20; ++k) {
    CHECK(det(matrix_M(make_knot_spec(3, 5, k))) == doctest::Approx(1.0));
  }
}

TEST_CASE("metric equals the pullback J^T J of the flat metric") {
  PointSampler rng(31);
  for (const KnotSpec& s : all_specs()) {
    for (int i = 0; i < 200; ++i) {
      const CartesianPoint x = rng.annulus_point();
      CHECK(max_abs_diff(metric_g(x, s).g, pullback_oracle(x, s)) <= 1e-9);
    }
  }
}

TEST_CASE("metric is symmetric positive definite with det g = 1/(r R)^2") {
  PointSampler rng(37);
  for (const KnotSpec& s : all_specs()) {
    for (int i = 0; i < 200; ++i) {
      const CartesianPoint x = rng.annulus_point();
      const MetricValue g = metric_g(x, s);
      CHECK(g.g[0][1] == g.g[1][0]);
      CHECK(g.g[0][2] == g.g[2][0]);
      CHECK(g.g[1][2] == g.g[2][1]);
      CHECK(g.spd());
      const double expected = 1.0 / (x.r() * x.r() * x.R() * x.R());
      CHECK(g.det_g == doctest::Approx(expected).epsilon(1e-6));
      const auto ev = symmetric_eigenvalues(g.g);
      CHECK(ev[0] > 0.0);
      CHECK(ev[0] * ev[1] * ev[2] == doctest::Approx(g.det_g).epsilon(1e-6));
      CHECK(g.condition_number() >= 1.0);
      CHECK(relative_matrix_gap(g.inverse() * g.g, Mat3d::identity()) < 1e-8);
    }
  }
}

TEST_CASE("the field has unit-scale metric norm from the flat model") {
  // |X|_g at x equals the Euclidean norm of B at the model point.
  PointSampler rng(41);
  for (const KnotSpec& s : all_specs()) {
    for (int i = 0; i < 50; ++i) {
      const CartesianPoint x = rng.annulus_point();
      const Vec3d X = field_X(x, s);
      const Mat3d g = metric_g(x, s).g;
      const Vec3d model = twist_inv_coords(psi_inv_coords(x.xyz()), s);
      CHECK(std::sqrt(dot(X, g * X)) ==
            doctest::Approx(norm(base_field_coords(model))).epsilon(1e-8));
    }
  }
}

TEST_CASE("symmetric eigenvalues of known matrices") {
  const auto ev = symmetric_eigenvalues(Mat3d{{{{2, 0, 0}, {0, 3, 0}, {0, 0, 1}}}});
  CHECK(ev[0] == doctest::Approx(1.0));
  CHECK(ev[1] == doctest::Approx(2.0));
  CHECK(ev[2] == doctest::Approx(3.0));
  const auto ev2 = symmetric_eigenvalues(Mat3d{{{{2, 1, 0}, {1, 2, 0}, {0, 0, 5}}}});
  CHECK(ev2[0] == doctest::Approx(1.0));
  CHECK(ev2[1] == doctest::Approx(3.0));
  CHECK(ev2[2] == doctest::Approx(5.0));
}

TEST_CASE("Christoffel symbols are symmetric and metric compatible") {
  // d_k g_ij = Gamma^l_{ki} g_lj + Gamma^l_{kj} g_il, with d_k g from
  // fourth-order central differences of the metric.
  PointSampler rng(43);
  for (const KnotSpec& s : {make_knot_spec(2, 3, 0), make_knot_spec(2, 5, -2),
                            make_knot_spec(1, 1, 2)}) {
    for (int n = 0; n < 40; ++n) {
      const CartesianPoint x = rng.annulus_point(0.05);
      const ChristoffelValue G = christoffel(x, s);
      const Mat3d g = metric_g(x, s).g;
      for (std::size_t k = 0; k < 3; ++k) {
        const double h = 1e-3;
        const auto at = [&](double off) {
          Vec3d y = x.xyz();
          y[k] += off;
          return metric_coords(y, s);
        };
        const Mat3d a = at(-2 * h), b = at(-h), c = at(h), d = at(2 * h);
        double scale = 1.0;
        for (std::size_t i = 0; i < 3; ++i) {
          for (std::size_t j = 0; j < 3; ++j) scale = std::max(scale, std::fabs(g[i][j]));
        }
        for (std::size_t i = 0; i < 3; ++i) {
          for (std::size_t j = 0; j < 3; ++j) {
            const double dg = (a[i][j] - 8 * b[i][j] + 8 * c[i][j] - d[i][j]) / (12 * h);
            double rhs = 0.0;
            for (std::size_t l = 0; l < 3; ++l) rhs += G(l, k, i) * g[l][j] + G(l, k, j) * g[i][l];
            CHECK(std::fabs(dg - rhs) <= 1e-5 * scale);
            CHECK(G(i, j, k) == G(i, k, j));
          }
        }
      }
    }
  }
}

TEST_CASE("identity metric has vanishing Christoffel symbols") {
  const ChristoffelValue G = christoffel_of(IdentityMetric{}, Vec3d{3.0, 0.2, 0.1});
  for (std::size_t i = 0; i < 3; ++i) CHECK(frobenius_norm(G.gamma[i]) == 0.0);
}

TEST_CASE("family members have pairwise distinct metrics") {
  const CartesianPoint witness(2.7, 0.4, 0.3);
  for (auto [p, q] : {std::pair{1, 1}, {2, 3}, {3, 2}, {2, 5}}) {
    for (int k1 = -2; k1 <= 2; ++k1) {
      for (int k2 = k1 + 1; k2 <= 2; ++k2) {
        const KnotSpec a = make_knot_spec(p, q, k1), b = make_knot_spec(p, q, k2);
        CHECK(max_abs_diff(matrix_M(a), matrix_M(b)) > 1e-6);
        CHECK(max_abs_diff(metric_g(witness, a).g, metric_g(witness, b).g) > 1e-6);
      }
    }
  }
}

TEST_CASE("metric evaluation outside the annulus is an error") {
  CHECK_THROWS_AS(metric_g(CartesianPoint(0.0, 0.0, 0.0), make_knot_spec(2, 3, 0)), DomainError);
  CHECK_THROWS_AS(christoffel(CartesianPoint(5.0, 0.0, 0.0), make_knot_spec(2, 3, 0)),
                  DomainError);
}
