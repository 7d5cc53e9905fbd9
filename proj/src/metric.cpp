#include "beltrami/metric.hpp"

#include <algorithm>

namespace beltrami {

Mat3d matrix_M(const KnotSpec& s) {
  const auto p = static_cast<double>(s.p);
  const auto q = static_cast<double>(s.q);
  const auto b = static_cast<double>(s.b);
  const auto d = static_cast<double>(s.d);
  Mat3d M;
  M[0] = {d * d + p * p, d * b - p * q, 0.0};
  M[1] = {d * b - p * q, b * b + q * q, 0.0};
  M[2] = {0.0, 0.0, 1.0};
  return M;
}

Mat3d matrix_D(const CartesianPoint& pt) {
  require_in_annulus(pt, "matrix_D");
  return matrix_D_coords(pt.xyz());
}

MetricValue metric_g(const CartesianPoint& pt, const KnotSpec& spec) {
  require_in_annulus(pt, "metric_g");
  MetricValue v;
  v.g = metric_coords(pt.xyz(), spec);
  v.det_g = det(v.g);
  return v;
}

double MetricValue::condition_number() const {
  const auto ev = symmetric_eigenvalues(g);
  return ev[2] / ev[0];
}

Mat3d pullback_oracle(const CartesianPoint& pt, const KnotSpec& spec) {
  const Mat3d J = jacobian_of_map(CoordinateMap::psi_twist_inverse, pt.xyz(), spec);
  return transpose(J) * J;
}

std::array<double, 3> symmetric_eigenvalues(const Mat3d& a) {
  // Trigonometric solution of the characteristic cubic.
  const double p1 = a[0][1] * a[0][1] + a[0][2] * a[0][2] + a[1][2] * a[1][2];
  const double tr = a[0][0] + a[1][1] + a[2][2];
  if (p1 == 0.0) {
    std::array<double, 3> ev = {a[0][0], a[1][1], a[2][2]};
    std::sort(ev.begin(), ev.end());
    return ev;
  }
  const double m = tr / 3.0;
  const double p2 = (a[0][0] - m) * (a[0][0] - m) + (a[1][1] - m) * (a[1][1] - m) +
                    (a[2][2] - m) * (a[2][2] - m) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  Mat3d b = a;
  for (std::size_t i = 0; i < 3; ++i) b[i][i] -= m;
  for (auto& row : b.m) {
    for (auto& e : row) e /= p;
  }
  const double half_det = std::clamp(det(b) / 2.0, -1.0, 1.0);
  const double phi = std::acos(half_det) / 3.0;
  const double hi = m + 2.0 * p * std::cos(phi);
  const double lo = m + 2.0 * p * std::cos(phi + 2.0 * kPi / 3.0);
  return {lo, tr - hi - lo, hi};
}

ChristoffelValue christoffel(const CartesianPoint& pt, const KnotSpec& spec) {
  return christoffel_of(KnotMetric{spec}, pt.xyz());
}

}  // namespace beltrami
