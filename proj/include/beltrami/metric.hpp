#pragma once

// The metrics g_{p,q,k} = D^T M_{p,q,k} D on the annulus, their pullback
// oracle and Levi-Civita Christoffel symbols.

#include <array>
#include <cmath>
#include <cstddef>

#include "beltrami/calculus.hpp"
#include "beltrami/geometry.hpp"
#include "beltrami/jet.hpp"
#include "beltrami/linalg.hpp"

namespace beltrami {

/// [[d^2 + p^2, d b - p q, 0], [d b - p q, b^2 + q^2, 0], [0, 0, 1]].
Mat3d matrix_M(const KnotSpec& spec);

/// Rows are the gradients of the model coordinates a, c and t = R.
template <typename T>
Mat3<T> matrix_D_coords(const Vec3<T>& xyz) {
  using std::sqrt;
  const T& x = xyz[0];
  const T& y = xyz[1];
  const T& z = xyz[2];
  const T r2 = x * x + y * y;
  const T r = sqrt(r2);
  const T rm2 = r - 2.0;
  const T R2 = rm2 * rm2 + z * z;
  const T R = sqrt(R2);
  const T rR2 = r * R2;
  const T rR = r * R;
  Mat3<T> D;
  D[0] = {-y / r2, x / r2, T(0.0)};
  D[1] = {-(x * z) / rR2, -(z * y) / rR2, rm2 / R2};
  D[2] = {x * rm2 / rR, y * rm2 / rR, z / R};
  return D;
}

Mat3d matrix_D(const CartesianPoint& pt);

/// D^T M D, symmetrized entrywise so that g_ij == g_ji exactly.
template <typename T>
Mat3<T> metric_coords(const Vec3<T>& xyz, const KnotSpec& spec) {
  const Mat3d M = matrix_M(spec);
  const Mat3<T> D = matrix_D_coords(xyz);
  Mat3<T> g;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = i; j < 3; ++j) {
      T s(0.0);
      for (std::size_t a = 0; a < 3; ++a) {
        for (std::size_t b = 0; b < 3; ++b) {
          if (M[a][b] != 0.0) s += D[a][i] * M[a][b] * D[b][j];
        }
      }
      g[i][j] = s;
      g[j][i] = s;
    }
  }
  return g;
}

/// Metric callable for curl_g / div_g / christoffel_of.
struct KnotMetric {
  KnotSpec spec;
  template <typename T>
  Mat3<T> operator()(const Vec3<T>& xyz) const {
    return metric_coords(xyz, spec);
  }
  /// sqrt(det g) = |det D| sqrt(det M), with det M = (p b + q d)^2 = 1.
  template <typename T>
  T volume_density(const Vec3<T>& xyz) const {
    const T det_d = det(matrix_D_coords(xyz));
    const auto bezout = static_cast<double>(spec.p * spec.b + spec.q * spec.d);
    return det_d < 0.0 ? -det_d * std::fabs(bezout) : det_d * std::fabs(bezout);
  }
};

/// Euclidean metric in whatever chart it is evaluated.
struct IdentityMetric {
  template <typename T>
  Mat3<T> operator()(const Vec3<T>&) const {
    return Mat3<T>::identity();
  }
};

struct MetricValue {
  Mat3d g;
  double det_g = 0.0;

  /// Adjugate over determinant.
  Mat3d inverse() const { return beltrami::inverse(g); }
  std::array<double, 3> minors() const { return leading_minors(g); }
  bool spd() const { return is_spd(g); }
  /// Ratio of extreme eigenvalues.
  double condition_number() const;
};

MetricValue metric_g(const CartesianPoint& pt, const KnotSpec& spec);

/// J^T J with J the jet Jacobian of twist^{-1} o psi^{-1} at pt.
Mat3d pullback_oracle(const CartesianPoint& pt, const KnotSpec& spec);

/// Eigenvalues of a symmetric 3x3 matrix in ascending order.
std::array<double, 3> symmetric_eigenvalues(const Mat3d& a);

struct ChristoffelValue {
  /// gamma[i][j][k] = Gamma^i_{jk}.
  std::array<Mat3d, 3> gamma{};

  double operator()(std::size_t i, std::size_t j, std::size_t k) const { return gamma[i][j][k]; }

  /// Gamma^i_{jk} u^j v^k.
  Vec3d contract(const Vec3d& u, const Vec3d& v) const {
    Vec3d out;
    for (std::size_t i = 0; i < 3; ++i) out[i] = dot(u, gamma[i] * v);
    return out;
  }
};

/// Gamma^i_{jk} = g^{il} (d_j g_lk + d_k g_lj - d_l g_jk) / 2 with the metric
/// derivatives taken from jets of `metric`.
template <typename Metric>
ChristoffelValue christoffel_of(Metric&& metric, const Vec3d& at,
                                const Domain& domain = annulus_domain()) {
  require_in_domain(domain, at, "christoffel");
  const Mat3<Jet1> g = metric(seed(at));
  const Mat3d g0 = values(g);
  require_spd(g0, "christoffel");
  const Mat3d ginv = inverse(g0);
  const std::array<Mat3d, 3> dg = {partial(g, 0), partial(g, 1), partial(g, 2)};

  // First kind: lowered[l][j][k] = (d_j g_lk + d_k g_lj - d_l g_jk) / 2.
  std::array<Mat3d, 3> lowered{};
  for (std::size_t l = 0; l < 3; ++l) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = j; k < 3; ++k) {
        const double v = 0.5 * (dg[j][l][k] + dg[k][l][j] - dg[l][j][k]);
        lowered[l][j][k] = v;
        lowered[l][k][j] = v;
      }
    }
  }
  ChristoffelValue out;
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < 3; ++j) {
      for (std::size_t k = j; k < 3; ++k) {
        double s = 0.0;
        for (std::size_t l = 0; l < 3; ++l) s += ginv[i][l] * lowered[l][j][k];
        out.gamma[i][j][k] = s;
        out.gamma[i][k][j] = s;
      }
    }
  }
  return out;
}

ChristoffelValue christoffel(const CartesianPoint& pt, const KnotSpec& spec);

}  // namespace beltrami
