#pragma once

// Integer data of a construction instance, the torus-knot curve, the annulus
// domain and the two diffeomorphisms of the construction:
//
//   psi   : flat model T = S^1 x S^1 x (1/2, 3/2)  ->  annulus T_A in R^3
//   twist : T -> T, the unimodular angle shear fixed by (p, q, b_k, d_k).

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>

#include "beltrami/jet.hpp"
#include "beltrami/linalg.hpp"

namespace beltrami {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Inner and outer tube radii of the annulus around the core circle r = 2.
inline constexpr double kInnerRadius = 0.5;
inline constexpr double kOuterRadius = 1.5;

/// Differential operators stay this far from the annulus boundary.
inline constexpr double kDerivativeMargin = 1e-9;
/// Grid scans stay this far from the annulus boundary.
inline constexpr double kScanMargin = 1e-3;

/// Raised when a point lies outside the open domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct BezoutPair {
  std::int64_t b0;
  std::int64_t d0;
};

/// Bezout coefficients p*b0 + q*d0 = 1 from the textbook recursive extended
/// Euclidean algorithm. Throws std::invalid_argument unless p, q >= 1 and
/// gcd(p, q) = 1.
BezoutPair ext_gcd_coeffs(std::int64_t p, std::int64_t q);

/// One member of the (p, q) family: b_k = b0 + k q, d_k = d0 - k p.
struct KnotSpec {
  int p = 1;
  int q = 1;
  int k = 0;
  std::int64_t b = 0;
  std::int64_t d = 1;

  friend bool operator==(const KnotSpec&, const KnotSpec&) = default;
};

KnotSpec make_knot_spec(int p, int q, int k);

std::string to_string(const KnotSpec& spec);

/// Representative of an angle in (-pi, pi].
double wrap_angle(double angle);

/// Smallest distance between two angles on the circle.
double angle_distance(double a, double b);

/// Point ([a], [c], t) of the flat model; angles are stored canonicalized.
class ToroidalPoint {
 public:
  /// Throws DomainError unless t lies in (1/2, 3/2).
  ToroidalPoint(double a, double c, double t);

  double a() const { return a_; }
  double c() const { return c_; }
  double t() const { return t_; }
  Vec3d coords() const { return {a_, c_, t_}; }

 private:
  double a_;
  double c_;
  double t_;
};

/// Equality modulo 2 pi in the angles, plain tolerance in t.
bool same_point(const ToroidalPoint& lhs, const ToroidalPoint& rhs, double tol = 1e-12);

/// Ambient point with cached r = sqrt(x^2 + y^2) and R = sqrt((r - 2)^2 + z^2).
class CartesianPoint {
 public:
  CartesianPoint(double x, double y, double z);
  explicit CartesianPoint(const Vec3d& xyz) : CartesianPoint(xyz[0], xyz[1], xyz[2]) {}

  double x() const { return xyz_[0]; }
  double y() const { return xyz_[1]; }
  double z() const { return xyz_[2]; }
  double r() const { return r_; }
  double R() const { return R_; }
  const Vec3d& xyz() const { return xyz_; }

 private:
  Vec3d xyz_;
  double r_;
  double R_;
};

/// 1/4 < (r - 2)^2 + z^2 < 9/4, strictly.
bool in_annulus(const CartesianPoint& pt);
bool in_annulus(const Vec3d& xyz);

/// R in (1/2 + margin, 3/2 - margin).
bool in_annulus_interior(const Vec3d& xyz, double margin);

/// Throws DomainError naming `what` when pt is not in the annulus.
void require_in_annulus(const CartesianPoint& pt, const char* what);

template <typename T>
Vec3<T> torus_knot_coords(int p, int q, const T& t) {
  using std::cos;
  using std::sin;
  const T pt = t * static_cast<double>(p);
  const T qt = t * static_cast<double>(q);
  const T radial = 2.0 + cos(pt);
  return {cos(qt) * radial, sin(qt) * radial, sin(pt)};
}

/// T_{p,q}(t) = (cos(qt)(2 + cos(pt)), sin(qt)(2 + cos(pt)), sin(pt)).
CartesianPoint torus_knot_point(int p, int q, double t);

/// psi on raw coordinates (a, c, t).
template <typename T>
Vec3<T> psi_coords(const Vec3<T>& act) {
  using std::cos;
  using std::sin;
  const T radial = 2.0 + act[2] * cos(act[1]);
  return {cos(act[0]) * radial, sin(act[0]) * radial, act[2] * sin(act[1])};
}

/// psi^{-1} on raw coordinates: (atan2(y, x), atan2(z, r - 2), R).
template <typename T>
Vec3<T> psi_inv_coords(const Vec3<T>& xyz) {
  using std::atan2;
  using std::sqrt;
  const T r = sqrt(xyz[0] * xyz[0] + xyz[1] * xyz[1]);
  const T rm2 = r - 2.0;
  const T R = sqrt(rm2 * rm2 + xyz[2] * xyz[2]);
  return {atan2(xyz[1], xyz[0]), atan2(xyz[2], rm2), R};
}

/// Angular shear ([q a - b c], [p a + d c], t) without angle reduction.
template <typename T>
Vec3<T> twist_coords(const Vec3<T>& act, const KnotSpec& s) {
  const auto b = static_cast<double>(s.b);
  const auto d = static_cast<double>(s.d);
  return {act[0] * static_cast<double>(s.q) - act[1] * b,
          act[0] * static_cast<double>(s.p) + act[1] * d, act[2]};
}

/// Integer inverse of the shear: ([d a + b c], [-p a + q c], t).
template <typename T>
Vec3<T> twist_inv_coords(const Vec3<T>& act, const KnotSpec& s) {
  const auto b = static_cast<double>(s.b);
  const auto d = static_cast<double>(s.d);
  return {act[0] * d + act[1] * b,
          act[1] * static_cast<double>(s.q) - act[0] * static_cast<double>(s.p), act[2]};
}

CartesianPoint psi(const ToroidalPoint& P);

/// Throws DomainError for points outside the annulus.
ToroidalPoint psi_inv(const CartesianPoint& pt);

ToroidalPoint twist(const ToroidalPoint& P, const KnotSpec& spec);
ToroidalPoint twist_inv(const ToroidalPoint& P, const KnotSpec& spec);

}  // namespace beltrami
