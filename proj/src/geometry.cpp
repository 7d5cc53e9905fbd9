#include "beltrami/geometry.hpp"

#include <numeric>
#include <sstream>
#include <tuple>

namespace beltrami {

namespace {

// Returns (g, x, y) with a x + b y = g.
std::tuple<std::int64_t, std::int64_t, std::int64_t> extended_euclid(std::int64_t a,
                                                                     std::int64_t b) {
  if (b == 0) return {a, 1, 0};
  const auto [g, x, y] = extended_euclid(b, a % b);
  return {g, y, x - (a / b) * y};
}

}  // namespace

BezoutPair ext_gcd_coeffs(std::int64_t p, std::int64_t q) {
  if (p < 1 || q < 1) {
    throw std::invalid_argument("ext_gcd_coeffs: p and q must be positive, got (" +
                                std::to_string(p) + ", " + std::to_string(q) + ")");
  }
  const auto [g, b0, d0] = extended_euclid(p, q);
  if (g != 1) {
    throw std::invalid_argument("ext_gcd_coeffs: gcd(" + std::to_string(p) + ", " +
                                std::to_string(q) + ") = " + std::to_string(g) +
                                ", expected coprime pair");
  }
  return {b0, d0};
}

KnotSpec make_knot_spec(int p, int q, int k) {
  const auto [b0, d0] = ext_gcd_coeffs(p, q);
  KnotSpec s;
  s.p = p;
  s.q = q;
  s.k = k;
  s.b = b0 + static_cast<std::int64_t>(k) * q;
  s.d = d0 - static_cast<std::int64_t>(k) * p;
  return s;
}

std::string to_string(const KnotSpec& spec) {
  std::ostringstream os;
  os << "(p=" << spec.p << ", q=" << spec.q << ", k=" << spec.k << ", b=" << spec.b
     << ", d=" << spec.d << ")";
  return os.str();
}

double wrap_angle(double angle) {
  double w = std::remainder(angle, kTwoPi);
  if (w <= -kPi) w += kTwoPi;
  return w;
}

double angle_distance(double a, double b) { return std::fabs(wrap_angle(a - b)); }

ToroidalPoint::ToroidalPoint(double a, double c, double t)
    : a_(wrap_angle(a)), c_(wrap_angle(c)), t_(t) {
  if (!(t > kInnerRadius && t < kOuterRadius)) {
    throw DomainError("ToroidalPoint: radial coordinate t = " + std::to_string(t) +
                      " outside (1/2, 3/2)");
  }
}

bool same_point(const ToroidalPoint& lhs, const ToroidalPoint& rhs, double tol) {
  return angle_distance(lhs.a(), rhs.a()) <= tol && angle_distance(lhs.c(), rhs.c()) <= tol &&
         std::fabs(lhs.t() - rhs.t()) <= tol;
}

CartesianPoint::CartesianPoint(double x, double y, double z)
    : xyz_{x, y, z}, r_(std::hypot(x, y)), R_(std::hypot(r_ - 2.0, z)) {}

bool in_annulus(const CartesianPoint& pt) {
  const double s = (pt.r() - 2.0) * (pt.r() - 2.0) + pt.z() * pt.z();
  return s > 0.25 && s < 2.25;
}

bool in_annulus(const Vec3d& xyz) { return in_annulus(CartesianPoint(xyz)); }

bool in_annulus_interior(const Vec3d& xyz, double margin) {
  const CartesianPoint pt(xyz);
  return pt.R() > kInnerRadius + margin && pt.R() < kOuterRadius - margin;
}

void require_in_annulus(const CartesianPoint& pt, const char* what) {
  if (!in_annulus(pt)) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": point (" << pt.x() << ", " << pt.y() << ", " << pt.z()
       << ") lies outside the open annulus";
    throw DomainError(os.str());
  }
}

CartesianPoint torus_knot_point(int p, int q, double t) {
  return CartesianPoint(torus_knot_coords(p, q, t));
}

CartesianPoint psi(const ToroidalPoint& P) { return CartesianPoint(psi_coords(P.coords())); }

ToroidalPoint psi_inv(const CartesianPoint& pt) {
  require_in_annulus(pt, "psi_inv");
  return {std::atan2(pt.y(), pt.x()), std::atan2(pt.z(), pt.r() - 2.0), pt.R()};
}

ToroidalPoint twist(const ToroidalPoint& P, const KnotSpec& spec) {
  const Vec3d img = twist_coords(P.coords(), spec);
  return {img[0], img[1], img[2]};
}

ToroidalPoint twist_inv(const ToroidalPoint& P, const KnotSpec& spec) {
  const Vec3d img = twist_inv_coords(P.coords(), spec);
  return {img[0], img[1], img[2]};
}

}  // namespace beltrami
