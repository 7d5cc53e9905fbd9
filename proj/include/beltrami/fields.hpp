#pragma once

// The curl eigenfield B of the flat model and the closed-form fields
// X_{p,q,k} = (psi o twist)_* B on the annulus.

#include <cmath>
#include <stdexcept>
#include <utility>

#include "beltrami/geometry.hpp"
#include "beltrami/jet.hpp"
#include "beltrami/linalg.hpp"

namespace beltrami {

using Vector3 = Vec3d;

/// B(x, y, z) = (cos(z - 1) - cos(y), sin(1 - z), -sin(y)) on raw model
/// coordinates. Vanishes exactly on {y = 0, z = 1}.
template <typename T>
Vec3<T> base_field_coords(const Vec3<T>& xyz) {
  using std::cos;
  using std::sin;
  return {cos(xyz[2] - 1.0) - cos(xyz[1]), sin(1.0 - xyz[2]), -sin(xyz[1])};
}

Vector3 base_field_B(const ToroidalPoint& P);

/// (cos(n c), sin(n c)) from (cos c, sin c) by the Chebyshev three-term
/// recurrence; no branch cut is involved.
template <typename T>
std::pair<T, T> multiple_angle(int n, const T& cos_c, const T& sin_c) {
  T cos_prev(1.0);
  T sin_prev(0.0);
  T cos_cur = cos_c;
  T sin_cur = sin_c;
  if (n == 0) return {cos_prev, sin_prev};
  const T two_cos = cos_c * 2.0;
  for (int m = 1; m < n; ++m) {
    T cos_next = two_cos * cos_cur - cos_prev;
    T sin_next = two_cos * sin_cur - sin_prev;
    cos_prev = cos_cur;
    sin_prev = sin_cur;
    cos_cur = cos_next;
    sin_cur = sin_next;
  }
  return {cos_cur, sin_cur};
}

/// Checked entry point: rejects q < 1 and pairs off the unit circle by more
/// than 1e-12.
std::pair<double, double> multiple_angle_eval(int q, double cos_c, double sin_c);

enum class AngleEval {
  recurrence,  // Chebyshev recurrence on the Cartesian cos/sin expressions
  direct,      // trig of the atan2 angles
};

/// The scalars (X1, X2, X3) for angles (a, c) and radial value R:
///   X1 = cos(R - 1) - cos(qc - pa),  X2 = sin(1 - R),  X3 = -sin(qc - pa)
/// expanded through the angle-sum identities.
template <typename T>
Vec3<T> components_from_trig(const T& R, const T& cos_pa, const T& sin_pa,
                             const T& cos_qc, const T& sin_qc) {
  using std::cos;
  using std::sin;
  return {cos(R - 1.0) - (cos_qc * cos_pa + sin_qc * sin_pa), sin(1.0 - R),
          cos_qc * sin_pa - sin_qc * cos_pa};
}

/// Pushforward of the model coordinate basis under psi, written in
/// Cartesian coordinates.
template <typename T>
struct FrameTripleT {
  Vec3<T> e_a;
  Vec3<T> e_c;
  Vec3<T> e_t;
};

using FrameTriple = FrameTripleT<double>;

template <typename T>
FrameTripleT<T> frames_coords(const Vec3<T>& xyz) {
  using std::sqrt;
  const T& x = xyz[0];
  const T& y = xyz[1];
  const T& z = xyz[2];
  const T r = sqrt(x * x + y * y);
  const T rm2 = r - 2.0;
  const T R = sqrt(rm2 * rm2 + z * z);
  const T rR = r * R;
  return {{-y, x, T(0.0)}, {-(z * x) / r, -(z * y) / r, rm2}, {x * rm2 / rR, y * rm2 / rR, z / R}};
}

FrameTriple frames(const CartesianPoint& pt);

/// Combines (X1, X2, X3) with the frames:
///   X = (q X1 - b X2) e_a + (p X1 + d X2) e_c + X3 e_t.
template <typename T>
Vec3<T> assemble_field(const Vec3<T>& comps, const FrameTripleT<T>& f, const KnotSpec& s) {
  const T along_a =
      comps[0] * static_cast<double>(s.q) - comps[1] * static_cast<double>(s.b);
  const T along_c =
      comps[0] * static_cast<double>(s.p) + comps[1] * static_cast<double>(s.d);
  Vec3<T> out;
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = along_a * f.e_a[i] + along_c * f.e_c[i] + comps[2] * f.e_t[i];
  }
  return out;
}

/// (X1, X2, X3) at a Cartesian point.
template <typename T>
Vec3<T> components_coords(const Vec3<T>& xyz, int p, int q,
                          AngleEval mode = AngleEval::recurrence) {
  using std::atan2;
  using std::cos;
  using std::sin;
  using std::sqrt;
  const T& x = xyz[0];
  const T& y = xyz[1];
  const T& z = xyz[2];
  const T r = sqrt(x * x + y * y);
  const T rm2 = r - 2.0;
  const T R = sqrt(rm2 * rm2 + z * z);
  if (mode == AngleEval::direct) {
    const T a = atan2(y, x);
    const T c = atan2(z, rm2);
    const T pa = a * static_cast<double>(p);
    const T qc = c * static_cast<double>(q);
    return components_from_trig(R, cos(pa), sin(pa), cos(qc), sin(qc));
  }
  const auto [cos_pa, sin_pa] = multiple_angle(p, x / r, y / r);
  const auto [cos_qc, sin_qc] = multiple_angle(q, rm2 / R, z / R);
  return components_from_trig(R, cos_pa, sin_pa, cos_qc, sin_qc);
}

/// Closed-form X_{p,q,k} on raw Cartesian coordinates (no domain check).
template <typename T>
Vec3<T> field_X_coords(const Vec3<T>& xyz, const KnotSpec& spec,
                       AngleEval mode = AngleEval::recurrence) {
  return assemble_field(components_coords(xyz, spec.p, spec.q, mode), frames_coords(xyz), spec);
}

/// (X1, X2, X3) read off a model point: a, c and R = t taken from P.
Vector3 components_X(const ToroidalPoint& P, const KnotSpec& spec);

/// X_{p,q,k}(pt); throws DomainError outside the annulus.
Vector3 field_X(const CartesianPoint& pt, const KnotSpec& spec,
                AngleEval mode = AngleEval::recurrence);

/// Rational-trigonometric closed forms of (X1, X2, X3) for (p, q) = (2, 3).
template <typename T>
Vec3<T> trefoil_components_coords(const Vec3<T>& xyz) {
  using std::cos;
  using std::sin;
  using std::sqrt;
  const T& x = xyz[0];
  const T& y = xyz[1];
  const T& z = xyz[2];
  const T r2 = x * x + y * y;
  const T r = sqrt(r2);
  const T rm2 = r - 2.0;
  const T R = sqrt(rm2 * rm2 + z * z);
  const T R2 = R * R;
  const T R3 = R2 * R;
  const T c2 = rm2 * rm2 / R2;  // cos^2 c
  const T s2 = z * z / R2;      // sin^2 c
  const T y2 = y * y / r2;      // sin^2 a

  const T x1 = cos(R - 1.0) + 3.0 * x * x * z * z * rm2 / (r2 * R3) +
               rm2 / R * (y2 * (2.0 - 5.0 * s2) - c2) -
               2.0 * x * y * z / (r2 * R) * (4.0 * c2 - 1.0);
  const T x2 = sin(1.0 - R);
  const T x3 = x * x * z * z * z / (r2 * R3) + z / R * (y2 * (7.0 * c2 - 1.0) - 3.0 * c2) +
               2.0 * x * y * rm2 / (r2 * R) * (1.0 - 4.0 * s2);
  return {x1, x2, x3};
}

/// Throws DomainError outside the annulus.
Vector3 trefoil_components(const CartesianPoint& pt);

/// X_{2,3,k} rebuilt from the trefoil closed forms; spec must have (p, q) = (2, 3).
Vector3 trefoil_field(const CartesianPoint& pt, const KnotSpec& spec);

/// Independent evaluation of X_{p,q,k}: pulls pt back to the model through
/// twist^{-1} o psi^{-1}, evaluates B there, and pushes B forward with the
/// jet Jacobian of psi o twist.
Vector3 pushforward_oracle(const CartesianPoint& pt, const KnotSpec& spec);

/// Relative residual |a - b| / max(|b|, 1e-8).
double relative_residual(const Vector3& a, const Vector3& b);

}  // namespace beltrami
