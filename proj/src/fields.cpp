#include "beltrami/fields.hpp"

#include <algorithm>
#include <string>

#include "beltrami/calculus.hpp"

namespace beltrami {

Vector3 base_field_B(const ToroidalPoint& P) { return base_field_coords(P.coords()); }

std::pair<double, double> multiple_angle_eval(int q, double cos_c, double sin_c) {
  if (q < 1) {
    throw std::invalid_argument("multiple_angle_eval: multiplier must be positive, got " +
                                std::to_string(q));
  }
  if (std::fabs(cos_c * cos_c + sin_c * sin_c - 1.0) > 1e-12) {
    throw std::invalid_argument("multiple_angle_eval: (cos, sin) pair is not normalized");
  }
  return multiple_angle(q, cos_c, sin_c);
}

Vector3 components_X(const ToroidalPoint& P, const KnotSpec& spec) {
  const double pa = spec.p * P.a();
  const double qc = spec.q * P.c();
  return components_from_trig(P.t(), std::cos(pa), std::sin(pa), std::cos(qc),
                              std::sin(qc));
}

FrameTriple frames(const CartesianPoint& pt) {
  require_in_annulus(pt, "frames");
  return frames_coords(pt.xyz());
}

Vector3 field_X(const CartesianPoint& pt, const KnotSpec& spec, AngleEval mode) {
  require_in_annulus(pt, "field_X");
  return field_X_coords(pt.xyz(), spec, mode);
}

Vector3 trefoil_components(const CartesianPoint& pt) {
  require_in_annulus(pt, "trefoil_components");
  return trefoil_components_coords(pt.xyz());
}

Vector3 trefoil_field(const CartesianPoint& pt, const KnotSpec& spec) {
  if (spec.p != 2 || spec.q != 3) {
    throw std::invalid_argument("trefoil_field: requires (p, q) = (2, 3), got " +
                                to_string(spec));
  }
  return assemble_field(trefoil_components(pt), frames_coords(pt.xyz()), spec);
}

Vector3 pushforward_oracle(const CartesianPoint& pt, const KnotSpec& spec) {
  const ToroidalPoint model = twist_inv(psi_inv(pt), spec);
  const Mat3d J = jacobian_of_map(CoordinateMap::psi_twist, model.coords(), spec);
  return J * base_field_B(model);
}

double relative_residual(const Vector3& a, const Vector3& b) {
  return norm(a - b) / std::max(norm(b), 1e-8);
}

}  // namespace beltrami
