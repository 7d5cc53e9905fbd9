#include "beltrami/calculus.hpp"

namespace beltrami {

Domain annulus_domain() {
  return {"annulus", [](const Vec3d& xyz) { return in_annulus_interior(xyz, kDerivativeMargin); }};
}

Domain flat_model_domain() {
  return {"flat model", [](const Vec3d& xyz) {
            return xyz[2] > kInnerRadius + kDerivativeMargin &&
                   xyz[2] < kOuterRadius - kDerivativeMargin;
          }};
}

void require_in_domain(const Domain& domain, const Vec3d& at, const char* what) {
  if (!domain.contains(at)) {
    std::ostringstream os;
    os.precision(17);
    os << what << ": point " << at << " is not inside the " << domain.name
       << " domain (margin " << kDerivativeMargin << ")";
    throw DomainError(os.str());
  }
}

std::array<double, 3> leading_minors(const Mat3d& g) {
  return {g[0][0], g[0][0] * g[1][1] - g[0][1] * g[1][0], det(g)};
}

bool is_spd(const Mat3d& g) {
  for (std::size_t i = 0; i < 3; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      if (g[i][j] != g[j][i]) return false;
    }
  }
  const auto minors = leading_minors(g);
  return minors[0] > 0.0 && minors[1] > 0.0 && minors[2] > 0.0;
}

void require_spd(const Mat3d& g, const char* what) {
  if (!is_spd(g)) {
    throw DomainError(std::string(what) + ": metric is not symmetric positive definite");
  }
}

double fd_derivative_oracle(const std::function<double(const Vec3d&)>& scalar, const Vec3d& at,
                            std::size_t direction, double h, const Domain& domain) {
  Vec3d plus = at;
  Vec3d minus = at;
  plus[direction] += h;
  minus[direction] -= h;
  require_in_domain(domain, plus, "fd_derivative_oracle");
  require_in_domain(domain, minus, "fd_derivative_oracle");
  return (scalar(plus) - scalar(minus)) / (2.0 * h);
}

namespace {

const KnotSpec& need_spec(const std::optional<KnotSpec>& spec) {
  if (!spec) throw std::invalid_argument("jacobian_of_map: twist maps need a KnotSpec");
  return *spec;
}

void require_model_point(const Vec3d& act) {
  if (!(act[2] > kInnerRadius && act[2] < kOuterRadius)) {
    throw DomainError("jacobian_of_map: radial coordinate outside (1/2, 3/2)");
  }
}

}  // namespace

Mat3d jacobian_of_map(CoordinateMap map, const Vec3d& at, const std::optional<KnotSpec>& spec) {
  switch (map) {
    case CoordinateMap::psi:
      require_model_point(at);
      return jacobian_at([](const auto& v) { return psi_coords(v); }, at);
    case CoordinateMap::psi_inverse:
      require_in_annulus(CartesianPoint(at), "jacobian_of_map");
      return jacobian_at([](const auto& v) { return psi_inv_coords(v); }, at);
    case CoordinateMap::twist: {
      require_model_point(at);
      const KnotSpec& s = need_spec(spec);
      return jacobian_at([&s](const auto& v) { return twist_coords(v, s); }, at);
    }
    case CoordinateMap::twist_inverse: {
      require_model_point(at);
      const KnotSpec& s = need_spec(spec);
      return jacobian_at([&s](const auto& v) { return twist_inv_coords(v, s); }, at);
    }
    case CoordinateMap::psi_twist: {
      require_model_point(at);
      const KnotSpec& s = need_spec(spec);
      return jacobian_at([&s](const auto& v) { return psi_coords(twist_coords(v, s)); }, at);
    }
    case CoordinateMap::psi_twist_inverse: {
      require_in_annulus(CartesianPoint(at), "jacobian_of_map");
      const KnotSpec& s = need_spec(spec);
      return jacobian_at([&s](const auto& v) { return twist_inv_coords(psi_inv_coords(v), s); },
                         at);
    }
  }
  throw std::invalid_argument("jacobian_of_map: unknown map");
}

}  // namespace beltrami
