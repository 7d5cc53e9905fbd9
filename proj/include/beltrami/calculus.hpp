#pragma once

// Metric-aware curl and divergence in a single coordinate chart, evaluated
// with forward-mode jets, plus finite-difference and Jacobian helpers.
//
// With W_k = g_kl X^l and sqrt|g| = sqrt(det g):
//
//   (curl X)^i = eps^{ijk} d_j W_k / sqrt|g|,   eps^{123} = +1
//   div X      = d_i(sqrt|g| X^i) / sqrt|g|

#include <cmath>
#include <concepts>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>

#include "beltrami/geometry.hpp"
#include "beltrami/jet.hpp"
#include "beltrami/linalg.hpp"

namespace beltrami {

/// Open coordinate region on which derivatives may be taken.
struct Domain {
  std::string name;
  std::function<bool(const Vec3d&)> contains;
};

/// Annulus with R in (1/2 + 1e-9, 3/2 - 1e-9).
Domain annulus_domain();

/// Flat model chart (x, y, z) with z in (1/2 + 1e-9, 3/2 - 1e-9); the
/// angular coordinates are unrestricted.
Domain flat_model_domain();

void require_in_domain(const Domain& domain, const Vec3d& at, const char* what);

/// Leading principal minors of a symmetric matrix.
std::array<double, 3> leading_minors(const Mat3d& g);
bool is_spd(const Mat3d& g);

/// Throws DomainError unless g is positive definite.
void require_spd(const Mat3d& g, const char* what);

/// Metrics may supply their Riemannian volume density sqrt(det g) directly
/// when they know it in a better-conditioned form than the 3x3 determinant.
template <typename Metric>
concept HasVolumeDensity = requires(const Metric& m, const Vec3<Jet1>& x) {
  { m.volume_density(x) } -> std::convertible_to<Jet1>;
};

template <typename Metric>
Jet1 volume_density(const Metric& metric, const Vec3<Jet1>& x, const Mat3<Jet1>& g) {
  if constexpr (HasVolumeDensity<std::remove_cvref_t<Metric>>) {
    return metric.volume_density(x);
  } else {
    return sqrt(det(g));
  }
}

namespace detail {

// Levi-Civita contraction eps^{ijk} d_j W_k, i.e. the coordinate curl of W.
inline Vec3d coordinate_curl(const Vec3<Jet1>& w) {
  return {w[2].d[1] - w[1].d[2], w[0].d[2] - w[2].d[0], w[1].d[0] - w[0].d[1]};
}

}  // namespace detail

/// Curl of a vector field with respect to `metric`. Both callables take a
/// Vec3<Jet1> of seeded coordinates; the field returns Vec3<Jet1> and the
/// metric Mat3<Jet1>. `orientation` selects eps^{123} = +1 or -1.
template <typename Field, typename Metric>
Vec3d curl_g(Field&& field, Metric&& metric, const Vec3d& at,
             const Domain& domain = annulus_domain(), int orientation = +1) {
  require_in_domain(domain, at, "curl_g");
  const Vec3<Jet1> x = seed(at);
  const Vec3<Jet1> X = field(x);
  const Mat3<Jet1> g = metric(x);
  const Mat3d g0 = values(g);
  require_spd(g0, "curl_g");

  Vec3<Jet1> lowered;
  for (std::size_t k = 0; k < 3; ++k) {
    lowered[k] = g[k][0] * X[0] + g[k][1] * X[1] + g[k][2] * X[2];
  }
  const double scale =
      static_cast<double>(orientation) / volume_density(metric, x, g).value;
  return detail::coordinate_curl(lowered) * scale;
}

template <typename Field, typename Metric>
double div_g(Field&& field, Metric&& metric, const Vec3d& at,
             const Domain& domain = annulus_domain()) {
  require_in_domain(domain, at, "div_g");
  const Vec3<Jet1> x = seed(at);
  const Vec3<Jet1> X = field(x);
  const Mat3<Jet1> g = metric(x);
  require_spd(values(g), "div_g");

  const Jet1 vol = volume_density(metric, x, g);
  double flux = 0.0;
  for (std::size_t i = 0; i < 3; ++i) flux += (vol * X[i]).d[i];
  return flux / vol.value;
}

/// Central difference with step h along coordinate `direction`; both stencil
/// points must lie in `domain`.
double fd_derivative_oracle(const std::function<double(const Vec3d&)>& scalar, const Vec3d& at,
                            std::size_t direction, double h = 1e-5,
                            const Domain& domain = annulus_domain());

/// Jacobian of any map written against Vec3<T> with T = Jet1.
template <typename Map>
Mat3d jacobian_at(Map&& map, const Vec3d& at) {
  return jacobian(map(seed(at)));
}

enum class CoordinateMap {
  psi,                 // T -> T_A
  psi_inverse,         // T_A -> T
  twist,               // T -> T
  twist_inverse,       // T -> T
  psi_twist,           // psi o twist : T -> T_A
  psi_twist_inverse,   // (psi o twist)^{-1} : T_A -> T
};

/// Entry (i, j) = d(component i)/d(coordinate j) of the named map at `at`,
/// where `at` is (a, c, t) for maps out of T and (x, y, z) for maps out of
/// T_A. The twist maps need `spec`.
Mat3d jacobian_of_map(CoordinateMap map, const Vec3d& at,
                      const std::optional<KnotSpec>& spec = std::nullopt);

}  // namespace beltrami
