#pragma once

// Checkable tameness clauses for the torus knot T_{p,q}: closure,
// injectivity at sample resolution, unit speed after arc-length
// reparametrization, and finite total curvature (Euclidean and geodesic).

#include <cmath>
#include <cstddef>
#include <functional>
#include <vector>

#include "beltrami/geometry.hpp"
#include "beltrami/jet.hpp"
#include "beltrami/linalg.hpp"
#include "beltrami/metric.hpp"

namespace beltrami {

struct CurveSampling {
  int p = 0;
  int q = 0;
  std::vector<double> t;           // uniform in [0, 2 pi)
  std::vector<Vec3d> points;       // T_{p,q}(t_i)
  std::vector<double> speeds;      // |T'(t_i)|
  std::vector<double> arc_length;  // length of T_{p,q} over [0, t_i]
  std::vector<double> curvature;   // Euclidean curvature at t_i
  double length = 0.0;             // one full period
  double closure_error = 0.0;      // |T(0) - T(2 pi)|
  double min_separation = 0.0;     // over non-adjacent sample pairs

  bool closed(double tol = 1e-12) const { return closure_error <= tol; }
  bool injective(double threshold = 1e-6) const { return min_separation > threshold; }
};

/// Samples one period of T_{p,q}. Throws std::invalid_argument for
/// n_samples < 64 or (p, q) not a coprime pair of positive integers.
CurveSampling knot_sampling(int p, int q, int n_samples);

/// Position, first and second derivative of T_{p,q} at t.
struct CurvePoint {
  Vec3d position;
  Vec3d velocity;
  Vec3d acceleration;
};
CurvePoint knot_derivatives(int p, int q, double t);

/// Arc length s(t) of a closed curve over [0, 2 pi] for a given speed
/// function, with the inverse t(s). The length is accumulated by 5-point
/// Gauss-Legendre quadrature over `intervals` equal parameter intervals and
/// inverted by safeguarded Newton iteration.
class ArcLength {
 public:
  ArcLength(std::function<double(double)> speed, int intervals);

  double total() const { return cumulative_.back(); }
  double length_at(double t) const;
  double parameter_at(double s) const;

 private:
  double segment(double a, double b) const;

  std::function<double(double)> speed_;
  double step_;
  std::vector<double> cumulative_;
};

/// Euclidean arc length of one period of T_{p,q}.
ArcLength euclid_arc_length(int p, int q, int intervals = 1024);

/// max |d/ds T(t(s))| - 1 over n_checks uniform arc-length stations, with
/// the derivative taken by a fourth-order central stencil in s.
double euclid_unit_speed_deviation(int p, int q, int n_checks = 256);

/// Integral of |T' x T''| / |T'|^3 over one period by composite Simpson on a
/// uniform arc-length grid of n_samples intervals. Throws
/// std::invalid_argument for n_samples < 256.
double euclid_total_curvature(int p, int q, int n_samples);

/// Speed of T_{p,q} measured in the metric `metric` evaluated on the
/// Cartesian chart.
template <typename Metric>
double metric_speed(const Metric& metric, int p, int q, double t) {
  const CurvePoint c = knot_derivatives(p, q, t);
  const Mat3d g = values(metric(seed(c.position)));
  return std::sqrt(dot(c.velocity, g * c.velocity));
}

/// Covariant acceleration D_t(dGamma/dtau) of T_{p,q} reparametrized by
/// g-arc-length tau, at curve parameter t:
///   Gamma_dot  = T' / v
///   Gamma_ddot = T'' / v^2 - T' v' / v^3
///   a^i        = Gamma_ddot^i + Gamma^i_{jk} Gamma_dot^j Gamma_dot^k
/// with v = |T'|_g and v' its t-derivative from jets of the metric.
/// Returns |a|_g.
template <typename Metric>
double geodesic_curvature_at(const Metric& metric, int p, int q, double t) {
  const CurvePoint c = knot_derivatives(p, q, t);
  Vec3<Jet1> x;
  for (std::size_t i = 0; i < 3; ++i) {
    x[i] = Jet1(c.position[i]);
    x[i].d[0] = c.velocity[i];
  }
  const Mat3<Jet1> gj = metric(x);
  const Mat3d g = values(gj);
  const Mat3d dg_dt = partial(gj, 0);
  const double v = std::sqrt(dot(c.velocity, g * c.velocity));
  const double dv =
      (2.0 * dot(c.acceleration, g * c.velocity) + dot(c.velocity, dg_dt * c.velocity)) /
      (2.0 * v);
  const Vec3d gamma_dot = c.velocity / v;
  const Vec3d gamma_ddot = c.acceleration / (v * v) - c.velocity * (dv / (v * v * v));
  const ChristoffelValue chris = christoffel_of(metric, c.position);
  const Vec3d a = gamma_ddot + chris.contract(gamma_dot, gamma_dot);
  return std::sqrt(std::max(0.0, dot(a, g * a)));
}

/// Composite Simpson rule for samples f_0..f_n at spacing h; n must be even.
double composite_simpson(const std::vector<double>& f, double h);

/// Rounds n_samples up to an even interval count after checking n >= 256.
int curvature_intervals(int n_samples);

/// Total geodesic curvature of T_{p,q} in `metric`: Simpson over a uniform
/// g-arc-length grid of n_samples intervals.
template <typename Metric>
double geodesic_total_curvature_in(const Metric& metric, int p, int q, int n_samples) {
  const int n = curvature_intervals(n_samples);
  const ArcLength arc([&](double t) { return metric_speed(metric, p, q, t); }, n);
  const double h = arc.total() / n;
  std::vector<double> kappa(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    kappa[static_cast<std::size_t>(j)] =
        geodesic_curvature_at(metric, p, q, arc.parameter_at(j * h));
  }
  return composite_simpson(kappa, h);
}

/// Total geodesic curvature of T_{p,q} in g_{p,q,k}. Throws
/// std::invalid_argument for n_samples < 256.
double geodesic_total_curvature(const KnotSpec& spec, int n_samples);

/// Same, with the Euclidean metric through the identical code path.
double geodesic_total_curvature_identity(int p, int q, int n_samples);

/// max ||d/dtau T(t(tau))|_g - 1| over n_checks uniform g-arc-length stations.
double geodesic_unit_speed_deviation(const KnotSpec& spec, int n_checks = 256);

struct TamenessReport {
  KnotSpec spec;
  int n_samples = 0;
  double closure_error = 0.0;
  double min_separation = 0.0;
  double length = 0.0;
  double unit_speed_deviation = 0.0;
  double euclid_total = 0.0;
  double euclid_total_doubled = 0.0;  // at 2 n_samples
  double geodesic_total = 0.0;
  double geodesic_total_doubled = 0.0;
  double geodesic_unit_speed_deviation = 0.0;

  bool closed = false;
  bool injective = false;
  bool unit_speed = false;
  bool finite_curvature = false;  // finite and self-convergent under doubling
  bool fenchel = false;           // euclid_total >= 2 pi - 1e-6
  bool pass = false;
};

struct TamenessConfig {
  int n_samples = 1024;
  double closure_tol = 1e-12;
  double separation_threshold = 1e-6;
  double unit_speed_tol = 1e-8;
  double convergence_tol = 1e-3;
  double fenchel_slack = 1e-6;
};

/// Every clause for one spec. Acceptance binds the Euclidean total; the
/// geodesic total is reported alongside.
TamenessReport tameness_report(const KnotSpec& spec, const TamenessConfig& config = {});

}  // namespace beltrami
