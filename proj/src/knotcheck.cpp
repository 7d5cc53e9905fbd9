#include "beltrami/knotcheck.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <stdexcept>
#include <string>

#include "beltrami/parallel.hpp"

namespace beltrami {

namespace {

// Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 5> kGaussNodes = {
    -0.9061798459386639927976269, -0.5384693101056830910363144, 0.0,
    0.5384693101056830910363144, 0.9061798459386639927976269};
constexpr std::array<double, 5> kGaussWeights = {
    0.2369268850561890875142640, 0.4786286704993664680412915, 0.5688888888888888888888889,
    0.4786286704993664680412915, 0.2369268850561890875142640};

constexpr double kStencilStep = 1e-3;

void require_coprime(int p, int q, const char* what) {
  if (p < 1 || q < 1) {
    throw std::invalid_argument(std::string(what) + ": p and q must be positive");
  }
  ext_gcd_coeffs(p, q);  // throws unless gcd(p, q) == 1
}

// Fourth-order central difference of a curve at s.
template <typename Curve>
Vec3d stencil_derivative(const Curve& curve, double s, double h) {
  return (curve(s - 2.0 * h) - curve(s + 2.0 * h) + (curve(s + h) - curve(s - h)) * 8.0) /
         (12.0 * h);
}

}  // namespace

CurvePoint knot_derivatives(int p, int q, double t) {
  Jet2 tj(Jet1::variable(t, 0));
  tj.d[0] = Jet1(1.0);
  const Vec3<Jet2> x = torus_knot_coords(p, q, tj);
  CurvePoint c;
  for (std::size_t i = 0; i < 3; ++i) {
    c.position[i] = x[i].value.value;
    c.velocity[i] = x[i].d[0].value;
    c.acceleration[i] = x[i].d[0].d[0];
  }
  return c;
}

ArcLength::ArcLength(std::function<double(double)> speed, int intervals)
    : speed_(std::move(speed)), step_(kTwoPi / intervals) {
  if (intervals < 1) throw std::invalid_argument("ArcLength: need at least one interval");
  cumulative_.resize(static_cast<std::size_t>(intervals) + 1, 0.0);
  for (int i = 0; i < intervals; ++i) {
    cumulative_[static_cast<std::size_t>(i) + 1] =
        cumulative_[static_cast<std::size_t>(i)] + segment(i * step_, (i + 1) * step_);
  }
}

double ArcLength::segment(double a, double b) const {
  const double mid = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  double s = 0.0;
  for (std::size_t i = 0; i < kGaussNodes.size(); ++i) {
    s += kGaussWeights[i] * speed_(mid + half * kGaussNodes[i]);
  }
  return s * half;
}

double ArcLength::length_at(double t) const {
  const double periods = std::floor(t / kTwoPi);
  const double local = t - periods * kTwoPi;
  const auto n = cumulative_.size() - 1;
  const auto i = std::min(n - 1, static_cast<std::size_t>(local / step_));
  return periods * total() + cumulative_[i] + segment(static_cast<double>(i) * step_, local);
}

double ArcLength::parameter_at(double s) const {
  const double periods = std::floor(s / total());
  const double local = s - periods * total();
  const auto it = std::upper_bound(cumulative_.begin(), cumulative_.end(), local);
  const auto n = cumulative_.size() - 1;
  const auto i = std::min<std::size_t>(
      n - 1, static_cast<std::size_t>(std::max<std::ptrdiff_t>(it - cumulative_.begin() - 1, 0)));
  const double lo = static_cast<double>(i) * step_;
  const double hi = lo + step_;
  const double frac = (local - cumulative_[i]) / (cumulative_[i + 1] - cumulative_[i]);
  double t = lo + frac * step_;
  for (int iter = 0; iter < 50; ++iter) {
    const double residual = cumulative_[i] + segment(lo, t) - local;
    double next = t - residual / speed_(t);
    next = std::clamp(next, lo, hi);
    const double change = std::fabs(next - t);
    t = next;
    if (change <= 1e-16 * std::max(1.0, std::fabs(t))) break;
  }
  return periods * kTwoPi + t;
}

double composite_simpson(const std::vector<double>& f, double h) {
  const std::size_t n = f.size() - 1;
  if (f.size() < 3 || n % 2 != 0) {
    throw std::invalid_argument("composite_simpson: need an even number of intervals");
  }
  double odd = 0.0;
  double even = 0.0;
  for (std::size_t i = 1; i < n; ++i) (i % 2 == 1 ? odd : even) += f[i];
  return h / 3.0 * (f.front() + f.back() + 4.0 * odd + 2.0 * even);
}

int curvature_intervals(int n_samples) {
  if (n_samples < 256) {
    throw std::invalid_argument("total curvature: n_samples must be at least 256, got " +
                                std::to_string(n_samples));
  }
  return n_samples + n_samples % 2;
}

CurveSampling knot_sampling(int p, int q, int n_samples) {
  require_coprime(p, q, "knot_sampling");
  if (n_samples < 64) {
    throw std::invalid_argument("knot_sampling: n_samples must be at least 64, got " +
                                std::to_string(n_samples));
  }
  const auto n = static_cast<std::size_t>(n_samples);
  CurveSampling out;
  out.p = p;
  out.q = q;
  out.t.resize(n);
  out.points.resize(n);
  out.speeds.resize(n);
  out.arc_length.resize(n);
  out.curvature.resize(n);
  const ArcLength arc = euclid_arc_length(p, q, n_samples);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n);
    const CurvePoint c = knot_derivatives(p, q, t);
    const double speed = norm(c.velocity);
    out.t[i] = t;
    out.points[i] = c.position;
    out.speeds[i] = speed;
    out.arc_length[i] = arc.length_at(t);
    out.curvature[i] = norm(cross(c.velocity, c.acceleration)) / (speed * speed * speed);
  }
  out.length = arc.total();
  out.closure_error = norm(torus_knot_coords(p, q, 0.0) - torus_knot_coords(p, q, kTwoPi));

  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  parallel_for(n, [&](std::size_t i) {
    for (std::size_t j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;  // adjacent across the seam
      nearest[i] = std::min(nearest[i], norm(out.points[i] - out.points[j]));
    }
  });
  out.min_separation = *std::min_element(nearest.begin(), nearest.end());
  return out;
}

ArcLength euclid_arc_length(int p, int q, int intervals) {
  return ArcLength([p, q](double t) { return norm(knot_derivatives(p, q, t).velocity); },
                   intervals);
}

double euclid_unit_speed_deviation(int p, int q, int n_checks) {
  require_coprime(p, q, "euclid_unit_speed_deviation");
  const ArcLength arc = euclid_arc_length(p, q);
  const auto curve = [&](double s) { return torus_knot_coords(p, q, arc.parameter_at(s)); };
  double worst = 0.0;
  for (int j = 0; j < n_checks; ++j) {
    const double s = arc.total() * j / n_checks;
    const double speed = norm(stencil_derivative(curve, s, kStencilStep));
    worst = std::max(worst, std::fabs(speed - 1.0));
  }
  return worst;
}

double euclid_total_curvature(int p, int q, int n_samples) {
  require_coprime(p, q, "euclid_total_curvature");
  const int n = curvature_intervals(n_samples);
  const ArcLength arc = euclid_arc_length(p, q, n);
  const double h = arc.total() / n;
  std::vector<double> kappa(static_cast<std::size_t>(n) + 1);
  for (int j = 0; j <= n; ++j) {
    const CurvePoint c = knot_derivatives(p, q, arc.parameter_at(j * h));
    const double speed = norm(c.velocity);
    kappa[static_cast<std::size_t>(j)] =
        norm(cross(c.velocity, c.acceleration)) / (speed * speed * speed);
  }
  return composite_simpson(kappa, h);
}

double geodesic_total_curvature(const KnotSpec& spec, int n_samples) {
  return geodesic_total_curvature_in(KnotMetric{spec}, spec.p, spec.q, n_samples);
}

double geodesic_total_curvature_identity(int p, int q, int n_samples) {
  require_coprime(p, q, "geodesic_total_curvature_identity");
  return geodesic_total_curvature_in(IdentityMetric{}, p, q, n_samples);
}

double geodesic_unit_speed_deviation(const KnotSpec& spec, int n_checks) {
  const KnotMetric metric{spec};
  const ArcLength arc([&](double t) { return metric_speed(metric, spec.p, spec.q, t); }, 1024);
  const auto curve = [&](double s) {
    return torus_knot_coords(spec.p, spec.q, arc.parameter_at(s));
  };
  double worst = 0.0;
  for (int j = 0; j < n_checks; ++j) {
    const double s = arc.total() * j / n_checks;
    const Vec3d v = stencil_derivative(curve, s, kStencilStep);
    const Mat3d g = metric_coords(curve(s), spec);
    worst = std::max(worst, std::fabs(std::sqrt(dot(v, g * v)) - 1.0));
  }
  return worst;
}

TamenessReport tameness_report(const KnotSpec& spec, const TamenessConfig& config) {
  TamenessReport r;
  r.spec = spec;
  r.n_samples = config.n_samples;
  const CurveSampling sampling = knot_sampling(spec.p, spec.q, config.n_samples);
  r.closure_error = sampling.closure_error;
  r.min_separation = sampling.min_separation;
  r.length = sampling.length;
  r.unit_speed_deviation = euclid_unit_speed_deviation(spec.p, spec.q);
  r.euclid_total = euclid_total_curvature(spec.p, spec.q, config.n_samples);
  r.euclid_total_doubled = euclid_total_curvature(spec.p, spec.q, 2 * config.n_samples);
  r.geodesic_total = geodesic_total_curvature(spec, config.n_samples);
  r.geodesic_total_doubled = geodesic_total_curvature(spec, 2 * config.n_samples);
  r.geodesic_unit_speed_deviation = geodesic_unit_speed_deviation(spec);

  r.closed = sampling.closed(config.closure_tol);
  r.injective = sampling.injective(config.separation_threshold);
  r.unit_speed = r.unit_speed_deviation <= config.unit_speed_tol;
  r.finite_curvature = std::isfinite(r.euclid_total) &&
                       std::fabs(r.euclid_total - r.euclid_total_doubled) <= config.convergence_tol;
  r.fenchel = r.euclid_total >= kTwoPi - config.fenchel_slack;
  r.pass = r.closed && r.injective && r.unit_speed && r.finite_curvature && r.fenchel;
  return r;
}

}  // namespace beltrami
