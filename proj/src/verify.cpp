#include "beltrami/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "beltrami/calculus.hpp"
#include "beltrami/fields.hpp"
#include "beltrami/metric.hpp"
#include "beltrami/parallel.hpp"
#include "beltrami/sampling.hpp"

namespace beltrami {

namespace {

// Builds a check from per-point residuals compared against `tolerance`.
Check max_check(std::string name, const std::vector<double>& residuals, double tolerance) {
  Check c;
  c.name = std::move(name);
  c.max_residual = residuals.empty() ? 0.0 : *std::max_element(residuals.begin(), residuals.end());
  c.tolerance = tolerance;
  c.n_samples = residuals.size();
  c.pass = std::all_of(residuals.begin(), residuals.end(),
                       [&](double r) { return std::isfinite(r) && r <= tolerance; });
  return c;
}

std::string delta_label(double delta) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", delta);
  return buf;
}

}  // namespace

bool SpecReport::pass() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::vector<Vec3d> sample_points(std::uint64_t seed, int n) {
  PointSampler sampler(seed);
  std::vector<Vec3d> points;
  points.reserve(static_cast<std::size_t>(std::max(n, 0)));
  for (int i = 0; i < n; ++i) points.push_back(sampler.annulus_point().xyz());
  return points;
}

SpecReport verify_spec(const KnotSpec& spec, const VerifyConfig& config) {
  const std::vector<Vec3d> points = sample_points(config.seed, config.n_points);
  const std::size_t n = points.size();
  const KnotMetric metric{spec};
  const auto field = [&](const Vec3<Jet1>& x) { return field_X_coords(x, spec); };

  std::vector<double> curl(n), div(n), spd(n), pullback(n), pushforward(n), trefoil(n);
  const bool is_trefoil = spec.p == 2 && spec.q == 3;
  parallel_for(
      n,
      [&](std::size_t i) {
        const Vec3d& x = points[i];
        const CartesianPoint pt(x);
        const Vec3d X = field_X_coords(x, spec);
        curl[i] = relative_residual(curl_g(field, metric, x), X);
        div[i] = std::fabs(div_g(field, metric, x));
        const MetricValue g = metric_g(pt, spec);
        const auto minors = g.minors();
        spd[i] = std::max(0.0, -*std::min_element(minors.begin(), minors.end()));
        if (!g.spd()) spd[i] = std::max(spd[i], 1.0);
        pullback[i] = max_abs_diff(g.g, pullback_oracle(pt, spec));
        pushforward[i] = max_abs_diff(X, pushforward_oracle(pt, spec));
        if (is_trefoil) {
          trefoil[i] = max_abs_diff(trefoil_components(pt),
                                    components_coords(x, spec.p, spec.q, AngleEval::direct));
        }
      },
      config.threads);

  SpecReport report;
  report.spec = spec;
  report.checks.push_back(max_check("beltrami_identity", curl, config.tol_curl));
  report.checks.push_back(max_check("divergence_free", div, config.tol_div));
  report.checks.push_back(max_check("metric_spd", spd, 0.0));
  report.checks.push_back(max_check("metric_pullback", pullback, config.tol_pullback));
  report.checks.push_back(max_check("field_pushforward", pushforward, config.tol_pushforward));
  if (is_trefoil) report.checks.push_back(max_check("trefoil_closed_form", trefoil, config.tol_trefoil));
  if (config.zero_set) {
    CertifyConfig certify = config.certify;
    certify.threads = config.threads;
    for (Check& c : zero_set_checks(certify_zero_set(spec, certify))) {
      report.checks.push_back(std::move(c));
    }
  }
  return report;
}

std::vector<Check> zero_set_checks(const ZeroSetReport& r) {
  std::vector<Check> checks;
  checks.push_back({"zero_set_forward", r.forward_pass, r.forward_max_residual,
                    r.config.tol_forward, static_cast<std::size_t>(r.config.knot_samples)});
  checks.push_back({"zero_set_reverse", r.reverse_pass, r.max_knot_distance,
                    r.config.tol_reverse, r.converged});
  for (const OffKnotFloor& f : r.floors) {
    // Here the reported value is the floor m(delta) itself, which must be
    // strictly positive.
    checks.push_back({"zero_set_floor_delta_" + delta_label(f.delta), f.found && f.min_norm > 0.0,
                      f.min_norm, 0.0, r.grid_points});
  }
  const double gap_tol = 4.0 * kPi / 256.0;
  checks.push_back({"zero_set_coverage", !r.degenerate && r.max_parameter_gap <= gap_tol,
                    r.max_parameter_gap, gap_tol, r.candidates.size()});
  return checks;
}

nlohmann::ordered_json to_json(const KnotSpec& spec) {
  return {{"p", spec.p}, {"q", spec.q}, {"k", spec.k}, {"b", spec.b}, {"d", spec.d}};
}

nlohmann::ordered_json to_json(const Check& c) {
  return {{"name", c.name},
          {"pass", c.pass},
          {"max_residual", c.max_residual},
          {"tolerance", c.tolerance},
          {"n_samples", c.n_samples}};
}

nlohmann::ordered_json to_json(const ZeroSetReport& r) {
  nlohmann::ordered_json j;
  j["spec"] = to_json(r.spec);
  j["pass"] = r.pass;
  j["degenerate"] = r.degenerate;
  j["resolution"] = r.config.resolution;
  j["grid_points"] = r.grid_points;
  j["median_norm_g"] = r.median_norm;
  j["threshold"] = r.threshold;
  j["candidates"] = r.candidates.size();
  j["converged"] = r.converged;
  j["stalled"] = r.stalled;
  j["max_iterations"] = r.max_iterations;
  j["left_domain"] = r.left_domain;
  j["forward"] = {{"pass", r.forward_pass},
                  {"max_residual", r.forward_max_residual},
                  {"tolerance", r.config.tol_forward},
                  {"n_samples", r.config.knot_samples}};
  nlohmann::ordered_json reverse = {{"pass", r.reverse_pass},
                                    {"max_knot_distance", r.max_knot_distance},
                                    {"tolerance", r.config.tol_reverse}};
  reverse["offenders"] = nlohmann::ordered_json::array();
  for (const ZeroCandidate& c : r.reverse_offenders) {
    reverse["offenders"].push_back(
        {{"x", c.point.x()}, {"y", c.point.y()}, {"z", c.point.z()}, {"distance", c.knot_distance}});
  }
  j["reverse"] = reverse;
  j["floors"] = nlohmann::ordered_json::array();
  for (const OffKnotFloor& f : r.floors) {
    j["floors"].push_back({{"delta", f.delta}, {"m", f.min_norm}, {"found", f.found}});
  }
  j["max_parameter_gap"] = r.max_parameter_gap;
  j["refined_parameter_gap"] = r.refined_parameter_gap;
  return j;
}

nlohmann::ordered_json to_json(const TamenessReport& r) {
  return {{"spec", to_json(r.spec)},
          {"pass", r.pass},
          {"n_samples", r.n_samples},
          {"closed", r.closed},
          {"closure_error", r.closure_error},
          {"injective", r.injective},
          {"min_separation", r.min_separation},
          {"length", r.length},
          {"unit_speed", r.unit_speed},
          {"unit_speed_deviation", r.unit_speed_deviation},
          {"finite_curvature", r.finite_curvature},
          {"fenchel", r.fenchel},
          {"euclid_total_curvature", r.euclid_total},
          {"euclid_total_curvature_doubled", r.euclid_total_doubled},
          {"geodesic_total_curvature", r.geodesic_total},
          {"geodesic_total_curvature_doubled", r.geodesic_total_doubled},
          {"geodesic_unit_speed_deviation", r.geodesic_unit_speed_deviation}};
}

nlohmann::ordered_json versions_json() {
  char json_version[32];
  std::snprintf(json_version, sizeof json_version, "%d.%d.%d", NLOHMANN_JSON_VERSION_MAJOR,
                NLOHMANN_JSON_VERSION_MINOR, NLOHMANN_JSON_VERSION_PATCH);
  return {{"beltrami", kVersion}, {"nlohmann_json", json_version}};
}

nlohmann::ordered_json verify_report_json(const std::vector<SpecReport>& reports,
                                          std::uint64_t seed) {
  const auto checks_json = [](const SpecReport& r) {
    nlohmann::ordered_json checks = nlohmann::ordered_json::array();
    for (const Check& c : r.checks) checks.push_back(to_json(c));
    return checks;
  };
  const bool all_pass =
      std::all_of(reports.begin(), reports.end(), [](const SpecReport& r) { return r.pass(); });
  nlohmann::ordered_json j;
  if (reports.size() == 1) {
    j["spec"] = to_json(reports.front().spec);
    j["checks"] = checks_json(reports.front());
  } else {
    j["sections"] = nlohmann::ordered_json::array();
    for (const SpecReport& r : reports) {
      j["sections"].push_back(
          {{"spec", to_json(r.spec)}, {"pass", r.pass()}, {"checks", checks_json(r)}});
    }
  }
  j["versions"] = versions_json();
  j["seed"] = seed;
  j["pass"] = all_pass;
  return j;
}

}  // namespace beltrami
