#include "beltrami/zeroset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "beltrami/metric.hpp"
#include "beltrami/parallel.hpp"

namespace beltrami {

namespace {

constexpr double kBoxHalfWidth = 3.5;
constexpr double kBoxHalfHeight = 1.5;
constexpr std::size_t kMaxOffenders = 16;

double golden_section_min(const auto& f, double lo, double hi, double tol) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - inv_phi * (hi - lo);
  double x2 = lo + inv_phi * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > tol) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - inv_phi * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + inv_phi * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

double wrap_parameter(double t) {
  double w = std::fmod(t, kTwoPi);
  if (w < 0.0) w += kTwoPi;
  return w;
}

double field_norm(const Vec3d& xyz, const KnotSpec& spec, double perturb_z) {
  return norm(scanned_field(xyz, spec, perturb_z));
}

double metric_norm(const Vec3d& xyz, const KnotSpec& spec, double perturb_z) {
  const Vec3d X = scanned_field(xyz, spec, perturb_z);
  return std::sqrt(std::max(0.0, dot(X, metric_coords(xyz, spec) * X)));
}

double median(std::vector<double> v) {
  if (v.empty()) return 0.0;
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  return *mid;
}

// In-domain nodes of the scan grid in x-major order.
std::vector<Vec3d> grid_nodes(int resolution, double margin) {
  const double hx = 2.0 * kBoxHalfWidth / (resolution - 1);
  const double hz = 2.0 * kBoxHalfHeight / (resolution - 1);
  std::vector<Vec3d> nodes;
  for (int i = 0; i < resolution; ++i) {
    for (int j = 0; j < resolution; ++j) {
      for (int k = 0; k < resolution; ++k) {
        const Vec3d xyz{-kBoxHalfWidth + i * hx, -kBoxHalfWidth + j * hx,
                        -kBoxHalfHeight + k * hz};
        if (in_annulus_interior(xyz, margin)) nodes.push_back(xyz);
      }
    }
  }
  return nodes;
}

}  // namespace

KnotDistance::KnotDistance(int p, int q, int coarse_samples)
    : p_(p), q_(q), step_(kTwoPi / coarse_samples) {
  samples_.reserve(static_cast<std::size_t>(coarse_samples));
  for (int i = 0; i < coarse_samples; ++i) samples_.push_back(torus_knot_coords(p, q, i * step_));
}

KnotProjection KnotDistance::project(const Vec3d& x) const {
  const std::size_t n = samples_.size();
  std::vector<double> d2(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Vec3d diff = samples_[i] - x;
    d2[i] = dot(diff, diff);
  }
  // Circular local minima of the coarse distance, best first.
  std::vector<std::size_t> minima;
  for (std::size_t i = 0; i < n; ++i) {
    const double prev = d2[(i + n - 1) % n];
    const double next = d2[(i + 1) % n];
    if (d2[i] <= prev && d2[i] <= next) minima.push_back(i);
  }
  std::sort(minima.begin(), minima.end(),
            [&](std::size_t a, std::size_t b) { return d2[a] < d2[b]; });
  if (minima.size() > 4) minima.resize(4);

  const auto dist = [&](double t) { return norm(torus_knot_coords(p_, q_, t) - x); };
  KnotProjection best{std::sqrt(d2[minima.front()]), minima.front() * step_};
  for (std::size_t i : minima) {
    const double center = i * step_;
    const double t = golden_section_min(dist, center - step_, center + step_, 1e-12);
    const double d = dist(t);
    if (d < best.distance) best = {d, wrap_parameter(t)};
  }
  return best;
}

double dist_to_knot(const CartesianPoint& pt, int p, int q) {
  return KnotDistance(p, q).project(pt.xyz()).distance;
}

std::string_view to_string(RefineStatus status) {
  switch (status) {
    case RefineStatus::unrefined:
      return "unrefined";
    case RefineStatus::converged:
      return "converged";
    case RefineStatus::stalled:
      return "stalled";
    case RefineStatus::max_iterations:
      return "max_iterations";
    case RefineStatus::left_domain:
      return "left_domain";
  }
  return "unknown";
}

double grid_diagonal(int resolution) {
  const double hx = 2.0 * kBoxHalfWidth / (resolution - 1);
  const double hz = 2.0 * kBoxHalfHeight / (resolution - 1);
  return std::sqrt(2.0 * hx * hx + hz * hz);
}

GridScan grid_scan(const KnotSpec& spec, int resolution, const ScanOptions& options) {
  if (resolution < 8) {
    throw std::invalid_argument("grid_scan: resolution must be at least 8, got " +
                                std::to_string(resolution));
  }
  const std::vector<Vec3d> nodes = grid_nodes(resolution, options.margin);
  std::vector<double> norms(nodes.size());
  parallel_for(
      nodes.size(),
      [&](std::size_t i) { norms[i] = metric_norm(nodes[i], spec, options.perturb_z); },
      options.threads);

  GridScan scan;
  scan.grid_points = nodes.size();
  scan.median_norm = median(norms);
  scan.threshold = options.threshold.value_or(options.threshold_factor * scan.median_norm);
  scan.spacing_diagonal = grid_diagonal(resolution);

  std::vector<std::size_t> picked;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    if (norms[i] < scan.threshold) picked.push_back(i);
  }
  scan.candidates.resize(picked.size());
  const KnotDistance knot(spec.p, spec.q);
  parallel_for(
      picked.size(),
      [&](std::size_t n) {
        const Vec3d& xyz = nodes[picked[n]];
        ZeroCandidate c;
        c.point = CartesianPoint(xyz);
        c.residual = field_norm(xyz, spec, options.perturb_z);
        const KnotProjection proj = knot.project(xyz);
        c.knot_distance = proj.distance;
        c.knot_parameter = proj.parameter;
        scan.candidates[n] = c;
      },
      options.threads);
  return scan;
}

ZeroCandidate refine_zero(const CartesianPoint& start, const KnotSpec& spec,
                          const RefineOptions& options, std::vector<double>* cost_history) {
  require_in_annulus(start, "refine_zero");
  const auto evaluate = [&](const Vec3d& x, Mat3d* J) {
    const Vec3<Jet1> F = scanned_field(seed(x), spec, options.perturb_z);
    if (J != nullptr) *J = jacobian(F);
    return values(F);
  };

  ZeroCandidate out;
  Vec3d x = start.xyz();
  Mat3d J;
  Vec3d F = evaluate(x, &J);
  double cost = dot(F, F);
  double damping = options.initial_damping;
  if (cost_history != nullptr) cost_history->push_back(cost);

  out.status = RefineStatus::max_iterations;
  int it = 0;
  if (std::sqrt(cost) <= options.residual_tol) {
    out.status = RefineStatus::converged;
  } else {
    for (it = 1; it <= options.max_iterations; ++it) {
      Mat3d normal = transpose(J) * J;
      for (std::size_t i = 0; i < 3; ++i) normal[i][i] += damping;
      const Vec3d step = -(inverse(normal) * (transpose(J) * F));
      if (norm(step) <= options.step_tol) {
        out.status = RefineStatus::stalled;
        break;
      }
      const Vec3d trial = x + step;
      if (!in_annulus_interior(trial, kDerivativeMargin)) {
        out.status = RefineStatus::left_domain;
        break;
      }
      Mat3d trial_J;
      const Vec3d trial_F = evaluate(trial, &trial_J);
      const double trial_cost = dot(trial_F, trial_F);
      if (trial_cost < cost) {
        x = trial;
        F = trial_F;
        J = trial_J;
        cost = trial_cost;
        damping *= 0.5;
        if (cost_history != nullptr) cost_history->push_back(cost);
        if (std::sqrt(cost) <= options.residual_tol) {
          out.status = RefineStatus::converged;
          break;
        }
      } else {
        damping *= 2.0;
      }
    }
  }
  out.point = CartesianPoint(x);
  out.residual = std::sqrt(cost);
  out.refined = out.status == RefineStatus::converged;
  out.iterations = std::min(it, options.max_iterations);
  return out;
}

double max_circular_gap(std::vector<double> parameters) {
  if (parameters.empty()) return kTwoPi;
  for (double& t : parameters) t = wrap_parameter(t);
  std::sort(parameters.begin(), parameters.end());
  double gap = parameters.front() + kTwoPi - parameters.back();
  for (std::size_t i = 1; i < parameters.size(); ++i) {
    gap = std::max(gap, parameters[i] - parameters[i - 1]);
  }
  return gap;
}

ZeroSetReport certify_zero_set(const KnotSpec& spec, const CertifyConfig& config) {
  ZeroSetReport report;
  report.spec = spec;
  report.config = config;
  const KnotDistance knot(spec.p, spec.q);

  // Forward inclusion: the knot is contained in the zero set.
  const auto n_forward = static_cast<std::size_t>(config.knot_samples);
  std::vector<double> forward(n_forward);
  parallel_for(
      n_forward,
      [&](std::size_t i) {
        const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n_forward);
        forward[i] = field_norm(torus_knot_coords(spec.p, spec.q, t), spec, config.perturb_z);
      },
      config.threads);
  for (std::size_t i = 0; i < n_forward; ++i) {
    report.forward_max_residual = std::max(report.forward_max_residual, forward[i]);
    if (forward[i] > config.tol_forward && report.forward_offenders.size() < kMaxOffenders) {
      const double t = kTwoPi * static_cast<double>(i) / static_cast<double>(n_forward);
      report.forward_offenders.push_back(torus_knot_coords(spec.p, spec.q, t));
    }
  }
  report.forward_pass = report.forward_max_residual <= config.tol_forward;

  // Reverse inclusion: every refined zero lies on the knot.
  ScanOptions scan_options;
  scan_options.threshold_factor = config.threshold_factor;
  scan_options.threshold = config.threshold;
  scan_options.perturb_z = config.perturb_z;
  scan_options.threads = config.threads;
  GridScan scan = grid_scan(spec, config.resolution, scan_options);
  report.grid_points = scan.grid_points;
  report.median_norm = scan.median_norm;
  report.threshold = scan.threshold;

  std::vector<double> scan_parameters;
  scan_parameters.reserve(scan.candidates.size());
  for (const ZeroCandidate& c : scan.candidates) scan_parameters.push_back(c.knot_parameter);
  report.max_parameter_gap = scan.candidates.empty() ? kTwoPi : max_circular_gap(scan_parameters);

  RefineOptions refine_options;
  refine_options.perturb_z = config.perturb_z;
  report.candidates.resize(scan.candidates.size());
  parallel_for(
      scan.candidates.size(),
      [&](std::size_t i) {
        ZeroCandidate c = refine_zero(scan.candidates[i].point, spec, refine_options);
        const KnotProjection proj = knot.project(c.point.xyz());
        c.knot_distance = proj.distance;
        c.knot_parameter = proj.parameter;
        report.candidates[i] = c;
      },
      config.threads);

  std::vector<double> parameters;
  for (const ZeroCandidate& c : report.candidates) {
    switch (c.status) {
      case RefineStatus::converged:
        ++report.converged;
        parameters.push_back(c.knot_parameter);
        report.max_knot_distance = std::max(report.max_knot_distance, c.knot_distance);
        if (c.knot_distance > config.tol_reverse &&
            report.reverse_offenders.size() < kMaxOffenders) {
          report.reverse_offenders.push_back(c);
        }
        break;
      case RefineStatus::stalled:
        ++report.stalled;
        break;
      case RefineStatus::max_iterations:
        ++report.max_iterations;
        break;
      case RefineStatus::left_domain:
        ++report.left_domain;
        break;
      case RefineStatus::unrefined:
        break;
    }
  }
  report.degenerate = report.converged == 0;
  report.reverse_pass = !report.degenerate && report.max_knot_distance <= config.tol_reverse;
  report.refined_parameter_gap = max_circular_gap(parameters);

  // Off-knot floor: walk grid nodes by increasing |X| until one lies at
  // least delta from the knot. Distances are computed in batches.
  const std::vector<Vec3d> nodes = grid_nodes(config.resolution, kScanMargin);
  std::vector<double> norms(nodes.size());
  parallel_for(
      nodes.size(), [&](std::size_t i) { norms[i] = field_norm(nodes[i], spec, config.perturb_z); },
      config.threads);
  std::vector<std::size_t> order(nodes.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return norms[a] < norms[b] || (norms[a] == norms[b] && a < b);
  });
  std::vector<OffKnotFloor> floors;
  for (double delta : config.deltas) floors.push_back({delta, 0.0, false});
  constexpr std::size_t kBatch = 512;
  std::vector<double> batch_distance(kBatch);
  for (std::size_t begin = 0; begin < order.size(); begin += kBatch) {
    const bool all_found =
        std::all_of(floors.begin(), floors.end(), [](const OffKnotFloor& f) { return f.found; });
    if (all_found) break;
    const std::size_t end = std::min(order.size(), begin + kBatch);
    parallel_for(
        end - begin,
        [&](std::size_t i) { batch_distance[i] = knot(nodes[order[begin + i]]); },
        config.threads);
    for (std::size_t i = begin; i < end; ++i) {
      for (OffKnotFloor& f : floors) {
        if (!f.found && batch_distance[i - begin] >= f.delta) {
          f.found = true;
          f.min_norm = norms[order[i]];
        }
      }
    }
  }
  report.floors = floors;
  report.floor_pass = std::all_of(floors.begin(), floors.end(),
                                  [](const OffKnotFloor& f) { return f.found && f.min_norm > 0.0; });

  report.pass = report.forward_pass && report.reverse_pass && report.floor_pass;
  return report;
}

}  // namespace beltrami
