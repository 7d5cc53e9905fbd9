#pragma once

// Locating the zero set of X_{p,q,k}: grid scan, Levenberg-Marquardt
// refinement, Euclidean distance to the torus knot, and a two-sided
// certificate that the located zeros are exactly the knot.

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "beltrami/fields.hpp"
#include "beltrami/geometry.hpp"

namespace beltrami {

/// X_{p,q,k} + perturb_z e_z. The offset is a test hook for certificates
/// that must fail; it is zero in normal use.
template <typename T>
Vec3<T> scanned_field(const Vec3<T>& xyz, const KnotSpec& spec, double perturb_z) {
  Vec3<T> X = field_X_coords(xyz, spec);
  if (perturb_z != 0.0) X[2] = X[2] + perturb_z;
  return X;
}

struct KnotProjection {
  double distance = 0.0;
  double parameter = 0.0;  // in [0, 2 pi)
};

/// Nearest point of T_{p,q}: coarse sampling followed by golden-section
/// refinement of the best local minima. Construct once per (p, q) and reuse.
class KnotDistance {
 public:
  explicit KnotDistance(int p, int q, int coarse_samples = 4096);

  KnotProjection project(const Vec3d& x) const;
  double operator()(const Vec3d& x) const { return project(x).distance; }

  int p() const { return p_; }
  int q() const { return q_; }

 private:
  int p_;
  int q_;
  double step_;
  std::vector<Vec3d> samples_;
};

/// min over t of |pt - T_{p,q}(t)|.
double dist_to_knot(const CartesianPoint& pt, int p, int q);

enum class RefineStatus {
  unrefined,       // straight from the grid scan
  converged,       // |X| <= residual tolerance
  stalled,         // step fell below the step tolerance first
  max_iterations,
  left_domain,     // a step left the annulus; last in-domain iterate kept
};

std::string_view to_string(RefineStatus status);

struct ZeroCandidate {
  CartesianPoint point{3.0, 0.0, 0.0};
  double residual = 0.0;  // Euclidean |X| at point
  bool refined = false;   // true iff status == converged
  double knot_distance = 0.0;
  double knot_parameter = 0.0;
  RefineStatus status = RefineStatus::unrefined;
  int iterations = 0;
};

struct ScanOptions {
  /// Candidates satisfy |X|_g < threshold_factor * median grid |X|_g ...
  double threshold_factor = 0.1;
  /// ... unless an absolute threshold is given.
  std::optional<double> threshold;
  double margin = kScanMargin;
  double perturb_z = 0.0;
  unsigned threads = 0;
};

struct GridScan {
  std::vector<ZeroCandidate> candidates;
  std::size_t grid_points = 0;  // in-domain nodes
  double median_norm = 0.0;     // median |X|_g over in-domain nodes
  double threshold = 0.0;
  double spacing_diagonal = 0.0;
};

/// Regular grid over [-3.5, 3.5]^2 x [-1.5, 1.5] with `resolution` nodes per
/// axis, restricted to the annulus minus `margin`. Candidates carry their
/// knot distance; they are not refined here. Throws std::invalid_argument
/// for resolution < 8.
GridScan grid_scan(const KnotSpec& spec, int resolution, const ScanOptions& options = {});

/// Node spacing diagonal of the scan grid.
double grid_diagonal(int resolution);

struct RefineOptions {
  double residual_tol = 1e-12;
  double step_tol = 1e-14;
  int max_iterations = 100;
  double initial_damping = 1e-3;
  double perturb_z = 0.0;
};

/// Levenberg-Marquardt on |X|^2 with the jet Jacobian of X. Damping halves
/// on accepted steps and doubles on rejected ones, so |X|^2 never increases
/// between accepted iterates; `cost_history`, when given, receives |X|^2 at
/// the start and after every accepted step. Throws DomainError if `start`
/// is outside the annulus.
ZeroCandidate refine_zero(const CartesianPoint& start, const KnotSpec& spec,
                          const RefineOptions& options = {},
                          std::vector<double>* cost_history = nullptr);

struct CertifyConfig {
  int resolution = 64;
  int knot_samples = 10000;
  double tol_forward = 1e-10;
  double tol_reverse = 1e-6;
  std::vector<double> deltas = {0.05, 0.1, 0.2};
  double threshold_factor = 0.1;
  std::optional<double> threshold;
  double perturb_z = 0.0;
  unsigned threads = 0;
};

struct OffKnotFloor {
  double delta = 0.0;
  double min_norm = 0.0;  // min |X| over grid nodes at distance >= delta
  bool found = false;     // some node lies that far from the knot
};

struct ZeroSetReport {
  KnotSpec spec;
  CertifyConfig config;

  bool pass = false;
  bool degenerate = false;  // no converged zero to test the reverse inclusion

  bool forward_pass = false;
  double forward_max_residual = 0.0;
  std::vector<Vec3d> forward_offenders;  // first few knot samples above tolerance

  bool reverse_pass = false;
  double max_knot_distance = 0.0;  // over converged zeros
  std::vector<ZeroCandidate> reverse_offenders;

  bool floor_pass = false;
  std::vector<OffKnotFloor> floors;

  std::vector<ZeroCandidate> candidates;  // refined scan candidates
  std::size_t grid_points = 0;
  double median_norm = 0.0;
  double threshold = 0.0;
  std::size_t converged = 0;
  std::size_t stalled = 0;
  std::size_t max_iterations = 0;
  std::size_t left_domain = 0;

  /// Largest circular gap between the knot parameters of the scan
  /// candidates, each projected to its nearest knot point.
  double max_parameter_gap = 0.0;
  /// Same, over the converged refinements instead.
  double refined_parameter_gap = 0.0;
};

/// Forward inclusion (|X| small on the knot), reverse inclusion (refined
/// zeros lie on the knot) and the off-knot floor m(delta).
ZeroSetReport certify_zero_set(const KnotSpec& spec, const CertifyConfig& config = {});

/// Largest gap between consecutive parameters on the circle [0, 2 pi).
double max_circular_gap(std::vector<double> parameters);

}  // namespace beltrami
