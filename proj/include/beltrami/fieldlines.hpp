#pragma once

// Classical fixed-step RK4 integration of dx/dtau = X_{p,q,k}(x).

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "beltrami/geometry.hpp"
#include "beltrami/linalg.hpp"

namespace beltrami {

enum class LineStop {
  span,        // reached the configured arc length or time
  boundary,    // the next step would cross the boundary margin
  stationary,  // started on a zero of X
  max_steps,
};

std::string_view to_string(LineStop stop);

struct FieldLineOptions {
  double step = 1e-3;
  double max_arc_length = 10.0;
  /// When set, integrate exactly round(max_time / step) steps instead of
  /// stopping on arc length.
  std::optional<double> max_time;
  double margin = kScanMargin;
  double stationary_tol = 1e-12;
  long max_steps = 10'000'000;
};

struct FieldLine {
  Vec3d start;
  double step = 0.0;
  double span = 0.0;  // configured arc length (or time)
  std::vector<Vec3d> points;
  double arc_length = 0.0;
  double time = 0.0;
  LineStop stop = LineStop::span;
  /// Set when the polyline is empty: the start was stationary or the first
  /// step already left the domain.
  std::optional<std::string> warning;

  bool degenerate() const { return points.size() < 2; }
};

/// One RK4 step of the field from x.
Vec3d rk4_step(const KnotSpec& spec, const Vec3d& x, double h);

/// Throws DomainError if `start` is not inside the boundary margin.
FieldLine integrate_field_line(const KnotSpec& spec, const Vec3d& start,
                               const FieldLineOptions& options = {});

/// Endpoint after integrating for `duration` with step h.
Vec3d flow_endpoint(const KnotSpec& spec, const Vec3d& start, double h, double duration);

/// Convergence ratio |x(2h) - x(h)| / |x(h) - x(h/2)| of the flow endpoint;
/// close to 16 for a fourth-order method.
double rk4_order_ratio(const KnotSpec& spec, const Vec3d& start, double h, double duration);

}  // namespace beltrami
