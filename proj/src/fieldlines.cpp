#include "beltrami/fieldlines.hpp"

#include <cmath>
#include <sstream>

#include "beltrami/fields.hpp"

namespace beltrami {

std::string_view to_string(LineStop stop) {
  switch (stop) {
    case LineStop::span:
      return "span";
    case LineStop::boundary:
      return "boundary";
    case LineStop::stationary:
      return "stationary";
    case LineStop::max_steps:
      return "max_steps";
  }
  return "unknown";
}

Vec3d rk4_step(const KnotSpec& spec, const Vec3d& x, double h) {
  const auto X = [&](const Vec3d& at) { return field_X_coords(at, spec); };
  const Vec3d k1 = X(x);
  const Vec3d k2 = X(x + k1 * (0.5 * h));
  const Vec3d k3 = X(x + k2 * (0.5 * h));
  const Vec3d k4 = X(x + k3 * h);
  return x + (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
}

FieldLine integrate_field_line(const KnotSpec& spec, const Vec3d& start,
                               const FieldLineOptions& options) {
  if (!in_annulus_interior(start, options.margin)) {
    std::ostringstream msg;
    msg << "field line start " << start << " is outside the annulus margin";
    throw DomainError(msg.str());
  }
  FieldLine line;
  line.start = start;
  line.step = options.step;
  line.span = options.max_time.value_or(options.max_arc_length);

  if (norm(field_X_coords(start, spec)) <= options.stationary_tol) {
    line.stop = LineStop::stationary;
    line.warning = "start is a zero of X; the field line is a single stationary point";
    return line;
  }

  const long fixed_steps =
      options.max_time ? std::lround(*options.max_time / options.step) : options.max_steps;
  line.points.push_back(start);
  Vec3d x = start;
  long n = 0;
  line.stop = options.max_time ? LineStop::span : LineStop::max_steps;
  while (n < std::min(fixed_steps, options.max_steps)) {
    const Vec3d next = rk4_step(spec, x, options.step);
    if (!in_annulus_interior(next, options.margin)) {
      line.stop = LineStop::boundary;
      break;
    }
    line.arc_length += norm(next - x);
    line.points.push_back(next);
    x = next;
    ++n;
    if (!options.max_time && line.arc_length >= options.max_arc_length) {
      line.stop = LineStop::span;
      break;
    }
  }
  line.time = static_cast<double>(n) * options.step;
  if (line.points.size() < 2) {
    line.points.clear();
    line.warning = "the first step leaves the annulus margin";
  }
  return line;
}

Vec3d flow_endpoint(const KnotSpec& spec, const Vec3d& start, double h, double duration) {
  const long steps = std::lround(duration / h);
  Vec3d x = start;
  for (long i = 0; i < steps; ++i) x = rk4_step(spec, x, h);
  return x;
}

double rk4_order_ratio(const KnotSpec& spec, const Vec3d& start, double h, double duration) {
  const Vec3d coarse = flow_endpoint(spec, start, 2.0 * h, duration);
  const Vec3d mid = flow_endpoint(spec, start, h, duration);
  const Vec3d fine = flow_endpoint(spec, start, 0.5 * h, duration);
  return norm(coarse - mid) / norm(mid - fine);
}

}  // namespace beltrami
