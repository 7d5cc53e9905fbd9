// Command-line front end: verify, zeroset, fieldlines, knot, export, eval.
//
// Exit codes: 0 all checks pass, 1 a mathematical check failed, 2 invalid
// input (bad flags, gcd(p, q) != 1, points outside the annulus, I/O).

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <regex>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "beltrami/fieldlines.hpp"
#include "beltrami/fields.hpp"
#include "beltrami/io.hpp"
#include "beltrami/knotcheck.hpp"
#include "beltrami/metric.hpp"
#include "beltrami/verify.hpp"
#include "beltrami/zeroset.hpp"

namespace fs = std::filesystem;
using namespace beltrami;
using json = nlohmann::ordered_json;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFailed = 1;
constexpr int kExitInvalid = 2;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  int p = 2;
  int q = 3;
  std::string k = "0";
  int resolution = 64;
  std::uint64_t seed = kDefaultSeed;
  std::string out = ".";
  std::string format = "csv";
  double tol_curl = 1e-8;
  double tol_zero = 1e-10;
  unsigned threads = 0;

  // Subcommand extras.
  int n_points = 1000;
  int n_samples = 0;  // 0 = subcommand default
  bool skip_zero_set = false;
  std::optional<double> threshold;
  double threshold_factor = 0.1;
  std::vector<std::string> starts;
  double step = 1e-3;
  double span = 10.0;
  int glyphs = 512;
  int surface_resolution = 48;
  std::string point;
};

std::vector<int> parse_k(const std::string& text) {
  static const std::regex pattern(R"(^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+))?\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw UsageError("--k expects an integer or a range a..b, got '" + text + "'");
  }
  const int lo = std::stoi(m[1]);
  const int hi = m[2].matched ? std::stoi(m[2]) : lo;
  if (hi < lo) throw UsageError("--k range " + text + " is empty");
  if (hi - lo > 1000) throw UsageError("--k range " + text + " is too long");
  std::vector<int> ks;
  for (int k = lo; k <= hi; ++k) ks.push_back(k);
  return ks;
}

Vec3d parse_point(const std::string& text) {
  static const std::regex pattern(R"(^\s*([^,\s]+)\s*,\s*([^,\s]+)\s*,\s*([^,\s]+)\s*$)");
  std::smatch m;
  if (!std::regex_match(text, m, pattern)) {
    throw UsageError("expected a point 'x,y,z', got '" + text + "'");
  }
  try {
    return {std::stod(m[1]), std::stod(m[2]), std::stod(m[3])};
  } catch (const std::exception&) {
    throw UsageError("expected a point 'x,y,z', got '" + text + "'");
  }
}

void validate(const RunConfig& c) {
  if (c.resolution < 8) throw UsageError("--resolution must be at least 8");
  if (!(c.tol_curl > 0.0)) throw UsageError("--tol-curl must be positive");
  if (!(c.tol_zero > 0.0)) throw UsageError("--tol-zero must be positive");
  if (!(c.step > 0.0)) throw UsageError("--step must be positive");
  if (!(c.span > 0.0)) throw UsageError("--span must be positive");
  if (c.n_points < 1) throw UsageError("--n-points must be positive");
  if (c.threshold && *c.threshold < 0.0) throw UsageError("--threshold must be non-negative");
  parse_format(c.format);
}

std::vector<KnotSpec> specs_of(const RunConfig& c) {
  std::vector<KnotSpec> specs;
  for (int k : parse_k(c.k)) specs.push_back(make_knot_spec(c.p, c.q, k));
  return specs;
}

std::string tag(const KnotSpec& s) {
  return "p" + std::to_string(s.p) + "_q" + std::to_string(s.q) + "_k" + std::to_string(s.k);
}

void print_json(const json& j) { std::cout << j.dump(2) << '\n'; }

CertifyConfig certify_config(const RunConfig& c) {
  CertifyConfig cfg;
  cfg.resolution = c.resolution;
  cfg.tol_forward = c.tol_zero;
  cfg.threshold = c.threshold;
  cfg.threshold_factor = c.threshold_factor;
  cfg.threads = c.threads;
  return cfg;
}

// Writes a table in the selected format; VTK gets the points as vertices.
void write_table(const fs::path& stem, const Table& table, Format format) {
  const fs::path path = fs::path(stem).concat(extension(format));
  switch (format) {
    case Format::csv:
      write_text(path, to_csv(table));
      break;
    case Format::json:
      write_text(path, to_json(table));
      break;
    case Format::vtk:
      throw UsageError("no VTK form for " + path.string());
  }
}

int cmd_verify(const RunConfig& c) {
  VerifyConfig cfg;
  cfg.n_points = c.n_points;
  cfg.seed = c.seed;
  cfg.tol_curl = c.tol_curl;
  cfg.zero_set = !c.skip_zero_set;
  cfg.certify = certify_config(c);
  cfg.threads = c.threads;
  std::vector<SpecReport> reports;
  for (const KnotSpec& spec : specs_of(c)) reports.push_back(verify_spec(spec, cfg));
  const json report = verify_report_json(reports, c.seed);
  write_text(fs::path(c.out) / "verify.json", report.dump(2) + "\n");
  print_json(report);
  return report["pass"].get<bool>() ? kExitPass : kExitFailed;
}

int cmd_zeroset(const RunConfig& c) {
  const Format format = parse_format(c.format);
  bool pass = true;
  json summary = json::array();
  for (const KnotSpec& spec : specs_of(c)) {
    const ZeroSetReport r = certify_zero_set(spec, certify_config(c));
    Table table{kCandidateColumns, {}};
    for (const ZeroCandidate& z : r.candidates) {
      table.rows.push_back({z.point.x(), z.point.y(), z.point.z(), z.residual, z.knot_distance,
                            z.refined ? 1.0 : 0.0});
    }
    const fs::path stem = fs::path(c.out) / ("zeroset_" + tag(spec));
    if (format == Format::vtk) {
      PolyData data;
      data.title = "zero candidates " + to_string(spec);
      for (const ZeroCandidate& z : r.candidates) {
        data.vertices.push_back({static_cast<int>(data.points.size())});
        data.points.push_back(z.point.xyz());
      }
      write_text(fs::path(stem).concat(".vtk"), to_vtk(data));
    } else {
      write_table(stem, table, format);
    }
    json j = to_json(r);
    j["seed"] = c.seed;
    j["versions"] = versions_json();
    write_text(fs::path(stem).concat("_report.json"), j.dump(2) + "\n");
    summary.push_back(j);
    pass = pass && r.pass;
  }
  print_json(summary.size() == 1 ? summary.front() : summary);
  return pass ? kExitPass : kExitFailed;
}

int cmd_fieldlines(const RunConfig& c) {
  const Format format = parse_format(c.format);
  std::vector<Vec3d> starts;
  for (const std::string& s : c.starts) starts.push_back(parse_point(s));
  if (starts.empty()) starts.push_back({0.0, 1.25, 0.0});
  FieldLineOptions options;
  options.step = c.step;
  options.max_arc_length = c.span;

  json summary = json::array();
  for (const KnotSpec& spec : specs_of(c)) {
    std::vector<FieldLine> lines;
    for (const Vec3d& s : starts) lines.push_back(integrate_field_line(spec, s, options));

    const fs::path stem = fs::path(c.out) / ("fieldlines_" + tag(spec));
    if (format == Format::vtk) {
      PolyData data;
      data.title = "field lines " + to_string(spec);
      for (const FieldLine& line : lines) {
        if (line.points.empty()) continue;
        std::vector<int> cell;
        for (const Vec3d& x : line.points) {
          cell.push_back(static_cast<int>(data.points.size()));
          data.points.push_back(x);
        }
        data.lines.push_back(std::move(cell));
      }
      write_text(fs::path(stem).concat(".vtk"), to_vtk(data));
    } else {
      Table table{{"line", "x", "y", "z"}, {}};
      for (std::size_t i = 0; i < lines.size(); ++i) {
        for (const Vec3d& x : lines[i].points) {
          table.rows.push_back({static_cast<double>(i), x[0], x[1], x[2]});
        }
      }
      write_table(stem, table, format);
    }
    for (std::size_t i = 0; i < lines.size(); ++i) {
      const FieldLine& line = lines[i];
      json j = {{"spec", to_json(spec)},
                {"line", i},
                {"start", {line.start[0], line.start[1], line.start[2]}},
                {"step", line.step},
                {"span", line.span},
                {"points", line.points.size()},
                {"arc_length", line.arc_length},
                {"time", line.time},
                {"stop", std::string(to_string(line.stop))}};
      if (line.warning) {
        j["warning"] = *line.warning;
        std::cerr << "warning: " << to_string(spec) << " line " << i << ": " << *line.warning
                  << '\n';
      }
      summary.push_back(j);
    }
  }
  print_json(summary);
  return kExitPass;
}

int cmd_knot(const RunConfig& c) {
  TamenessConfig cfg;
  if (c.n_samples > 0) cfg.n_samples = c.n_samples;
  bool pass = true;
  json summary = json::array();
  for (const KnotSpec& spec : specs_of(c)) {
    const TamenessReport r = tameness_report(spec, cfg);
    const CurveSampling s = knot_sampling(spec.p, spec.q, cfg.n_samples);
    Table table{{"t", "x", "y", "z", "speed", "arc_length", "curvature"}, {}};
    for (std::size_t i = 0; i < s.t.size(); ++i) {
      table.rows.push_back({s.t[i], s.points[i][0], s.points[i][1], s.points[i][2], s.speeds[i],
                            s.arc_length[i], s.curvature[i]});
    }
    write_text(fs::path(c.out) / ("curve_sampling_" + tag(spec) + ".csv"), to_csv(table));
    summary.push_back(to_json(r));
    pass = pass && r.pass;
  }
  print_json(summary.size() == 1 ? summary.front() : summary);
  return pass ? kExitPass : kExitFailed;
}

PolyData boundary_surfaces(int n) {
  PolyData data;
  data.title = "annulus boundary";
  for (const double t : {kInnerRadius, kOuterRadius}) {
    const int base = static_cast<int>(data.points.size());
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        data.points.push_back(psi_coords(Vec3d{kTwoPi * i / n, kTwoPi * j / n, t}));
      }
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const auto at = [&](int a, int b) { return base + (a % n) * n + (b % n); };
        data.polygons.push_back({at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)});
      }
    }
  }
  return data;
}

int cmd_export(const RunConfig& c) {
  const Format format = parse_format(c.format);
  const int n_knot = c.n_samples > 0 ? c.n_samples : 512;
  const fs::path out(c.out);

  const PolyData boundary = boundary_surfaces(c.surface_resolution);
  if (format == Format::vtk) {
    write_text(out / "boundary.vtk", to_vtk(boundary));
  } else {
    Table table{{"surface", "a", "c", "x", "y", "z"}, {}};
    const int n = c.surface_resolution;
    for (std::size_t idx = 0; idx < boundary.points.size(); ++idx) {
      const auto i = static_cast<int>(idx);
      const int surface = i / (n * n);
      const int a = (i % (n * n)) / n;
      const int b = i % n;
      const Vec3d& x = boundary.points[idx];
      table.rows.push_back({static_cast<double>(surface), kTwoPi * a / n, kTwoPi * b / n, x[0],
                            x[1], x[2]});
    }
    write_table(out / "boundary", table, format);
  }

  const std::vector<Vec3d> glyph_points = sample_points(c.seed, c.glyphs);
  json files = json::array();
  for (const KnotSpec& spec : specs_of(c)) {
    Table knot{kKnotColumns, {}};
    PolyData knot_vtk;
    knot_vtk.title = "torus knot " + to_string(spec);
    std::vector<int> cell;
    for (int i = 0; i < n_knot; ++i) {
      const double t = kTwoPi * i / n_knot;
      const Vec3d x = torus_knot_coords(spec.p, spec.q, t);
      knot.rows.push_back({t, x[0], x[1], x[2]});
      cell.push_back(i);
      knot_vtk.points.push_back(x);
    }
    cell.push_back(0);  // closed polyline
    knot_vtk.lines.push_back(cell);

    Table glyphs{kGlyphColumns, {}};
    PolyData glyph_vtk;
    glyph_vtk.title = "field glyphs " + to_string(spec);
    glyph_vtk.vectors_name = "X";
    for (const Vec3d& x : glyph_points) {
      const Vec3d X = field_X_coords(x, spec);
      glyphs.rows.push_back({x[0], x[1], x[2], X[0], X[1], X[2]});
      glyph_vtk.vertices.push_back({static_cast<int>(glyph_vtk.points.size())});
      glyph_vtk.points.push_back(x);
      glyph_vtk.vectors.push_back(X);
    }

    const fs::path knot_stem = out / ("knot_" + tag(spec));
    const fs::path glyph_stem = out / ("glyphs_" + tag(spec));
    if (format == Format::vtk) {
      write_text(fs::path(knot_stem).concat(".vtk"), to_vtk(knot_vtk));
      write_text(fs::path(glyph_stem).concat(".vtk"), to_vtk(glyph_vtk));
    } else {
      write_table(knot_stem, knot, format);
      write_table(glyph_stem, glyphs, format);
    }
    files.push_back({{"spec", to_json(spec)},
                     {"knot", fs::path(knot_stem).concat(extension(format)).string()},
                     {"glyphs", fs::path(glyph_stem).concat(extension(format)).string()}});
  }
  print_json({{"boundary", (out / "boundary").concat(extension(format)).string()},
              {"specs", files},
              {"seed", c.seed}});
  return kExitPass;
}

int cmd_eval(const RunConfig& c) {
  if (c.point.empty()) throw UsageError("eval needs --point x,y,z");
  const CartesianPoint pt(parse_point(c.point));
  json out = json::array();
  for (const KnotSpec& spec : specs_of(c)) {
    const Vec3d X = field_X(pt, spec);
    const MetricValue g = metric_g(pt, spec);
    const auto row = [](const Mat3d& m, std::size_t i) {
      return json::array({m[i][0], m[i][1], m[i][2]});
    };
    const ToroidalPoint model = psi_inv(pt);
    out.push_back({{"spec", to_json(spec)},
                   {"point", {pt.x(), pt.y(), pt.z()}},
                   {"model", {model.a(), model.c(), model.t()}},
                   {"X", {X[0], X[1], X[2]}},
                   {"norm", norm(X)},
                   {"norm_g", std::sqrt(dot(X, g.g * X))},
                   {"metric", {row(g.g, 0), row(g.g, 1), row(g.g, 2)}},
                   {"det_g", g.det_g},
                   {"spd", g.spd()},
                   {"condition_number", g.condition_number()},
                   {"knot_distance", dist_to_knot(pt, spec.p, spec.q)}});
  }
  print_json(out.size() == 1 ? out.front() : out);
  return kExitPass;
}

void add_common(CLI::App* cmd, RunConfig& c) {
  cmd->add_option("--p", c.p, "first winding number")->capture_default_str();
  cmd->add_option("--q", c.q, "second winding number")->capture_default_str();
  cmd->add_option("--k", c.k, "family index or range a..b")->capture_default_str();
  cmd->add_option("--resolution", c.resolution, "scan grid nodes per axis")->capture_default_str();
  cmd->add_option("--seed", c.seed, "sample point seed")->capture_default_str();
  cmd->add_option("--out", c.out, "output directory")->capture_default_str();
  cmd->add_option("--format", c.format, "csv, json or vtk")->capture_default_str();
  cmd->add_option("--tol-curl", c.tol_curl, "Beltrami residual tolerance")->capture_default_str();
  cmd->add_option("--tol-zero", c.tol_zero, "|X| tolerance on the knot")->capture_default_str();
  cmd->add_option("--threads", c.threads, "worker threads, 0 = all cores");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Beltrami fields with torus-knot zero sets"};
  app.require_subcommand(1);
  RunConfig c;

  auto* verify = app.add_subcommand("verify", "run every residual check and write verify.json");
  add_common(verify, c);
  verify->add_option("--n-points", c.n_points, "seeded points per spec")->capture_default_str();
  verify->add_flag("--skip-zero-set", c.skip_zero_set, "omit the zero-set certificate");

  auto* zeroset = app.add_subcommand("zeroset", "locate and certify the zero set");
  add_common(zeroset, c);
  zeroset->add_option("--threshold", c.threshold, "absolute |X|_g scan threshold");
  zeroset->add_option("--threshold-factor", c.threshold_factor, "threshold / median |X|_g")
      ->capture_default_str();

  auto* fieldlines = app.add_subcommand("fieldlines", "integrate field lines with RK4");
  add_common(fieldlines, c);
  fieldlines->add_option("--start", c.starts, "start point x,y,z (repeatable)");
  fieldlines->add_option("--step", c.step, "RK4 step")->capture_default_str();
  fieldlines->add_option("--span", c.span, "arc length to integrate")->capture_default_str();

  auto* knot = app.add_subcommand("knot", "tameness checks and curve sampling");
  add_common(knot, c);
  knot->add_option("--n-samples", c.n_samples, "curve samples (default 1024)");

  auto* exporter = app.add_subcommand("export", "knot, boundary and glyph files");
  add_common(exporter, c);
  exporter->add_option("--n-samples", c.n_samples, "knot polyline points (default 512)");
  exporter->add_option("--glyphs", c.glyphs, "field glyph samples")->capture_default_str();
  exporter->add_option("--surface-resolution", c.surface_resolution, "boundary grid per angle")
      ->capture_default_str();

  auto* eval = app.add_subcommand("eval", "field and metric at one point");
  add_common(eval, c);
  eval->add_option("--point", c.point, "x,y,z")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInvalid;
  }

  try {
    validate(c);
    if (*verify) return cmd_verify(c);
    if (*zeroset) return cmd_zeroset(c);
    if (*fieldlines) return cmd_fieldlines(c);
    if (*knot) return cmd_knot(c);
    if (*exporter) return cmd_export(c);
    if (*eval) return cmd_eval(c);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInvalid;
  }
  return kExitInvalid;
}
