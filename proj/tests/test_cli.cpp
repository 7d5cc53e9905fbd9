#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <string>

#include "json.hpp"

#include "beltrami/fields.hpp"
#include "beltrami/io.hpp"

namespace fs = std::filesystem;
using namespace beltrami;

namespace {

const fs::path kWork = fs::temp_directory_path() / "beltrami_cli_test";

// Runs the tool with stdout captured to `stdout_file`; returns the exit code.
int run(const std::string& args, const std::string& stdout_file = "stdout.txt") {
  fs::create_directories(kWork);
  const std::string cmd = std::string("\"") + BELTRAMI_CLI + "\" " + args + " > \"" +
                          (kWork / stdout_file).string() + "\" 2> \"" +
                          (kWork / "stderr.txt").string() + "\"";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string out_dir(const std::string& name) { return "--out \"" + (kWork / name).string() + "\""; }

}  // namespace

TEST_CASE("verify exit codes") {
  CHECK(run("verify --p 2 --q 3 --k 0 --n-points 200 " + out_dir("v")) == 0);
  const auto report = nlohmann::json::parse(read_text(kWork / "v" / "verify.json"));
  CHECK(report["pass"] == true);
  CHECK(report["spec"]["p"] == 2);

  CHECK(run("verify --p 2 --q 4 --k 0 " + out_dir("bad")) == 2);
  CHECK(run("verify --p 2 --q 3 --resolution 4") == 2);
  CHECK(run("verify --format xml") == 2);
  CHECK(run("verify --tol-curl -1") == 2);
  CHECK(run("verify --no-such-flag") == 2);
  CHECK(run("verify --p 2 --q 3 --k 0 --n-points 50 --skip-zero-set --tol-curl 1e-30 " +
            out_dir("strict")) == 1);
}

TEST_CASE("verify over a k range writes one section per spec") {
  CHECK(run("verify --p 2 --q 3 --k -2..2 --n-points 100 " + out_dir("range")) == 0);
  const auto report = nlohmann::json::parse(read_text(kWork / "range" / "verify.json"));
  REQUIRE(report.contains("sections"));
  CHECK(report["sections"].size() == 5);
  CHECK(report["sections"][0]["spec"]["k"] == -2);
  CHECK(report["sections"][4]["spec"]["k"] == 2);
}

TEST_CASE("zeroset outputs and determinism") {
  CHECK(run("zeroset --p 2 --q 3 --k 0 " + out_dir("z1")) == 0);
  CHECK(run("zeroset --p 2 --q 3 --k 0 " + out_dir("z2")) == 0);
  const std::string csv = read_text(kWork / "z1" / "zeroset_p2_q3_k0.csv");
  CHECK(csv == read_text(kWork / "z2" / "zeroset_p2_q3_k0.csv"));
  CHECK(read_text(kWork / "z1" / "zeroset_p2_q3_k0_report.json") ==
        read_text(kWork / "z2" / "zeroset_p2_q3_k0_report.json"));
  const Table t = parse_csv(csv);
  CHECK(t.columns == kCandidateColumns);
  CHECK_FALSE(t.rows.empty());

  CHECK(run("zeroset --p 2 --q 3 --k 0 --resolution 16 --threshold 0 " + out_dir("z0")) == 1);
  CHECK(parse_csv(read_text(kWork / "z0" / "zeroset_p2_q3_k0.csv")).rows.empty());
  const auto report =
      nlohmann::json::parse(read_text(kWork / "z0" / "zeroset_p2_q3_k0_report.json"));
  CHECK(report["degenerate"] == true);
}

TEST_CASE("knot export round-trips in every format") {
  CHECK(run("export --p 2 --q 3 --n-samples 300 --glyphs 40 --format csv " + out_dir("ecsv")) == 0);
  const Table knot = parse_csv(read_text(kWork / "ecsv" / "knot_p2_q3_k0.csv"));
  CHECK(knot.columns == kKnotColumns);
  REQUIRE(knot.rows.size() == 300);
  for (const auto& row : knot.rows) {
    const Vec3d x = torus_knot_coords(2, 3, row[0]);
    CHECK(std::fabs(row[1] - x[0]) <= 1e-12);
    CHECK(std::fabs(row[2] - x[1]) <= 1e-12);
    CHECK(std::fabs(row[3] - x[2]) <= 1e-12);
  }
  const Table glyphs = parse_csv(read_text(kWork / "ecsv" / "glyphs_p2_q3_k0.csv"));
  CHECK(glyphs.columns == kGlyphColumns);
  CHECK(glyphs.rows.size() == 40);
  const KnotSpec s = make_knot_spec(2, 3, 0);
  for (const auto& row : glyphs.rows) {
    const Vec3d X = field_X_coords(Vec3d{row[0], row[1], row[2]}, s);
    CHECK(std::fabs(row[3] - X[0]) <= 1e-12);
    CHECK(std::fabs(row[4] - X[1]) <= 1e-12);
    CHECK(std::fabs(row[5] - X[2]) <= 1e-12);
  }
  CHECK(fs::exists(kWork / "ecsv" / "boundary.csv"));

  CHECK(run("export --p 2 --q 3 --n-samples 300 --glyphs 40 --format vtk " + out_dir("evtk")) == 0);
  const PolyData vtk = parse_vtk(read_text(kWork / "evtk" / "knot_p2_q3_k0.vtk"));
  CHECK(vtk.points.size() == 300);
  REQUIRE(vtk.lines.size() == 1);
  CHECK(vtk.lines[0].front() == vtk.lines[0].back());
  for (std::size_t i = 0; i < 300; ++i) {
    CHECK(vtk.points[i] == Vec3d{knot.rows[i][1], knot.rows[i][2], knot.rows[i][3]});
  }
  const PolyData boundary = parse_vtk(read_text(kWork / "evtk" / "boundary.vtk"));
  CHECK_FALSE(boundary.polygons.empty());
  const PolyData glyph_vtk = parse_vtk(read_text(kWork / "evtk" / "glyphs_p2_q3_k0.vtk"));
  CHECK(glyph_vtk.vectors.size() == 40);

  CHECK(run("export --p 2 --q 3 --n-samples 300 --format json " + out_dir("ejson")) == 0);
  const Table json_knot = parse_json_table(read_text(kWork / "ejson" / "knot_p2_q3_k0.json"));
  CHECK(json_knot.rows == knot.rows);
}

TEST_CASE("fieldlines") {
  CHECK(run("fieldlines --p 2 --q 3 --start 0,1.25,0 --start 3,0,0 " + out_dir("f"), "f.json") == 0);
  const auto summary = nlohmann::json::parse(read_text(kWork / "f.json"));
  REQUIRE(summary.size() == 2);
  CHECK(summary[0]["points"].get<int>() > 10);
  CHECK(summary[1]["points"] == 0);
  CHECK(summary[1]["stop"] == "stationary");
  CHECK(summary[1].contains("warning"));
  CHECK(run("fieldlines --p 2 --q 3 --start 0,0,0") == 2);
  CHECK(run("fieldlines --p 2 --q 3 --start 1,2") == 2);
}

TEST_CASE("knot and eval") {
  CHECK(run("knot --p 2 --q 3 " + out_dir("k"), "k.json") == 0);
  const auto r = nlohmann::json::parse(read_text(kWork / "k.json"));
  CHECK(r["pass"] == true);
  CHECK(fs::exists(kWork / "k" / "curve_sampling_p2_q3_k0.csv"));

  CHECK(run("eval --p 2 --q 3 --point 3,0,0", "e.json") == 0);
  const auto e = nlohmann::json::parse(read_text(kWork / "e.json"));
  CHECK(e["norm"] == 0.0);
  CHECK(e["metric"][1][2].get<double>() == doctest::Approx(-7.0 / 3.0));
  CHECK(run("eval --point 0,0,0") == 2);
  CHECK(run("eval") == 2);
}
