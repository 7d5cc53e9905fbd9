#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <numbers>

#include "beltrami/io.hpp"
#include "beltrami/sampling.hpp"

using namespace beltrami;

namespace {

Table random_table(std::uint64_t seed, std::size_t rows) {
  PointSampler rng(seed);
  Table t{kGlyphColumns, {}};
  for (std::size_t i = 0; i < rows; ++i) {
    std::vector<double> row;
    for (std::size_t j = 0; j < t.columns.size(); ++j) {
      row.push_back(rng.uniform(-1.0, 1.0) * std::pow(10.0, rng.uniform(-20.0, 20.0)));
    }
    t.rows.push_back(row);
  }
  return t;
}

}  // namespace

TEST_CASE("seventeen significant digits") {
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(3.0) == "3");
  CHECK(std::stod(format_double(std::numbers::pi)) == std::numbers::pi);
}

TEST_CASE("CSV round trip is exact") {
  const Table t = random_table(1, 200);
  const std::string text = to_csv(t);
  CHECK(text.rfind("x,y,z,Xx,Xy,Xz\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);
  const Table back = parse_csv(text);
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
}

TEST_CASE("JSON table round trip is exact") {
  const Table t = random_table(2, 100);
  const Table back = parse_json_table(to_json(t));
  CHECK(back.columns == t.columns);
  CHECK(back.rows == t.rows);
}

TEST_CASE("fixed CSV headers") {
  CHECK(to_csv(Table{kKnotColumns, {}}) == "t,x,y,z\n");
  CHECK(to_csv(Table{kCandidateColumns, {}}) == "x,y,z,residual,knot_distance,refined\n");
}

TEST_CASE("VTK polydata round trip") {
  PolyData d;
  d.title = "round trip";
  PointSampler rng(3);
  for (int i = 0; i < 50; ++i) d.points.push_back(rng.annulus_point().xyz());
  std::vector<int> line;
  for (int i = 0; i < 50; ++i) line.push_back(i);
  line.push_back(0);
  d.lines.push_back(line);
  d.vertices.push_back({3});
  d.polygons.push_back({0, 1, 2, 3});
  d.vectors_name = "X";
  for (int i = 0; i < 50; ++i) d.vectors.push_back(d.points[static_cast<std::size_t>(i)] * 0.5);

  const std::string text = to_vtk(d);
  CHECK(text.rfind("# vtk DataFile Version 3.0\n", 0) == 0);
  CHECK(text.find("DATASET POLYDATA") != std::string::npos);
  CHECK(text.find("LINES 1 52") != std::string::npos);
  const PolyData back = parse_vtk(text);
  CHECK(back.title == d.title);
  CHECK(back.points == d.points);
  CHECK(back.lines == d.lines);
  CHECK(back.vertices == d.vertices);
  CHECK(back.polygons == d.polygons);
  CHECK(back.vectors_name == "X");
  CHECK(back.vectors == d.vectors);
}

TEST_CASE("malformed inputs are rejected") {
  CHECK_THROWS_AS(parse_csv(""), IoError);
  CHECK_THROWS_AS(parse_csv("a,b\n1\n"), IoError);
  CHECK_THROWS_AS(parse_csv("a,b\n1,x\n"), IoError);
  CHECK_THROWS_AS(parse_json_table("{\"columns\": [\"a\"], \"rows\": [[1, 2]]}"), IoError);
  CHECK_THROWS_AS(parse_json_table("not json"), IoError);
  CHECK_THROWS_AS(parse_vtk("hello"), IoError);
  CHECK_THROWS_AS(parse_vtk("# vtk DataFile Version 3.0\nt\nASCII\nDATASET STRUCTURED_POINTS\n"),
                  IoError);
  CHECK_THROWS_AS(
      parse_vtk("# vtk DataFile Version 3.0\nt\nASCII\nDATASET POLYDATA\nPOINTS 1 double\n0 0 0\n"
                "LINES 1 3\n2 0 1\n"),
      IoError);
  CHECK_THROWS_AS(parse_format("xml"), std::invalid_argument);
  CHECK(parse_format("vtk") == Format::vtk);
}

TEST_CASE("file helpers report the path") {
  const auto dir = std::filesystem::temp_directory_path() / "beltrami_io_test";
  std::filesystem::remove_all(dir);
  write_text(dir / "nested" / "a.csv", "t,x,y,z\n");
  CHECK(read_text(dir / "nested" / "a.csv") == "t,x,y,z\n");
  try {
    read_text(dir / "missing.csv");
    FAIL("expected an IoError");
  } catch (const IoError& e) {
    CHECK(std::string(e.what()).find("missing.csv") != std::string::npos);
  }
  std::filesystem::remove_all(dir);
}
