#pragma once

// File exports: numeric tables as CSV or JSON, and legacy VTK 3.0 ASCII
// POLYDATA. Every number is written with 17 significant digits so that
// reading a file back reproduces the in-memory doubles.

#include <array>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "beltrami/linalg.hpp"

namespace beltrami {

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Format { csv, json, vtk };

Format parse_format(const std::string& name);  // throws std::invalid_argument
std::string extension(Format format);

/// Full-precision decimal ("%.17g").
std::string format_double(double v);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

inline const std::vector<std::string> kKnotColumns = {"t", "x", "y", "z"};
inline const std::vector<std::string> kCandidateColumns = {"x",        "y",             "z",
                                                           "residual", "knot_distance", "refined"};
inline const std::vector<std::string> kGlyphColumns = {"x", "y", "z", "Xx", "Xy", "Xz"};

/// Header line, then one line per row; LF endings.
std::string to_csv(const Table& table);
Table parse_csv(const std::string& text);

/// {"columns": [...], "rows": [[...], ...]}
std::string to_json(const Table& table);
Table parse_json_table(const std::string& text);

struct PolyData {
  std::string title = "beltrami";
  std::vector<Vec3d> points;
  std::vector<std::vector<int>> vertices;
  std::vector<std::vector<int>> lines;
  std::vector<std::vector<int>> polygons;
  std::string vectors_name;       // POINT_DATA VECTORS, when non-empty
  std::vector<Vec3d> vectors;
};

std::string to_vtk(const PolyData& data);
/// Throws IoError unless the text is a legacy ASCII POLYDATA file.
PolyData parse_vtk(const std::string& text);

/// Text file helpers; errors carry the path.
void write_text(const std::filesystem::path& path, const std::string& text);
std::string read_text(const std::filesystem::path& path);

}  // namespace beltrami
