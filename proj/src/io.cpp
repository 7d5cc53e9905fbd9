#include "beltrami/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace beltrami {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, sep)) out.push_back(field);
  if (!line.empty() && line.back() == sep) out.emplace_back();
  return out;
}

double parse_double(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw IoError("not a number: '" + s + "'");
  }
  if (used != s.size()) throw IoError("not a number: '" + s + "'");
  return v;
}

void write_cells(std::ostringstream& out, const char* keyword,
                 const std::vector<std::vector<int>>& cells) {
  if (cells.empty()) return;
  std::size_t size = 0;
  for (const auto& c : cells) size += c.size() + 1;
  out << keyword << ' ' << cells.size() << ' ' << size << '\n';
  for (const auto& c : cells) {
    out << c.size();
    for (int i : c) out << ' ' << i;
    out << '\n';
  }
}

std::vector<std::vector<int>> read_cells(std::istream& in, std::size_t count, std::size_t size,
                                         std::size_t n_points) {
  std::vector<std::vector<int>> cells(count);
  std::size_t consumed = 0;
  for (auto& cell : cells) {
    std::size_t n = 0;
    if (!(in >> n)) throw IoError("VTK: truncated cell list");
    cell.resize(n);
    for (int& i : cell) {
      if (!(in >> i) || i < 0 || static_cast<std::size_t>(i) >= n_points) {
        throw IoError("VTK: bad point index in cell list");
      }
    }
    consumed += n + 1;
  }
  if (consumed != size) throw IoError("VTK: cell list size mismatch");
  return cells;
}

Vec3d read_vec(std::istream& in) {
  std::string a, b, c;
  if (!(in >> a >> b >> c)) throw IoError("VTK: truncated coordinate list");
  return {parse_double(a), parse_double(b), parse_double(c)};
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "csv") return Format::csv;
  if (name == "json") return Format::json;
  if (name == "vtk") return Format::vtk;
  throw std::invalid_argument("unknown format '" + name + "' (expected csv, json or vtk)");
}

std::string extension(Format format) {
  switch (format) {
    case Format::csv:
      return ".csv";
    case Format::json:
      return ".json";
    case Format::vtk:
      return ".vtk";
  }
  return "";
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string to_csv(const Table& table) {
  std::ostringstream out;
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << table.columns[i];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
  return out.str();
}

Table parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  Table table;
  if (!std::getline(in, line)) throw IoError("CSV: missing header");
  table.columns = split(line, ',');
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split(line, ',');
    if (fields.size() != table.columns.size()) {
      throw IoError("CSV: line " + std::to_string(line_no) + " has " +
                    std::to_string(fields.size()) + " fields, expected " +
                    std::to_string(table.columns.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) row.push_back(parse_double(f));
    table.rows.push_back(std::move(row));
  }
  return table;
}

std::string to_json(const Table& table) {
  nlohmann::ordered_json j;
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  return j.dump(1) + "\n";
}

Table parse_json_table(const std::string& text) {
  try {
    const auto j = nlohmann::json::parse(text);
    Table table;
    table.columns = j.at("columns").get<std::vector<std::string>>();
    table.rows = j.at("rows").get<std::vector<std::vector<double>>>();
    for (const auto& row : table.rows) {
      if (row.size() != table.columns.size()) throw IoError("JSON table: ragged row");
    }
    return table;
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("JSON table: ") + e.what());
  }
}

std::string to_vtk(const PolyData& data) {
  std::ostringstream out;
  out << "# vtk DataFile Version 3.0\n" << data.title << "\nASCII\nDATASET POLYDATA\n";
  out << "POINTS " << data.points.size() << " double\n";
  for (const Vec3d& p : data.points) {
    out << format_double(p[0]) << ' ' << format_double(p[1]) << ' ' << format_double(p[2])
        << '\n';
  }
  write_cells(out, "VERTICES", data.vertices);
  write_cells(out, "LINES", data.lines);
  write_cells(out, "POLYGONS", data.polygons);
  if (!data.vectors_name.empty()) {
    out << "POINT_DATA " << data.vectors.size() << '\n';
    out << "VECTORS " << data.vectors_name << " double\n";
    for (const Vec3d& v : data.vectors) {
      out << format_double(v[0]) << ' ' << format_double(v[1]) << ' ' << format_double(v[2])
          << '\n';
    }
  }
  return out.str();
}

PolyData parse_vtk(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  PolyData data;
  if (!std::getline(in, line) || line.rfind("# vtk DataFile Version", 0) != 0) {
    throw IoError("VTK: missing version header");
  }
  std::getline(in, data.title);
  if (!std::getline(in, line) || line != "ASCII") throw IoError("VTK: only ASCII is supported");
  if (!std::getline(in, line) || line != "DATASET POLYDATA") {
    throw IoError("VTK: dataset is not POLYDATA");
  }
  std::string keyword;
  bool have_points = false;
  while (in >> keyword) {
    if (keyword == "POINTS") {
      std::size_t n = 0;
      std::string type;
      in >> n >> type;
      data.points.reserve(n);
      for (std::size_t i = 0; i < n; ++i) data.points.push_back(read_vec(in));
      have_points = true;
    } else if (keyword == "VERTICES" || keyword == "LINES" || keyword == "POLYGONS") {
      if (!have_points) throw IoError("VTK: cells before POINTS");
      std::size_t count = 0, size = 0;
      in >> count >> size;
      auto cells = read_cells(in, count, size, data.points.size());
      (keyword == "VERTICES" ? data.vertices : keyword == "LINES" ? data.lines : data.polygons) =
          std::move(cells);
    } else if (keyword == "POINT_DATA") {
      std::size_t n = 0;
      std::string vectors, type;
      in >> n >> vectors >> data.vectors_name >> type;
      if (vectors != "VECTORS") throw IoError("VTK: only VECTORS point data is supported");
      if (n != data.points.size()) throw IoError("VTK: POINT_DATA count mismatch");
      for (std::size_t i = 0; i < n; ++i) data.vectors.push_back(read_vec(in));
    } else {
      throw IoError("VTK: unexpected keyword '" + keyword + "'");
    }
  }
  if (!have_points) throw IoError("VTK: no POINTS section");
  return data;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(path.parent_path(), ec);
    if (ec) throw IoError("cannot create directory " + path.parent_path().string() + ": " +
                          ec.message());
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw IoError("write failed for " + path.string());
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string() + " for reading");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace beltrami
