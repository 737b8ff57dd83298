#pragma once

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "isoclouds/point_cloud.hpp"

namespace isoclouds {

enum class CloudFormat { Csv, Xyz };

// CSV: one point per line, comma-separated reals, dimension taken from the
// first data line; blank lines and '#' comments skipped.
// XYZ: chemistry format, atom count then comment then "element x y z" lines;
// the element symbol is ignored and the dimension is always 3.
// Format is picked from the file extension (.xyz), everything else is CSV.

namespace detail {

inline bool parse_double(const std::string& tok, double& out) {
  const char* begin = tok.c_str();
  char* end = nullptr;
  out = std::strtod(begin, &end);
  if (end == begin) return false;
  while (*end != '\0') {
    if (!std::isspace(static_cast<unsigned char>(*end))) return false;
    ++end;
  }
  return std::isfinite(out);
}

inline std::string strip(const std::string& s) {
  std::size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

}  // namespace detail

inline PointCloud parse_csv(std::istream& in, const std::string& name) {
  std::vector<std::vector<double>> points;
  std::string line;
  int lineno = 0;
  int dim = -1;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = detail::strip(line);
    if (s.empty() || s[0] == '#') continue;
    std::vector<double> p;
    std::stringstream ss(s);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
      double x;
      if (!detail::parse_double(tok, x))
        throw ParseError(name + ":" + std::to_string(lineno) + ": bad number '" +
                             detail::strip(tok) + "'",
                         lineno);
      p.push_back(x);
    }
    if (dim < 0) dim = static_cast<int>(p.size());
    if (static_cast<int>(p.size()) != dim || dim == 0)
      throw ParseError(name + ":" + std::to_string(lineno) + ": expected " +
                           std::to_string(dim) + " coordinates",
                       lineno);
    points.push_back(std::move(p));
  }
  if (points.empty()) throw ParseError(name + ": no points", lineno == 0 ? 1 : lineno);
  return PointCloud::from_points(points);
}

inline PointCloud parse_xyz(std::istream& in, const std::string& name) {
  std::string line;
  int lineno = 0;
  if (!std::getline(in, line)) throw ParseError(name + ": empty file", 1);
  ++lineno;
  long count = 0;
  {
    std::string s = detail::strip(line);
    char* end = nullptr;
    count = std::strtol(s.c_str(), &end, 10);
    if (end == s.c_str() || *end != '\0' || count < 1)
      throw ParseError(name + ":1: expected atom count", 1);
  }
  if (!std::getline(in, line)) throw ParseError(name + ":2: missing comment line", 2);
  ++lineno;

  std::vector<std::vector<double>> points;
  for (long i = 0; i < count; ++i) {
    if (!std::getline(in, line))
      throw ParseError(name + ": expected " + std::to_string(count) + " atom lines", lineno);
    ++lineno;
    std::stringstream ss(line);
    std::string el, xs, ys, zs;
    if (!(ss >> el >> xs >> ys >> zs))
      throw ParseError(name + ":" + std::to_string(lineno) + ": expected 'element x y z'",
                       lineno);
    double x, y, z;
    if (!detail::parse_double(xs, x) || !detail::parse_double(ys, y) ||
        !detail::parse_double(zs, z))
      throw ParseError(name + ":" + std::to_string(lineno) + ": bad coordinate", lineno);
    points.push_back({x, y, z});
  }
  return PointCloud::from_points(points);
}

inline CloudFormat format_from_path(const std::string& path) {
  auto pos = path.find_last_of('.');
  if (pos != std::string::npos) {
    std::string ext = path.substr(pos + 1);
    for (char& c : ext) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (ext == "xyz") return CloudFormat::Xyz;
  }
  return CloudFormat::Csv;
}

inline PointCloud read_cloud_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError(path + ": cannot open", 0);
  return format_from_path(path) == CloudFormat::Xyz ? parse_xyz(in, path) : parse_csv(in, path);
}

}  // namespace isoclouds
