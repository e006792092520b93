#include "elasticflow/profile_io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <vector>

#include "elasticflow/error.hpp"

namespace elasticflow {

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& field, const std::string& where) {
  const std::string t = trim(field);
  char* end = nullptr;
  errno = 0;
  const double v = std::strtod(t.c_str(), &end);
  if (t.empty() || end != t.c_str() + t.size() || errno == ERANGE || !std::isfinite(v))
    throw ParameterError(where + ": not a finite number: '" + t + "'");
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.15g", v == 0.0 ? 0.0 : v);
  return buf;
}

GridFunction read_profile(const std::filesystem::path& path, std::optional<std::size_t> expected_n) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open profile " + path.string());
  std::string line;
  std::size_t lineno = 0;
  std::vector<double> xs;
  std::vector<double> vs;
  bool header = false;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string where = path.string() + ":" + std::to_string(lineno);
    if (trim(line).empty()) continue;
    if (!header) {
      if (trim(line) != "x,value")
        throw ParameterError(where + ": expected header 'x,value'");
      header = true;
      continue;
    }
    const auto comma = line.find(',');
    if (comma == std::string::npos || line.find(',', comma + 1) != std::string::npos)
      throw ParameterError(where + ": expected two comma-separated fields");
    xs.push_back(parse_number(line.substr(0, comma), where));
    vs.push_back(parse_number(line.substr(comma + 1), where));
  }
  if (!header) throw ParameterError(path.string() + ": empty profile");
  if (vs.size() < 5) throw ShapeError(path.string() + ": need at least 5 nodes");
  const std::size_t n = vs.size() - 1;
  if (expected_n && *expected_n != n)
    throw ShapeError(path.string() + ": has " + std::to_string(n + 1) + " nodes, expected " +
                     std::to_string(*expected_n + 1));
  const UniformGrid grid(n);
  for (std::size_t i = 0; i <= n; ++i)
    if (std::abs(xs[i] - grid.x(i)) > 1e-9)
      throw ShapeError(path.string() + ": row " + std::to_string(i) + " has x = " +
                       format_number(xs[i]) + ", expected " + format_number(grid.x(i)));
  return GridFunction(grid, std::move(vs));
}

void write_profile(const std::filesystem::path& path, const GridFunction& u) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path.string());
  out << "x,value\n";
  for (std::size_t i = 0; i < u.size(); ++i)
    out << format_number(u.grid().x(i)) << ',' << format_number(u[i]) << '\n';
  if (!out) throw Error("write failed for " + path.string());
}

}  // namespace elasticflow
