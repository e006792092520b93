#include "elasticflow/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "elasticflow/error.hpp"

namespace elasticflow {

UniformGrid::UniformGrid(std::size_t n) : n_(n) {
  if (n < 4) throw ParameterError("UniformGrid: need n >= 4 cells, got " + std::to_string(n));
}

GridFunction::GridFunction(UniformGrid grid, std::vector<double> values)
    : grid_(grid), values_(std::move(values)) {
  if (values_.size() != grid_.nodes())
    throw ShapeError("GridFunction: expected " + std::to_string(grid_.nodes()) +
                     " values, got " + std::to_string(values_.size()));
}

GridFunction::GridFunction(UniformGrid grid, double fill)
    : grid_(grid), values_(grid.nodes(), fill) {}

GridFunction GridFunction::sample(UniformGrid grid, const std::function<double(double)>& f) {
  std::vector<double> v(grid.nodes());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = f(grid.x(i));
  return GridFunction(grid, std::move(v));
}

GridFunction GridFunction::reversed() const {
  std::vector<double> v(values_.rbegin(), values_.rend());
  return GridFunction(grid_, std::move(v));
}

bool GridFunction::all_finite() const {
  return std::all_of(values_.begin(), values_.end(), [](double v) { return std::isfinite(v); });
}

double GridFunction::max_abs() const {
  double m = 0.0;
  for (double v : values_) m = std::max(m, std::abs(v));
  return m;
}

void require_same_grid(const GridFunction& a, const GridFunction& b, const char* where) {
  if (!(a.grid() == b.grid()))
    throw ShapeError(std::string(where) + ": grid mismatch (n=" + std::to_string(a.n()) +
                     " vs n=" + std::to_string(b.n()) + ")");
}

}  // namespace elasticflow
