#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace elasticflow {

/// Uniform grid on [0,1] with n cells; node i sits at i/n.
class UniformGrid {
 public:
  explicit UniformGrid(std::size_t n);

  std::size_t n() const { return n_; }
  std::size_t nodes() const { return n_ + 1; }
  double h() const { return 1.0 / static_cast<double>(n_); }
  double x(std::size_t i) const { return static_cast<double>(i) / static_cast<double>(n_); }

  bool operator==(const UniformGrid& other) const { return n_ == other.n_; }

 private:
  std::size_t n_;
};

/// Nodal values on a UniformGrid, endpoints included.
class GridFunction {
 public:
  GridFunction(UniformGrid grid, std::vector<double> values);
  explicit GridFunction(UniformGrid grid, double fill = 0.0);

  static GridFunction sample(UniformGrid grid, const std::function<double(double)>& f);

  const UniformGrid& grid() const { return grid_; }
  std::size_t n() const { return grid_.n(); }
  std::size_t size() const { return values_.size(); }

  double operator[](std::size_t i) const { return values_[i]; }
  double& operator[](std::size_t i) { return values_[i]; }

  const std::vector<double>& values() const { return values_; }
  std::vector<double>& values() { return values_; }

  /// Node-reversed copy: result[i] = (*this)[n - i].
  GridFunction reversed() const;

  bool all_finite() const;
  double max_abs() const;

 private:
  UniformGrid grid_;
  std::vector<double> values_;
};

/// Throws ShapeError unless both functions live on the same grid.
void require_same_grid(const GridFunction& a, const GridFunction& b, const char* where);

}  // namespace elasticflow
