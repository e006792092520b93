#include "elasticflow/rearrange.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>

#include "elasticflow/discretization.hpp"
#include "elasticflow/error.hpp"
#include "elasticflow/quadrature.hpp"
#include "elasticflow/specialfn.hpp"

namespace elasticflow {

namespace {

void require_nonnegative(const GridFunction& f, const char* where) {
  for (std::size_t i = 0; i < f.size(); ++i)
    if (!(f[i] >= 0.0))
      throw DomainError(std::string(where) + ": data must be nonnegative (node " +
                        std::to_string(i) + ")");
}

}  // namespace

GridFunction decreasing_rearrangement(const GridFunction& f) {
  require_nonnegative(f, "decreasing_rearrangement");
  std::vector<double> v = f.values();
  std::sort(v.begin(), v.end(), std::greater<>());
  return GridFunction(f.grid(), std::move(v));
}

GridFunction symmetric_rearrangement(const GridFunction& f) {
  const GridFunction star = decreasing_rearrangement(f);
  const std::size_t n = f.n();
  GridFunction sym(f.grid());
  for (std::size_t i = 0; i <= n; ++i) sym[i] = star[i >= n - i ? 2 * i - n : n - 2 * i];
  return sym;
}

double counting_lp_norm(const GridFunction& f, double p) {
  if (std::isinf(p)) return f.max_abs();
  if (!(p >= 1.0)) throw ParameterError("counting_lp_norm: p must be >= 1");
  double sum = 0.0;
  for (double v : f.values()) sum += std::pow(std::abs(v), p);
  return std::pow(f.grid().h() * sum, 1.0 / p);
}

RearrangedPair rearrange(const GridFunction& f) {
  return {decreasing_rearrangement(f), symmetric_rearrangement(f)};
}

GridFunction talenti_comparison(const GridFunction& f) {
  const GridFunction star = decreasing_rearrangement(f);
  const std::size_t n = f.n();
  const double h = f.grid().h();
  const double limit = 0.5 * specialfn::c0() - specialfn::guard_band();
  const double half_norm = 0.5 * l2_norm(f);
  if (half_norm > limit)
    throw PreconditionError("talenti_comparison: |f|_L2 / 2 = " + std::to_string(half_norm) +
                            " exceeds c0/2 - guard = " + std::to_string(limit));

  // F(s) = 1/2 int_0^s f*; exact for the piecewise-linear interpolant.
  std::vector<double> cum(n + 1, 0.0);
  for (std::size_t k = 0; k < n; ++k) cum[k + 1] = cum[k] + 0.25 * h * (star[k] + star[k + 1]);
  if (cum[n] > limit)
    throw PreconditionError("talenti_comparison: 1/2 int f exceeds c0/2 - guard");

  std::vector<double> cell(n, 0.0);
  for (std::size_t k = 0; k < n; ++k) {
    const double f0 = star[k];
    const double df = star[k + 1] - star[k];
    const double base = cum[k];
    const double s0 = static_cast<double>(k) * h;
    cell[k] = quadrature::gauss_legendre(
        [=](double s) {
          const double r = s - s0;
          return specialfn::g_inv(base + 0.5 * (f0 * r + 0.5 * df * r * r / h));
        },
        s0, s0 + h);
  }
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t k = n; k-- > 0;) tail[k] = tail[k + 1] + 0.5 * cell[k];

  GridFunction v(f.grid());
  for (std::size_t i = 0; i <= n; ++i) v[i] = tail[i >= n - i ? 2 * i - n : n - 2 * i];
  return v;
}

TalentiReport talenti_inequality_check(const GridFunction& u) {
  const std::size_t n = u.n();
  const double h = u.grid().h();
  if (u[0] != 0.0 || u[n] != 0.0)
    throw PreconditionError("talenti_inequality_check: u must vanish at both ends");
  std::vector<double> sigma(n);
  for (std::size_t k = 0; k < n; ++k) {
    sigma[k] = (u[k + 1] - u[k]) / h;
    if (std::abs(sigma[k]) > 2.0)
      throw PreconditionError(
          "talenti_inequality_check: slope bound |u'| <= 2 violated (outside the convexity "
          "window of 1/G^{-1})");
    if (k > 0 && sigma[k] > sigma[k - 1] + 1e-12 * (1.0 + std::abs(sigma[k])))
      throw PreconditionError("talenti_inequality_check: u is not concave");
  }
  for (std::size_t i = 0; i <= n; ++i)
    if (u[i] < 0.0) throw PreconditionError("talenti_inequality_check: u must be nonnegative");

  GridFunction f(u.grid());
  for (std::size_t i = 1; i < n; ++i)
    f[i] = std::max(0.0, -(specialfn::g(sigma[i]) - specialfn::g(sigma[i - 1])) / h);
  f[0] = f[1];
  f[n] = f[n - 1];

  TalentiReport r{f, talenti_comparison(f), symmetric_rearrangement(u)};
  r.min_gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i <= n; ++i) r.min_gap = std::min(r.min_gap, r.v[i] - r.u_sym[i]);
  r.tol_mesh = 5.0 * h * (1.0 + f.max_abs());
  r.ok = r.min_gap >= -r.tol_mesh;
  return r;
}

double one_over_ginv_second_derivative(double s) {
  if (!(s > 0.0 && s < 0.5 * specialfn::c0() - specialfn::guard_band()))
    throw DomainError("one_over_ginv_second_derivative: s must lie in (0, c0/2 - guard)");
  const double y = specialfn::g_inv(s);
  return (2.0 - 0.5 * y * y) / (y * y * y) * std::pow(1.0 + y * y, 1.5);
}

GridFunction concave_from_slopes(const UniformGrid& grid, const std::vector<double>& slopes) {
  if (slopes.size() != grid.n())
    throw ShapeError("concave_from_slopes: need one slope per cell");
  const double mean = std::accumulate(slopes.begin(), slopes.end(), 0.0) /
                      static_cast<double>(slopes.size());
  GridFunction u(grid);
  for (std::size_t k = 0; k < grid.n(); ++k) u[k + 1] = u[k] + grid.h() * (slopes[k] - mean);
  u[grid.n()] = 0.0;
  for (double& v : u.values()) v = std::max(v, 0.0);
  return u;
}

}  // namespace elasticflow
