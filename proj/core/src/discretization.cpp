#include "elasticflow/discretization.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "elasticflow/error.hpp"
#include "energy_detail.hpp"

namespace elasticflow {

namespace {

struct Local {
  double p;
  double s;
};

Local local_at(const GridFunction& u, std::size_t i) {
  const double h = u.grid().h();
  return {(u[i + 1] - u[i - 1]) / (2.0 * h), (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (h * h)};
}

// W(p) = (1+p^2)^{-5/2} and its first two derivatives.
double w0(double p) { return std::pow(1.0 + p * p, -2.5); }
double w1(double p) { return -5.0 * p * std::pow(1.0 + p * p, -3.5); }
double w2(double p) {
  const double q = 1.0 + p * p;
  return -5.0 * std::pow(q, -3.5) + 35.0 * p * p * std::pow(q, -4.5);
}

void require_finite(const GridFunction& u, const char* where) {
  if (!u.all_finite()) throw DomainError(std::string(where) + ": non-finite nodal value");
}

}  // namespace

std::vector<double> energy_weights(const UniformGrid& grid) {
  std::vector<double> w(grid.nodes(), 1.0);
  w.front() = 0.0;
  w.back() = 0.0;
  w[1] = 1.5;
  w[grid.n() - 1] = 1.5;
  return w;
}

GridFunction first_diff(const GridFunction& u) {
  const std::size_t n = u.n();
  const double h = u.grid().h();
  GridFunction d(u.grid());
  d[0] = (-3.0 * u[0] + 4.0 * u[1] - u[2]) / (2.0 * h);
  d[n] = (3.0 * u[n] - 4.0 * u[n - 1] + u[n - 2]) / (2.0 * h);
  for (std::size_t i = 1; i < n; ++i) d[i] = local_at(u, i).p;
  return d;
}

GridFunction second_diff(const GridFunction& u) {
  GridFunction d(u.grid());
  for (std::size_t i = 1; i < u.n(); ++i) d[i] = local_at(u, i).s;
  return d;
}

double energy(const GridFunction& u) {
  require_finite(u, "energy");
  const auto w = energy_weights(u.grid());
  double sum = 0.0;
  for (std::size_t i = 1; i < u.n(); ++i) {
    const Local l = local_at(u, i);
    sum += w[i] * l.s * l.s * w0(l.p);
  }
  return u.grid().h() * sum;
}

namespace detail {

std::vector<double> coordinate_gradient(const GridFunction& u) {
  const std::size_t n = u.n();
  const double h = u.grid().h();
  const auto w = energy_weights(u.grid());
  std::vector<double> g(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const Local l = local_at(u, i);
    const double qs = 2.0 * l.s * w0(l.p);
    const double qp = l.s * l.s * w1(l.p);
    const double c = h * w[i];
    g[i - 1] += c * (-qp / (2.0 * h) + qs / (h * h));
    g[i] += c * (-2.0 * qs / (h * h));
    g[i + 1] += c * (qp / (2.0 * h) + qs / (h * h));
  }
  g.front() = 0.0;
  g.back() = 0.0;
  return g;
}

Eigen::SparseMatrix<double> interior_hessian(const GridFunction& u, bool gauss_newton) {
  const std::size_t n = u.n();
  const double h = u.grid().h();
  const auto w = energy_weights(u.grid());
  const std::array<double, 3> dp{-1.0 / (2.0 * h), 0.0, 1.0 / (2.0 * h)};
  const std::array<double, 3> ds{1.0 / (h * h), -2.0 / (h * h), 1.0 / (h * h)};

  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(9 * n);
  for (std::size_t i = 1; i < n; ++i) {
    const Local l = local_at(u, i);
    std::array<std::array<double, 3>, 3> local{};
    if (gauss_newton) {
      const double q = 1.0 + l.p * l.p;
      const double v = std::pow(q, -1.25);
      const double vp = -2.5 * l.p * std::pow(q, -2.25);
      std::array<double, 3> gr{};
      for (int a = 0; a < 3; ++a) gr[a] = v * ds[a] + l.s * vp * dp[a];
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) local[a][b] = 2.0 * gr[a] * gr[b];
    } else {
      const double qss = 2.0 * w0(l.p);
      const double qsp = 2.0 * l.s * w1(l.p);
      const double qpp = l.s * l.s * w2(l.p);
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b)
          local[a][b] = qpp * dp[a] * dp[b] + qsp * (dp[a] * ds[b] + ds[a] * dp[b]) +
                        qss * ds[a] * ds[b];
    }
    for (int a = 0; a < 3; ++a) {
      const std::size_t ja = i - 1 + a;
      if (ja == 0 || ja == n) continue;
      for (int b = 0; b < 3; ++b) {
        const std::size_t jb = i - 1 + b;
        if (jb == 0 || jb == n) continue;
        trips.emplace_back(static_cast<int>(ja - 1), static_cast<int>(jb - 1),
                           h * w[i] * local[a][b]);
      }
    }
  }
  const int m = static_cast<int>(n - 1);
  Eigen::SparseMatrix<double> H(m, m);
  H.setFromTriplets(trips.begin(), trips.end());
  return H;
}

}  // namespace detail

GridFunction energy_gradient(const GridFunction& u) {
  require_finite(u, "energy_gradient");
  auto g = detail::coordinate_gradient(u);
  const double inv_h = static_cast<double>(u.n());
  for (double& v : g) v *= inv_h;
  return GridFunction(u.grid(), std::move(g));
}

double gradient_term_scale(const GridFunction& u) {
  const std::size_t n = u.n();
  const double h = u.grid().h();
  const auto w = energy_weights(u.grid());
  std::vector<double> acc(n + 1, 0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const Local l = local_at(u, i);
    const double qs = std::abs(2.0 * l.s * w0(l.p)) * w[i];
    const double qp = std::abs(l.s * l.s * w1(l.p)) * w[i];
    acc[i - 1] += qp / (2.0 * h) + qs / (h * h);
    acc[i] += 2.0 * qs / (h * h);
    acc[i + 1] += qp / (2.0 * h) + qs / (h * h);
  }
  double m = 0.0;
  for (std::size_t j = 1; j < n; ++j) m = std::max(m, acc[j]);
  return m;
}

double first_variation(const GridFunction& u, const GridFunction& phi) {
  require_same_grid(u, phi, "first_variation");
  require_finite(u, "first_variation");
  const auto w = energy_weights(u.grid());
  double sum = 0.0;
  for (std::size_t i = 1; i < u.n(); ++i) {
    const Local l = local_at(u, i);
    const Local lphi = local_at(phi, i);
    sum += w[i] * (2.0 * l.s * lphi.s * w0(l.p) + l.s * l.s * w1(l.p) * lphi.p);
  }
  return u.grid().h() * sum;
}

GridFunction a_u(const GridFunction& u) {
  GridFunction a(u.grid());
  for (std::size_t i = 1; i < u.n(); ++i) {
    const Local l = local_at(u, i);
    a[i] = l.s * std::pow(1.0 + l.p * l.p, -1.25);
  }
  return a;
}

double l2_inner(const GridFunction& u, const GridFunction& v) {
  require_same_grid(u, v, "l2_inner");
  const std::size_t n = u.n();
  double sum = 0.5 * (u[0] * v[0] + u[n] * v[n]);
  for (std::size_t i = 1; i < n; ++i) sum += u[i] * v[i];
  return u.grid().h() * sum;
}

double l2_norm(const GridFunction& u) { return std::sqrt(l2_inner(u, u)); }

Obstacle::Obstacle(Kind kind, double parameter, GridFunction samples)
    : kind_(kind), parameter_(parameter), samples_(std::move(samples)) {
  if (!samples_.all_finite()) throw DomainError("Obstacle: non-finite sample");
  const double top = *std::max_element(samples_.values().begin(), samples_.values().end());
  assumption1_ok_ = samples_[0] < 0.0 && samples_[samples_.n()] < 0.0 && top > 0.0;
}

Obstacle Obstacle::cone(const UniformGrid& grid, double height) {
  return cone(grid, height, -height);
}

Obstacle Obstacle::cone(const UniformGrid& grid, double height, double endpoint) {
  if (!(height > 0.0) || !std::isfinite(height))
    throw ParameterError("Obstacle::cone: height must be finite and > 0");
  if (!(endpoint < height)) throw ParameterError("Obstacle::cone: endpoint must be below height");
  const std::size_t n = grid.n();
  GridFunction psi(grid);
  for (std::size_t i = 0; i <= n; ++i) {
    // min(i, n-i) keeps the samples exactly symmetric.
    const double d = static_cast<double>(std::min(i, n - i)) / static_cast<double>(n);
    psi[i] = endpoint + (height - endpoint) * 2.0 * d;
  }
  if (n % 2 == 0) psi[n / 2] = height;
  return Obstacle(Kind::Cone, height, std::move(psi));
}

Obstacle Obstacle::table(GridFunction samples) {
  return Obstacle(Kind::Table, std::numeric_limits<double>::quiet_NaN(), std::move(samples));
}

Obstacle Obstacle::constant(const UniformGrid& grid, double level) {
  if (!std::isfinite(level)) throw ParameterError("Obstacle::constant: level must be finite");
  return Obstacle(Kind::Constant, level, GridFunction(grid, level));
}

std::string Obstacle::kind_name() const {
  switch (kind_) {
    case Kind::Cone: return "cone";
    case Kind::Table: return "table";
    case Kind::Constant: return "constant";
  }
  return "unknown";
}

}  // namespace elasticflow
