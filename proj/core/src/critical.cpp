#include "elasticflow/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "elasticflow/error.hpp"
#include "elasticflow/quadrature.hpp"
#include "elasticflow/specialfn.hpp"

namespace elasticflow {

namespace {

constexpr std::size_t kSamples = 513;

double phi(double z) { return std::pow(1.0 + z * z, -1.25); }

// int_0^w phi(A - t^2) dt and int_0^w (A - t^2) phi(A - t^2) dt.
double x_integral(double A, double w) {
  return quadrature::adaptive([A](double t) { return phi(A - t * t); }, 0.0, w, 1e-15);
}
double u_integral(double A, double w) {
  return quadrature::adaptive(
      [A](double t) {
        const double z = A - t * t;
        return z * phi(z);
      },
      0.0, w, 1e-15);
}

double total_i0(double A) { return 2.0 * x_integral(A, std::sqrt(A)); }

struct Hermite {
  double t, dx;
  double value(double y0, double y1, double d0, double d1) const {
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * y0 + (t3 - 2 * t2 + t) * dx * d0 + (-2 * t3 + 3 * t2) * y1 +
           (t3 - t2) * dx * d1;
  }
};

}  // namespace

double f_of_z(double z, double A) {
  if (!(A > 0.0) || !std::isfinite(A)) throw DomainError("f_of_z: A must be finite and > 0");
  if (!(z >= 0.0 && z <= A)) throw DomainError("f_of_z: z must lie in [0, A]");
  return x_integral(A, std::sqrt(A - z)) / total_i0(A);
}

CriticalPoint critical_profile(double height, const UniformGrid& grid) {
  const std::size_t n = grid.n();
  if (n % 2 != 0) throw ParameterError("critical_profile: grid needs an even number of cells");
  const double A = specialfn::h_inv(height);
  const double root = std::sqrt(A);

  // Chebyshev nodes in w cluster samples at both ends of the slope range.
  std::vector<double> w(kSamples), x(kSamples), u(kSamples);
  for (std::size_t k = 0; k < kSamples; ++k)
    w[k] = 0.5 * root *
           (1.0 - std::cos(std::numbers::pi * static_cast<double>(k) /
                           static_cast<double>(kSamples - 1)));
  w.back() = root;
  double cx = 0.0;
  double cu = 0.0;
  x[0] = u[0] = 0.0;
  for (std::size_t k = 1; k < kSamples; ++k) {
    cx += quadrature::gauss_legendre([A](double t) { return phi(A - t * t); }, w[k - 1], w[k]);
    cu += quadrature::gauss_legendre(
        [A](double t) {
          const double z = A - t * t;
          return z * phi(z);
        },
        w[k - 1], w[k]);
    x[k] = cx;
    u[k] = cu;
  }
  const double i0 = 2.0 * cx;
  for (std::size_t k = 0; k < kSamples; ++k) {
    x[k] /= i0;
    u[k] /= i0;
  }
  x.back() = 0.5;

  CriticalPoint cp(grid);
  cp.height = height;
  cp.A = A;
  cp.i0 = i0;
  const auto slope = [&](std::size_t k) { return A - w[k] * w[k]; };
  const auto curvature = [&](std::size_t k) {
    const double z = slope(k);
    return -2.0 * w[k] * i0 * std::pow(1.0 + z * z, 1.25);
  };
  for (std::size_t i = 0; i <= n / 2; ++i) {
    const double xi = grid.x(i);
    double ui = 0.0;
    double zi = 0.0;
    if (i == 0) {
      zi = A;
    } else if (i == n / 2) {
      ui = u.back();
    } else {
      auto it = std::upper_bound(x.begin(), x.end(), xi);
      const std::size_t k = static_cast<std::size_t>(it - x.begin()) - 1;
      const Hermite hm{(xi - x[k]) / (x[k + 1] - x[k]), x[k + 1] - x[k]};
      ui = hm.value(u[k], u[k + 1], slope(k), slope(k + 1));
      zi = hm.value(slope(k), slope(k + 1), curvature(k), curvature(k + 1));
    }
    cp.profile[i] = ui;
    cp.profile[n - i] = ui;
    cp.slope_profile[i] = zi;
    cp.slope_profile[n - i] = -zi;
  }
  cp.energy = energy(cp.profile);
  cp.sample_w = std::move(w);
  cp.sample_x = std::move(x);
  cp.sample_u = std::move(u);

  CriticalResiduals& r = cp.residuals;
  r.h_roundtrip = std::abs(specialfn::h_of_A(A) - height);
  r.height_residual = std::abs(cp.profile[n / 2] - height);
  const GridFunction s = second_diff(cp.profile);
  r.concavity_min = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i <= n / 2; ++i) r.concavity_min = std::min(r.concavity_min, -s[i]);
  const FlowConfig defaults;
  const CriticalCheck check = check_critical(cp.profile, Obstacle::cone(grid, height),
                                             defaults.coincidence_tol_for(grid));
  r.vi_residual = check.vi_residual;
  r.vi_scale = check.scale;
  r.ode_residual = ode_residual(cp);
  return cp;
}

double ode_residual(const CriticalPoint& cp, double x_lo, double x_hi) {
  const double A = cp.A;
  const double root = std::sqrt(A);
  const double i0 = total_i0(A);
  double worst = 0.0;
  for (std::size_t i = 0; i <= cp.grid.n(); ++i) {
    const double xi = cp.grid.x(i);
    if (xi < x_lo || xi > x_hi) continue;
    // Mirror to the left half, where u' = J(u) > 0.
    const std::size_t j = xi <= 0.5 ? i : cp.grid.n() - i;
    const double target = cp.profile[j];
    double lo = 0.0;
    double hi = root;
    double wv = 0.5 * root;
    for (int it = 0; it < 200; ++it) {
      const double r = u_integral(A, wv) / i0 - target;
      if (r > 0.0) hi = wv;
      else lo = wv;
      const double z = A - wv * wv;
      const double du = z * phi(z) / i0;
      double next = du > 0.0 ? wv - r / du : 0.5 * (lo + hi);
      if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
      const double step = std::abs(next - wv);
      wv = next;
      if (step <= 1e-15 * root || hi - lo <= 1e-15 * root) break;
    }
    if (!(wv >= 0.0 && wv <= root)) throw ConvergenceError("ode_residual: inversion bracket failed");
    const double j_of_u = A - wv * wv;
    worst = std::max(worst, std::abs(cp.slope_profile[j] - j_of_u));
  }
  return worst;
}

CriticalCheck check_critical(const GridFunction& u, const Obstacle& psi, double coincidence_tol) {
  require_same_grid(u, psi.samples(), "check_critical");
  CriticalCheck c;
  const GridFunction grad = energy_gradient(u);
  const GridFunction s = second_diff(u);
  c.vi_residual = std::numeric_limits<double>::infinity();
  c.max_second_diff = -std::numeric_limits<double>::infinity();
  c.min_value = std::min(u[0], u[u.n()]);
  for (std::size_t i = 1; i < u.n(); ++i) {
    const bool active = u[i] - psi[i] <= coincidence_tol;
    if (active) c.coincidence.push_back(i);
    c.vi_residual = std::min(c.vi_residual, active ? grad[i] : -std::abs(grad[i]));
    c.max_second_diff = std::max(c.max_second_diff, s[i]);
    c.min_value = std::min(c.min_value, u[i]);
  }
  c.scale = 1.0 + gradient_term_scale(u);
  return c;
}

StepResult discrete_critical_point(const CriticalPoint& cp, const FlowConfig& cfg) {
  const Obstacle psi = Obstacle::cone(cp.grid, cp.height);
  GridFunction start = cp.profile;
  start[0] = 0.0;
  start[cp.grid.n()] = 0.0;
  for (std::size_t i = 1; i < cp.grid.n(); ++i) start[i] = std::max(start[i], psi[i]);
  return minimize_energy(start, psi, cfg);
}

}  // namespace elasticflow
