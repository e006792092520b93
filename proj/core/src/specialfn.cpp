#include "elasticflow/specialfn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "elasticflow/error.hpp"
#include "elasticflow/quadrature.hpp"

namespace elasticflow::specialfn {

namespace {

constexpr double kGTol = 1e-13;
constexpr double kTruncation = 1e6;

double integrand(double t) { return std::pow(1.0 + t * t, -1.25); }

// (1+t^2)^{-5/4} dt on [1, s] after t = v^{-2}.
double inverted_integrand(double v) {
  const double v2 = v * v;
  return 2.0 * v2 * std::pow(1.0 + v2 * v2, -1.25);
}

double g_on_unit_interval() {
  static const double value = quadrature::adaptive(integrand, 0.0, 1.0, 1e-15);
  return value;
}

// phi(z) = (1+z^2)^{-5/4} evaluated at z = A - w^2.
double slope_weight(double A, double w) { return integrand(A - w * w); }

bool is_nonpositive_integer(double c) { return c <= 0.0 && c == std::round(c); }

double series_2f1(double a, double b, double c, double z, double tol,
                  std::size_t max_terms) {
  double sum = 1.0;
  double term = 1.0;
  const double n_monotone = std::ceil(std::abs(a) + std::abs(b) + std::abs(c)) + 2.0;
  for (std::size_t n = 0; n < max_terms; ++n) {
    const double dn = static_cast<double>(n);
    term *= (a + dn) * (b + dn) / ((c + dn) * (dn + 1.0)) * z;
    sum += term;
    if (term == 0.0) return sum;
    if (dn + 1.0 < n_monotone) continue;
    const double next_ratio =
        std::abs((a + dn + 1.0) * (b + dn + 1.0) / ((c + dn + 1.0) * (dn + 2.0)) * z);
    const double rho = std::max(next_ratio, std::abs(z));
    if (rho < 1.0) {
      const double tail = std::abs(term) * rho / (1.0 - rho);
      if (tail <= tol * std::abs(sum)) return sum;
    }
  }
  throw ConvergenceError("hyp2f1: series did not converge within " +
                         std::to_string(max_terms) + " terms at z=" + std::to_string(z));
}

}  // namespace

double g_prime(double s) { return integrand(s); }

double g(double s) {
  if (!std::isfinite(s)) throw DomainError("g: argument must be finite");
  if (s == 0.0) return 0.0;
  const double a = std::abs(s);
  double value = 0.0;
  if (a <= 1.0) {
    value = quadrature::adaptive(integrand, 0.0, a, kGTol);
  } else {
    value = g_on_unit_interval() +
            quadrature::adaptive(inverted_integrand, 1.0 / std::sqrt(a), 1.0, kGTol);
  }
  return s < 0.0 ? -value : value;
}

double c0_by_truncated_quadrature() {
  double half = quadrature::adaptive(integrand, 0.0, 1.0, 1e-15);
  // Geometric panels keep the Kronrod error estimates honest on [1, M].
  for (double lo = 1.0; lo < kTruncation; lo *= 10.0)
    half += quadrature::adaptive(integrand, lo, std::min(10.0 * lo, kTruncation), 1e-15);
  const double tail = (4.0 / 3.0) * std::pow(kTruncation, -1.5);
  return 2.0 * half + tail;
}

double c0_by_saturation_limit() {
  return 2.0 * (quadrature::adaptive(integrand, 0.0, 1.0, 1e-15) +
                quadrature::adaptive(inverted_integrand, 0.0, 1.0, 1e-15));
}

double c0() {
  static const double value = c0_by_truncated_quadrature();
  return value;
}

double guard_band() { return 1e-9 * c0(); }

double g_inv(double y) {
  if (!std::isfinite(y)) throw DomainError("g_inv: argument must be finite");
  const double limit = 0.5 * c0() - guard_band();
  if (std::abs(y) >= limit)
    throw RangeError("g_inv: |y| must be below c0/2 - guard (" + std::to_string(limit) +
                     "), got " + std::to_string(y));
  if (y == 0.0) return 0.0;
  const double target = std::abs(y);

  const double sat = 2.0 * target / c0();
  double s = target / (1.0 - sat * sat);
  double lo = 0.0;
  double hi = std::max(s, target);
  while (g(hi) < target) {
    lo = hi;
    hi *= 2.0;
  }
  s = std::clamp(s, lo, hi);

  for (int it = 0; it < 200; ++it) {
    const double r = g(s) - target;
    if (r == 0.0) break;
    if (r > 0.0) hi = s;
    else lo = s;
    double next = s - r / g_prime(s);
    if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
    const double step = std::abs(next - s);
    s = next;
    if (step <= 4.0 * std::numeric_limits<double>::epsilon() * s) break;
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * hi) break;
  }
  return y < 0.0 ? -s : s;
}

double hyp2f1(const HypergeometricParams& p, double z) {
  if (!(std::isfinite(p.a) && std::isfinite(p.b) && std::isfinite(p.c) && std::isfinite(z)))
    throw DomainError("hyp2f1: non-finite argument");
  if (is_nonpositive_integer(p.c))
    throw ParameterError("hyp2f1: c must not be a nonpositive integer");
  if (!(p.series_tol > 0.0) || p.max_terms < 1)
    throw ParameterError("hyp2f1: series_tol must be > 0 and max_terms >= 1");
  if (z >= 1.0) throw DomainError("hyp2f1: only z < 1 is supported");
  if (z >= 0.0) return series_2f1(p.a, p.b, p.c, z, p.series_tol, p.max_terms);
  const double mapped = z / (z - 1.0);
  return std::pow(1.0 - z, -p.a) *
         series_2f1(p.a, p.c - p.b, p.c, mapped, p.series_tol, p.max_terms);
}

double h_of_A(double A) {
  if (!std::isfinite(A) || A < 0.0) throw DomainError("h_of_A: A must be finite and >= 0");
  if (A == 0.0) return 0.0;
  const double x = A * A / (1.0 + A * A);
  const double upper = hyp2f1({1.0, 0.25, 1.75}, x);
  const double lower = hyp2f1({1.0, 0.25, 0.75}, x);
  return A / 3.0 * upper / lower;
}

double h_of_A_quadrature(double A) {
  if (!std::isfinite(A) || A < 0.0)
    throw DomainError("h_of_A_quadrature: A must be finite and >= 0");
  if (A == 0.0) return 0.0;
  const double root = std::sqrt(A);
  const double den = quadrature::adaptive(
      [A](double w) { return 2.0 * slope_weight(A, w); }, 0.0, root, 1e-15);
  const double num = quadrature::adaptive(
      [A](double w) { return 2.0 * (A - w * w) * slope_weight(A, w); }, 0.0, root, 1e-15);
  return 0.5 * num / den;
}

double h_inv(double h) {
  if (!std::isfinite(h) || h <= 0.0) throw RangeError("h_inv: height must be > 0");
  double lo = 0.0;
  double hi = std::max(3.0 * h, 1e-6);
  while (h_of_A(hi) < h) {
    lo = hi;
    hi *= 2.0;
    if (lo >= kMaxConeSlope)
      throw RangeError("h_inv: height " + std::to_string(h) +
                       " exceeds H on the slope bracket [0, " +
                       std::to_string(kMaxConeSlope) + "]");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (h_of_A(mid) < h) lo = mid;
    else hi = mid;
  }
  double A = 0.5 * (lo + hi);
  for (int it = 0; it < 3; ++it) {
    const double delta = 1e-6 * A;
    const double slope = (h_of_A(A + delta) - h_of_A(A - delta)) / (2.0 * delta);
    const double next = A - (h_of_A(A) - h) / slope;
    if (!(next >= lo && next <= hi)) break;
    A = next;
  }
  return A;
}

double u_c_slope(double c, double x) {
  if (!(c > 0.0 && c < c0())) throw DomainError("u_c: c must lie in (0, c0)");
  if (!(x >= 0.0 && x <= 1.0)) throw DomainError("u_c: x must lie in [0, 1]");
  return g_inv(0.5 * c - c * x);
}

double u_c_value(double c, double x) {
  const double s = u_c_slope(c, x);
  const double s_mid = g_inv(0.5 * c);
  return 2.0 / c * (std::pow(1.0 + s * s, -0.25) - std::pow(1.0 + s_mid * s_mid, -0.25));
}

}  // namespace elasticflow::specialfn
