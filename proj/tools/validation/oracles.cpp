#include "validation/oracles.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace elasticflow::oracle {

namespace {

double simpson_step(const std::function<double(double)>& f, double a, double b, double fa,
                    double fm, double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
  return simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

// 20-point Gauss-Legendre nodes and weights on [-1, 1], computed once by
// Newton on the Legendre recurrence.
struct Legendre20 {
  std::array<double, 20> x{};
  std::array<double, 20> w{};
  Legendre20() {
    constexpr int n = 20;
    for (int i = 0; i < n; ++i) {
      double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
      double dp = 0.0;
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0;
        double p1 = z;
        for (int k = 2; k <= n; ++k) {
          const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
          p0 = p1;
          p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        const double dz = p1 / dp;
        z -= dz;
        if (std::abs(dz) < 1e-16) break;
      }
      x[i] = z;
      w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
  }
};

double composite(const std::function<double(double)>& f, double a, double b, int panels) {
  static const Legendre20 rule;
  const double width = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double mid = lo + 0.5 * width;
    for (int i = 0; i < 20; ++i) sum += 0.5 * width * rule.w[i] * f(mid + 0.5 * width * rule.x[i]);
  }
  return sum;
}

}  // namespace

double simpson(const std::function<double(double)>& f, double a, double b, double tol) {
  const double fa = f(a);
  const double fb = f(b);
  const double fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return simpson_step(f, a, b, fa, fm, fb, whole, tol, 50);
}

double parabola_energy() {
  const auto anti = [](double t) {
    return t * (2.0 * t * t + 3.0) / (3.0 * std::pow(1.0 + t * t, 1.5));
  };
  return 4.0 * (anti(1.0) - anti(0.0));
}

double c0_beta() {
  return std::sqrt(std::numbers::pi) * std::tgamma(0.75) / std::tgamma(1.25);
}

double hyp2f1_euler(double a, double b, double c, double z) {
  const double pref = std::tgamma(c) / (std::tgamma(b) * std::tgamma(c - b));
  const double e = c - b - 1.0;
  // t = s^2: t^{b-1} dt = 2 s^{2b-1} ds.
  const auto lower = [=](double s) {
    const double t = s * s;
    return 2.0 * std::pow(s, 2.0 * b - 1.0) * std::pow(1.0 - t, e) * std::pow(1.0 - z * t, -a);
  };
  // 1 - t = w^4: (1-t)^e dt = 4 w^{4e+3} dw.
  const auto upper = [=](double w) {
    const double t = 1.0 - w * w * w * w;
    return 4.0 * std::pow(w, 4.0 * e + 3.0) * std::pow(t, b - 1.0) * std::pow(1.0 - z * t, -a);
  };
  const double s_half = std::sqrt(0.5);
  const double w_half = std::pow(0.5, 0.25);
  return pref * (composite(lower, 0.0, s_half, 16) + composite(upper, 0.0, w_half, 16));
}

double g_simpson(double s) {
  return simpson([](double t) { return std::pow(1.0 + t * t, -1.25); }, 0.0, s, 1e-14);
}

}  // namespace elasticflow::oracle
