#include "elasticflow/quadrature.hpp"

#include <boost/math/quadrature/gauss.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>
#include <queue>

#include "elasticflow/error.hpp"

namespace elasticflow::quadrature {

namespace {

using Kronrod = boost::math::quadrature::gauss_kronrod<double, 15>;
using Legendre = boost::math::quadrature::gauss<double, 10>;

constexpr std::size_t kMaxPanels = 4000;

struct Panel {
  double a, b, value, err;
  bool operator<(const Panel& o) const { return err < o.err; }
};

Panel make_panel(const Integrand& f, double a, double b) {
  double err = 0.0;
  const double v = Kronrod::integrate(f, a, b, 0, 0.0, &err);
  return {a, b, v, err};
}

}  // namespace

double adaptive(const Integrand& f, double a, double b, double abs_tol) {
  if (!(std::isfinite(a) && std::isfinite(b)))
    throw DomainError("quadrature::adaptive: interval must be finite");
  if (a == b) return 0.0;
  if (a > b) return -adaptive(f, b, a, abs_tol);
  // Global bisection of the worst panel until the summed error estimate meets
  // abs_tol or sits at the round-off level of the total.
  std::priority_queue<Panel> heap;
  heap.push(make_panel(f, a, b));
  double total = heap.top().value;
  double err = heap.top().err;
  double magnitude = std::abs(total);
  while (heap.size() < kMaxPanels) {
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * magnitude;
    if (err <= abs_tol || err <= floor) break;
    const Panel worst = heap.top();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) break;
    heap.pop();
    const Panel left = make_panel(f, worst.a, mid);
    const Panel right = make_panel(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    err += left.err + right.err - worst.err;
    magnitude += std::abs(left.value) + std::abs(right.value) - std::abs(worst.value);
    heap.push(left);
    heap.push(right);
  }
  // Re-sum to shed the drift of the running updates.
  double sum = 0.0;
  while (!heap.empty()) {
    sum += heap.top().value;
    heap.pop();
  }
  return sum;
}

double gauss_legendre(const Integrand& f, double a, double b, int panels) {
  if (panels < 1) throw ParameterError("quadrature::gauss_legendre: panels must be >= 1");
  const double width = (b - a) / panels;
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double lo = a + p * width;
    const double hi = (p + 1 == panels) ? b : lo + width;
    sum += Legendre::integrate(f, lo, hi);
  }
  return sum;
}

}  // namespace elasticflow::quadrature
