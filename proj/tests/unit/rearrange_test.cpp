#include <algorithm>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "elasticflow/critical.hpp"
#include "elasticflow/error.hpp"
#include "elasticflow/rearrange.hpp"
#include "elasticflow/specialfn.hpp"
#include "validation/oracles.hpp"

using namespace elasticflow;
namespace sf = elasticflow::specialfn;

namespace {

// Discrete -(G(v'))' at interior nodes from cell slopes.
double comparison_residual(const GridFunction& v, double rhs) {
  const double h = v.grid().h();
  double worst = 0.0;
  for (std::size_t i = 1; i < v.n(); ++i) {
    const double r = (v[i + 1] - v[i]) / h;
    const double l = (v[i] - v[i - 1]) / h;
    worst = std::max(worst, std::abs(-(sf::g(r) - sf::g(l)) / h - rhs));
  }
  return worst;
}

}  // namespace

TEST_SUITE("rearrange") {

TEST_CASE("constant data is a fixed point") {
  const GridFunction c(UniformGrid(20), 0.3);
  CHECK(decreasing_rearrangement(c).values() == c.values());
  CHECK(symmetric_rearrangement(c).values() == c.values());
}

TEST_CASE("rearrangements of the identity") {
  const UniformGrid g(100);
  const GridFunction f = GridFunction::sample(g, [](double x) { return x; });
  const GridFunction star = decreasing_rearrangement(f);
  const GridFunction sym = symmetric_rearrangement(f);
  for (std::size_t i = 0; i <= 100; ++i) {
    CHECK(star[i] == doctest::Approx(1.0 - g.x(i)).epsilon(1e-14));
    CHECK(sym[i] == doctest::Approx(1.0 - std::abs(2.0 * g.x(i) - 1.0)).epsilon(1e-14));
  }
}

TEST_CASE("symmetric decreasing data is a fixed point") {
  const UniformGrid g(100);
  const GridFunction s = GridFunction::sample(g, [](double x) { return std::sin(std::numbers::pi * x); });
  const GridFunction sym = symmetric_rearrangement(s);
  for (std::size_t i = 0; i <= 100; ++i) CHECK(std::abs(sym[i] - s[i]) < 1e-12);
}

TEST_CASE("values are permuted, norms preserved") {
  const UniformGrid g(64);
  const GridFunction f = GridFunction::sample(g, [](double x) { return std::abs(std::sin(7 * x)) + x * x; });
  std::vector<double> a = f.values(), b = decreasing_rearrangement(f).values();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  CHECK(a == b);
  for (double p : {1.0, 2.0, 3.5, HUGE_VAL})
    CHECK(counting_lp_norm(f, p) == doctest::Approx(counting_lp_norm(decreasing_rearrangement(f), p)).epsilon(1e-13));
  const RearrangedPair pair = rearrange(f);
  CHECK(pair.f_star.values() == decreasing_rearrangement(f).values());
  CHECK(pair.f_sym.values() == symmetric_rearrangement(f).values());
  CHECK_THROWS_AS(counting_lp_norm(f, 0.5), ParameterError);
  GridFunction neg = f;
  neg[3] = -1.0;
  CHECK_THROWS_AS(decreasing_rearrangement(neg), DomainError);
}

TEST_CASE("comparison solution for f = 1") {
  CHECK(talenti_comparison(GridFunction(UniformGrid(50))).max_abs() == 0.0);
  // v(1/2) = (1/2) int_0^1 G^{-1}(s/2) ds = 2 (1 - (1+T^2)^{-1/4}), T = G^{-1}(1/2),
  // with T found by bisection on a Simpson G.
  double lo = 0.0, hi = 5.0;
  for (int i = 0; i < 80; ++i) {
    const double mid = 0.5 * (lo + hi);
    (oracle::g_simpson(mid) < 0.5 ? lo : hi) = mid;
  }
  const double T = 0.5 * (lo + hi);
  const double expected = 2.0 * (1.0 - std::pow(1.0 + T * T, -0.25));
  double prev = INFINITY;
  for (std::size_t n : {200u, 400u}) {
    const GridFunction v = talenti_comparison(GridFunction(UniformGrid(n), 1.0));
    CHECK(std::abs(v[n / 2] - expected) < 1e-8);
    CHECK(v[0] == 0.0);
    CHECK(v[n] == 0.0);
    const double res = comparison_residual(v, 1.0);
    CHECK(res < 10.0 / n);
    CHECK(res < prev);
    prev = res;
  }
}

TEST_CASE("comparison data must stay below the saturation bound") {
  CHECK_THROWS_AS(talenti_comparison(GridFunction(UniformGrid(50), 10.0)), PreconditionError);
}

TEST_CASE("comparison inequality") {
  const UniformGrid g(200);
  const TalentiReport zero = talenti_inequality_check(GridFunction(g));
  CHECK(zero.ok);
  CHECK(zero.v.max_abs() == 0.0);

  // Symmetric concave data: near equality.
  const CriticalPoint cp = critical_profile(0.05, g);
  const TalentiReport sym = talenti_inequality_check(cp.profile);
  CHECK(sym.ok);
  CHECK(std::abs(sym.min_gap) <= sym.tol_mesh);
  for (std::size_t i = 0; i <= 200; ++i) CHECK(std::abs(sym.u_sym[i] - cp.profile[i]) < 1e-12);

  // Asymmetric concave data with |u'| <= 1: strict margin.
  std::vector<double> slopes(200);
  for (std::size_t k = 0; k < 200; ++k) {
    const double x = (k + 0.5) / 200.0;
    slopes[k] = x < 0.3 ? 0.9 : 0.9 - 1.8 * (x - 0.3) / 0.7;
  }
  const GridFunction u = concave_from_slopes(g, slopes);
  const TalentiReport asym = talenti_inequality_check(u);
  CHECK(asym.ok);
  double interior = INFINITY;
  for (std::size_t i = 1; i < 200; ++i) interior = std::min(interior, asym.v[i] - asym.u_sym[i]);
  CHECK(interior > 0.0);

  GridFunction bad = GridFunction::sample(g, [](double x) { return x * (1 - x) * (x - 0.5); });
  CHECK_THROWS_AS(talenti_inequality_check(bad), PreconditionError);
}

TEST_CASE("convexity window of 1/G^-1") {
  CHECK(std::abs(one_over_ginv_second_derivative(sf::g(2.0))) < 1e-10);
  CHECK(one_over_ginv_second_derivative(sf::g(1.0)) > 0.0);
  CHECK(one_over_ginv_second_derivative(sf::g(3.0)) < 0.0);
  CHECK_THROWS_AS(one_over_ginv_second_derivative(0.0), DomainError);
}

}  // TEST_SUITE
