#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "elasticflow/discretization.hpp"
#include "elasticflow/error.hpp"
#include "validation/oracles.hpp"

using namespace elasticflow;
using std::numbers::pi;

namespace {

GridFunction parabola(std::size_t n) {
  return GridFunction::sample(UniformGrid(n), [](double x) { return x * (1.0 - x); });
}

GridFunction sine(std::size_t n, double amp = 1.0) {
  GridFunction u = GridFunction::sample(UniformGrid(n), [amp](double x) { return amp * std::sin(pi * x); });
  u[0] = u[n] = 0.0;
  return u;
}

double fd_derivative(const GridFunction& u, const GridFunction& phi, double eps) {
  GridFunction up = u, um = u;
  for (std::size_t i = 0; i < u.size(); ++i) {
    up[i] += eps * phi[i];
    um[i] -= eps * phi[i];
  }
  return (energy(up) - energy(um)) / (2.0 * eps);
}

}  // namespace

TEST_SUITE("discretization") {

TEST_CASE("grid construction and shape errors") {
  CHECK_THROWS_AS(UniformGrid(3), ParameterError);
  const UniformGrid g(8);
  CHECK(g.nodes() == 9);
  CHECK(g.h() == doctest::Approx(0.125));
  CHECK(g.x(8) == 1.0);
  CHECK_THROWS_AS(GridFunction(g, std::vector<double>(5)), ShapeError);
  CHECK_THROWS_AS(energy(GridFunction(g, std::vector<double>(9, NAN))), DomainError);
  CHECK_THROWS_AS(l2_inner(GridFunction(g), GridFunction(UniformGrid(10))), ShapeError);
}

TEST_CASE("first differences") {
  CHECK(first_diff(GridFunction(UniformGrid(10))).max_abs() == 0.0);
  const GridFunction d = first_diff(parabola(1000));
  CHECK(std::abs(d[500]) < 1e-14);
  CHECK(d[250] == doctest::Approx(0.5).epsilon(1e-12));
  // One-sided second-order stencils are exact on quadratics.
  CHECK(d[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(d[1000] == doctest::Approx(-1.0).epsilon(1e-12));
}

TEST_CASE("second differences") {
  const GridFunction lin = GridFunction::sample(UniformGrid(20), [](double x) { return 3.0 * x - 1.0; });
  CHECK(second_diff(lin).max_abs() < 1e-10);
  const GridFunction s = second_diff(parabola(100));
  for (std::size_t i = 1; i < 100; ++i) CHECK(s[i] == doctest::Approx(-2.0).epsilon(1e-9));
  CHECK(s[0] == 0.0);
  CHECK(s[100] == 0.0);
  CHECK(std::abs(second_diff(sine(1000))[500] + pi * pi) < 1e-4);
}

TEST_CASE("energy values") {
  CHECK(energy(GridFunction(UniformGrid(50))) == 0.0);
  const double exact = oracle::parabola_energy();
  CHECK(exact == doctest::Approx(2.35702).epsilon(2e-6));
  CHECK(std::abs(energy(parabola(2000)) - exact) < 1e-3);
  // Second order: halving h quarters the error.
  const double e1 = std::abs(energy(parabola(200)) - exact);
  const double e2 = std::abs(energy(parabola(400)) - exact);
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("energy weights") {
  const auto w = energy_weights(UniformGrid(10));
  CHECK(w[0] == 0.0);
  CHECK(w[10] == 0.0);
  CHECK(w[1] == 1.5);
  CHECK(w[9] == 1.5);
  CHECK(w[5] == 1.0);
}

TEST_CASE("gradient against central differences") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> coef(-1.0, 1.0);
  const UniformGrid grid(80);
  CHECK(energy_gradient(GridFunction(grid)).max_abs() == 0.0);
  for (int trial = 0; trial < 10; ++trial) {
    double a[4], b[4];
    for (int k = 0; k < 4; ++k) {
      a[k] = 0.4 * coef(rng);
      b[k] = coef(rng);
    }
    auto series = [](const double* c) {
      return [c](double x) {
        double s = 0.0;
        for (int k = 0; k < 4; ++k) s += c[k] * std::sin((k + 1) * pi * x);
        return s;
      };
    };
    GridFunction u = GridFunction::sample(grid, series(a));
    GridFunction phi = GridFunction::sample(grid, series(b));
    u[0] = u[80] = phi[0] = phi[80] = 0.0;
    const double an = l2_inner(energy_gradient(u), phi);
    CHECK(std::abs(fd_derivative(u, phi, 1e-6) - an) <= 1e-6 * std::abs(an));
    CHECK(first_variation(u, phi) == doctest::Approx(an).epsilon(1e-10));
  }
}

TEST_CASE("first variation") {
  const GridFunction u = parabola(1000);
  CHECK(first_variation(u, GridFunction(u.grid())) == 0.0);
  CHECK(first_variation(GridFunction(u.grid()), sine(1000)) == 0.0);
  CHECK(std::abs(first_variation(u, sine(1000)) - fd_derivative(u, sine(1000), 1e-6)) < 1e-5);
}

TEST_CASE("gradient term scale bounds the gradient") {
  const GridFunction u = sine(60, 0.3);
  CHECK(gradient_term_scale(u) >= energy_gradient(u).max_abs());
  CHECK(gradient_term_scale(GridFunction(u.grid())) == 0.0);
}

TEST_CASE("A_u and the energy identity") {
  CHECK(a_u(GridFunction(UniformGrid(10))).max_abs() == 0.0);
  const GridFunction u = parabola(400);
  const GridFunction a = a_u(u);
  CHECK(a[200] == doctest::Approx(-2.0).epsilon(1e-9));
  const auto w = energy_weights(u.grid());
  double s = 0.0;
  for (std::size_t i = 1; i < 400; ++i) s += w[i] * a[i] * a[i];
  CHECK(energy(u) == doctest::Approx(u.grid().h() * s).epsilon(1e-13));
}

TEST_CASE("L2 pairing") {
  const UniformGrid g(1000);
  CHECK(l2_norm(GridFunction(g)) == 0.0);
  CHECK(l2_norm(GridFunction(g, 1.0)) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(std::abs(l2_norm(sine(1000)) - std::sqrt(0.5)) < 1e-6);
}

TEST_CASE("obstacles") {
  const UniformGrid g(20);
  const Obstacle cone = Obstacle::cone(g, 0.1);
  CHECK(cone[10] == doctest::Approx(0.1));
  CHECK(cone[0] == doctest::Approx(-0.1));
  for (std::size_t i = 0; i <= 20; ++i) CHECK(cone[i] == cone[20 - i]);
  CHECK(cone.assumption1_ok());
  CHECK(cone.kind() == Obstacle::Kind::Cone);
  CHECK(Obstacle::cone(g, 0.1, -0.5)[0] == doctest::Approx(-0.5));
  CHECK_THROWS_AS(Obstacle::cone(g, -0.1), ParameterError);
  CHECK_FALSE(Obstacle::constant(g, 0.0).assumption1_ok());
  CHECK_FALSE(Obstacle::constant(g, -1.0).assumption1_ok());
  CHECK(Obstacle::table(cone.samples()).assumption1_ok());
  CHECK(std::isnan(Obstacle::table(cone.samples()).parameter()));
}

}  // TEST_SUITE
