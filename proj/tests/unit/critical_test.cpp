#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "elasticflow/critical.hpp"
#include "elasticflow/discretization.hpp"
#include "elasticflow/error.hpp"
#include "elasticflow/specialfn.hpp"

using namespace elasticflow;

TEST_SUITE("critical") {

TEST_CASE("the z-to-x map") {
  CHECK(f_of_z(1.0, 1.0) == 0.0);
  CHECK(f_of_z(0.0, 1.0) == doctest::Approx(0.5).epsilon(1e-13));
  double prev = 0.6;
  for (int j = 0; j < 50; ++j) {
    const double v = f_of_z(j / 49.0, 1.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(f_of_z(2.0, 1.0), DomainError);
  CHECK_THROWS_AS(f_of_z(0.5, 0.0), DomainError);
}

TEST_CASE("critical profile over a cone") {
  const UniformGrid g(400);
  const CriticalPoint cp = critical_profile(0.05, g);
  CHECK(cp.profile[0] == 0.0);
  CHECK(cp.profile[400] == 0.0);
  CHECK(std::abs(cp.profile[200] - 0.05) < 1e-9);
  CHECK(cp.A == doctest::Approx(specialfn::h_inv(0.05)).epsilon(1e-14));
  CHECK(cp.residuals.concavity_min > 0.0);
  CHECK(cp.residuals.h_roundtrip < 1e-10);
  CHECK(symmetry_residual(cp.profile) < 1e-12);
  CHECK(cp.slope_profile[0] == doctest::Approx(cp.A));
  CHECK(std::abs(cp.slope_profile[200]) < 1e-12);
  CHECK(cp.energy == doctest::Approx(energy(cp.profile)));
  CHECK(cp.sample_w.size() >= 512);
  CHECK_THROWS_AS(critical_profile(0.05, UniformGrid(401)), ParameterError);
}

TEST_CASE("profile solves the first-order ODE") {
  const CriticalPoint cp = critical_profile(0.05, UniformGrid(400));
  CHECK(ode_residual(cp) <= 1e-6);
  CHECK(ode_residual(cp, 0.3, 0.5) <= 1e-6);
}

TEST_CASE("variational inequality") {
  const UniformGrid g(400);
  const CriticalCheck zero = check_critical(GridFunction(g), Obstacle::constant(g, -1.0), 0.0);
  CHECK(zero.vi_residual == 0.0);

  const Obstacle psi = Obstacle::cone(g, 0.05);
  const GridFunction par = GridFunction::sample(g, [](double x) { return x * (1 - x); });
  CHECK_FALSE(check_critical(par, psi, 1e-9).vi_ok(1e-5));

  const CriticalPoint cp = critical_profile(0.05, g);
  FlowConfig cfg;
  const StepResult disc = discrete_critical_point(cp, cfg);
  const CriticalCheck chk = check_critical(disc.u, psi, cfg.coincidence_tol_for(g));
  CHECK(chk.vi_ok(1e-5));
  CHECK(chk.coincidence == std::vector<std::size_t>{200});
  CHECK(chk.max_second_diff < 0.0);
  CHECK(chk.min_value >= 0.0);

  // Random admissible competitors v >= psi.
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> amp(-0.02, 0.02), centre(0.05, 0.95), width(0.02, 0.2);
  for (int trial = 0; trial < 100; ++trial) {
    const double a = amp(rng), c = centre(rng), w = width(rng);
    GridFunction v = disc.u;
    for (std::size_t i = 1; i < g.n(); ++i) {
      const double x = g.x(i);
      v[i] = std::max(psi[i], disc.u[i] + a * std::exp(-(x - c) * (x - c) / (w * w)) * std::sin(std::numbers::pi * x));
    }
    GridFunction d = v;
    for (std::size_t i = 0; i <= g.n(); ++i) d[i] -= disc.u[i];
    CHECK(first_variation(disc.u, d) >= -1e-5 * chk.scale * l2_norm(d));
  }
}

}  // TEST_SUITE
