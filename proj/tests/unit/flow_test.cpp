#include <cmath>
#include <numbers>
#include <random>

#include "doctest.h"
#include "elasticflow/critical.hpp"
#include "elasticflow/discretization.hpp"
#include "elasticflow/error.hpp"
#include "elasticflow/flow.hpp"
#include "elasticflow/specialfn.hpp"

using namespace elasticflow;
using std::numbers::pi;

namespace {

GridFunction sine(const UniformGrid& g, double amp) {
  GridFunction u = GridFunction::sample(g, [amp](double x) { return amp * std::sin(pi * x); });
  u[0] = u[g.n()] = 0.0;
  return u;
}

GridFunction uc(const UniformGrid& g, double c) {
  GridFunction u = GridFunction::sample(g, [c](double x) { return specialfn::u_c_value(c, x); });
  u[0] = u[g.n()] = 0.0;
  return u;
}

double l2_dist(const GridFunction& a, const GridFunction& b) {
  GridFunction d = a;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b[i];
  return l2_norm(d);
}

}  // namespace

TEST_SUITE("flow") {

TEST_CASE("config validation") {
  FlowConfig c;
  CHECK_NOTHROW(c.validate());
  c.tau = -1.0;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = FlowConfig{};
  c.backtrack = 1.5;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = FlowConfig{};
  c.t_end = 1e-5;
  CHECK_THROWS_AS(c.validate(), ParameterError);
  c = FlowConfig{};
  CHECK(c.coincidence_tol_for(UniformGrid(100)) == doctest::Approx(10.0 * c.inner_tol * 0.1));
}

TEST_CASE("step from zero data with an inactive obstacle stays at zero") {
  const UniformGrid g(40);
  const StepResult r = mm_step(GridFunction(g), Obstacle::constant(g, -1.0), FlowConfig{});
  CHECK(r.u.max_abs() == 0.0);
  CHECK(r.kkt.stationarity_residual == 0.0);
  CHECK(r.kkt.active_set.empty());
}

TEST_CASE("unconstrained step is one implicit Euler step") {
  const UniformGrid g(100);
  FlowConfig cfg;
  cfg.tau = 1e-4;
  const GridFunction f = sine(g, 1e-3);
  const StepResult r = mm_step(f, Obstacle::constant(g, -1.0), cfg);
  const GridFunction grad = energy_gradient(r.u);
  double res = 0.0;
  for (std::size_t i = 1; i < g.n(); ++i) res = std::max(res, std::abs((r.u[i] - f[i]) / cfg.tau + grad[i]));
  CHECK(res <= cfg.inner_tol * r.kkt.scale);
  CHECK(r.kkt.ok(cfg.inner_tol));
  CHECK(r.u[50] < f[50]);
}

TEST_CASE("step over a cone decreases Phi and satisfies the per-step estimate") {
  const UniformGrid g(100);
  const Obstacle psi = Obstacle::cone(g, 0.05);
  const GridFunction f = uc(g, 0.5);
  FlowConfig cfg;
  const StepResult r = mm_step(f, psi, cfg);
  CHECK(step_functional(r.u, f, cfg.tau) <= energy(f));
  const double d = l2_dist(r.u, f);
  CHECK(d * d / (2 * cfg.tau) <= energy(f) - energy(r.u) + cfg.inner_tol * d + 1e-15);
  for (std::size_t i = 0; i <= g.n(); ++i) CHECK(r.u[i] >= psi[i]);
  CHECK(r.u[0] == 0.0);
  CHECK(r.u[g.n()] == 0.0);
}

TEST_CASE("step preconditions") {
  const UniformGrid g(20);
  const Obstacle psi = Obstacle::cone(g, 0.1);
  CHECK_THROWS_AS(mm_step(GridFunction(g), psi, FlowConfig{}), PreconditionError);
  GridFunction f = uc(g, 1.0);
  f[0] = 1e-3;
  CHECK_THROWS_AS(mm_step(f, psi, FlowConfig{}), PreconditionError);
  CHECK_THROWS_AS(mm_step(uc(UniformGrid(22), 1.0), psi, FlowConfig{}), ShapeError);
}

TEST_CASE("inner iteration cap raises nonconvergence with the partial iterate") {
  const UniformGrid g(100);
  FlowConfig cfg;
  cfg.inner_max_iter = 1;
  cfg.method = InnerMethod::ProjectedGradient;
  try {
    mm_step(uc(g, 0.5), Obstacle::cone(g, 0.05), cfg);
    FAIL("expected StepNonconvergence");
  } catch (const StepNonconvergence& e) {
    CHECK(e.partial().n() == 100);
  }
}

TEST_CASE("projected Newton and projected gradient agree") {
  const UniformGrid g(40);
  const Obstacle psi = Obstacle::cone(g, 0.05);
  FlowConfig newton;
  newton.tau = 1e-2;
  FlowConfig bb = newton;
  bb.method = InnerMethod::ProjectedGradient;
  bb.inner_max_iter = 200000;
  bb.inner_tol = 1e-7;
  const GridFunction f = uc(g, 0.5);
  const StepResult a = mm_step(f, psi, newton);
  const StepResult b = mm_step(f, psi, bb);
  double diff = 0.0;
  for (std::size_t i = 0; i <= g.n(); ++i) diff = std::max(diff, std::abs(a.u[i] - b.u[i]));
  CHECK(diff < 1e-5);
  CHECK(a.kkt.active_set == b.kkt.active_set);
}

TEST_CASE("zero data over an inactive obstacle gives a constant trajectory") {
  const UniformGrid g(30);
  FlowConfig cfg;
  cfg.t_end = 0.01;
  const Trajectory t = run_flow(GridFunction(g), Obstacle::constant(g, -1.0), cfg);
  CHECK(t.steps() == 10);
  for (const auto& u : t.iterates) CHECK(u.max_abs() == 0.0);
  const DissipationReport d = dissipation_report(t, cfg.inner_tol);
  CHECK(d.ok);
  CHECK(d.dissipated == 0.0);
  CHECK(d.energy_drop == 0.0);
}

TEST_CASE("cone run: monotone energy, symmetry, contact, interpolation and Hoelder bounds") {
  const UniformGrid g(200);
  const Obstacle psi = Obstacle::cone(g, 0.02);
  FlowConfig cfg;
  cfg.t_end = 0.2;
  const GridFunction u0 = uc(g, 0.5);
  const Trajectory t = run_flow(u0, psi, cfg);
  for (std::size_t k = 1; k <= t.steps(); ++k) {
    CHECK(t.energies[k] <= t.energies[k - 1] + 1e-15);
    CHECK(t.symmetry_residuals[k] <= 1e-10);
  }
  CHECK_FALSE(first_stanminimov_violation(t, cfg.inner_tol));
  CHECK(dissipation_report(t, cfg.inner_tol).ok);
  CHECK(t.coincidence_counts.back() > 0);
  CHECK(coincidence_set(t.iterates.back(), psi, cfg.coincidence_tol_for(g)) == std::vector<std::size_t>{100});

  // Interpolations.
  const GridFunction at = interpolate_linear(t, 5 * cfg.tau);
  CHECK(l2_dist(at, t.iterates[5]) == 0.0);
  const GridFunction mid = interpolate_linear(t, 5.5 * cfg.tau);
  for (std::size_t i = 0; i <= g.n(); ++i)
    CHECK(mid[i] == doctest::Approx(0.5 * (t.iterates[5][i] + t.iterates[6][i])).epsilon(1e-12));
  CHECK(l2_dist(interpolate_constant(t, 5.5 * cfg.tau), t.iterates[6]) == 0.0);
  CHECK(l2_dist(interpolate_constant(t, 0.0), u0) == 0.0);
  for (double s : {0.0003, 0.0017, 0.0121, 0.1005})
    CHECK(l2_dist(interpolate_linear(t, s), interpolate_constant(t, s)) <=
          std::sqrt(2 * cfg.tau) * std::sqrt(energy(u0)));
  CHECK_THROWS_AS(interpolate_linear(t, 0.3), DomainError);

  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> time(0.0, cfg.t_end);
  std::vector<std::pair<double, double>> pairs;
  for (int i = 0; i < 100; ++i) pairs.emplace_back(time(rng), time(rng));
  pairs.emplace_back(0.05, 0.05);
  const HolderReport h = holder_check(t, pairs);
  CHECK(h.ok);
  CHECK(h.pairs == 101);
  CHECK(h.worst_ratio <= 1.0);
}

TEST_CASE("unconstrained small data dissipates what the energy loses") {
  const UniformGrid g(50);
  FlowConfig cfg;
  cfg.tau = 1e-4;
  cfg.t_end = 0.01;
  const Trajectory t = run_flow(sine(g, 0.01), Obstacle::constant(g, -1.0), cfg);
  const DissipationReport d = dissipation_report(t, cfg.inner_tol);
  CHECK(d.ok);
  CHECK(d.dissipated == doctest::Approx(d.energy_drop).epsilon(0.05));
  CHECK(d.dissipated <= d.velocity_bound);
}

TEST_CASE("natural boundary condition emerges") {
  CHECK(navier_diagnostic(GridFunction(UniformGrid(10))) == std::pair<double, double>{0.0, 0.0});
  const auto p = navier_diagnostic(GridFunction::sample(UniformGrid(100), [](double x) { return x * (1 - x); }));
  CHECK(p.first == doctest::Approx(2.0));
  CHECK(p.second == doctest::Approx(2.0));
  double prev = INFINITY;
  for (std::size_t n : {50u, 100u, 200u}) {
    const UniformGrid g(n);
    FlowConfig cfg;
    cfg.tau = 1e-4;
    const StepResult r = mm_step(sine(g, 0.01), Obstacle::constant(g, -1.0), cfg);
    const auto [l, rr] = navier_diagnostic(r.u);
    const double v = std::max(l, rr);
    CHECK(v <= 0.1 * pi * pi * g.h() * 10);
    CHECK(v < prev);
    prev = v;
  }
}

TEST_CASE("coincidence set and symmetry residual") {
  const UniformGrid g(10);
  const Obstacle psi = Obstacle::cone(g, 0.1);
  GridFunction u(g, 0.5);
  u[3] = psi[3];
  CHECK(coincidence_set(u, psi, 0.0) == std::vector<std::size_t>{3});
  CHECK(symmetry_residual(psi.samples()) == 0.0);
  const GridFunction a = GridFunction::sample(UniformGrid(20), [](double x) { return x * (1 - x) + x * x * x; });
  CHECK(symmetry_residual(a) > 0.1);
}

TEST_CASE("touch window") {
  const double thr = touch_threshold();
  CHECK(thr == doctest::Approx(std::pow(specialfn::g(std::sqrt(2.0 / 3.0)), 2)));
  const double a = touch_window(0.5 * thr, 0.01);
  const double b = touch_window(0.99 * thr, 0.01);
  const double c = touch_window(0.999999 * thr, 0.01);
  CHECK(a > 0.0);
  CHECK(a < b);
  CHECK(b < c);
  CHECK(c > 1e4);
  CHECK(touch_window(0.5 * thr, 0.02) == doctest::Approx(0.5 * a));
  CHECK_THROWS_AS(touch_window(thr, 0.01), PreconditionError);
  CHECK_THROWS_AS(touch_window(0.5 * thr, 0.0), PreconditionError);
}

TEST_CASE("energy threshold warnings") {
  CHECK(threshold_warnings(0.1).empty());
  const double g2 = specialfn::g(2.0);
  CHECK(threshold_warnings(g2 * g2 * 1.01).size() == 1);
  CHECK(threshold_warnings(specialfn::c0() * specialfn::c0()).size() == 2);
}

}  // TEST_SUITE
