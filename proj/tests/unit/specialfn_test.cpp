#include <cmath>
#include <numbers>

#include "doctest.h"
#include "elasticflow/error.hpp"
#include "elasticflow/quadrature.hpp"
#include "elasticflow/specialfn.hpp"
#include "validation/oracles.hpp"

namespace sf = elasticflow::specialfn;
namespace oracle = elasticflow::oracle;

TEST_SUITE("specialfn") {

TEST_CASE("quadrature handles smooth and endpoint-singular integrands") {
  using elasticflow::quadrature::adaptive;
  CHECK(adaptive([](double x) { return std::exp(x); }, 0.0, 1.0) == doctest::Approx(std::numbers::e - 1.0).epsilon(1e-14));
  CHECK(adaptive([](double x) { return std::sqrt(x); }, 0.0, 1.0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(adaptive([](double x) { return x; }, 1.0, 0.0) == doctest::Approx(-0.5));
  CHECK_THROWS_AS(adaptive([](double x) { return x; }, 0.0, INFINITY), elasticflow::DomainError);
}

TEST_CASE("G at zero, oddness and against Simpson") {
  CHECK(sf::g(0.0) == 0.0);
  CHECK(sf::g(-0.7) == doctest::Approx(-sf::g(0.7)).epsilon(1e-15));
  for (double s : {0.1, 0.5, 1.0, 1.7, 3.0, 10.0})
    CHECK(std::abs(sf::g(s) - oracle::g_simpson(s)) < 1e-12);
  CHECK(sf::g(1.0) == doctest::Approx(0.7443).epsilon(1e-4));
  CHECK(sf::g_prime(2.0) == doctest::Approx(std::pow(5.0, -1.25)));
}

TEST_CASE("G is increasing and saturates at c0/2") {
  double prev = -INFINITY;
  for (double s = -50.0; s <= 50.0; s += 0.37) {
    const double v = sf::g(s);
    CHECK(v > prev);
    prev = v;
  }
  const double gap = 0.5 * sf::c0() - sf::g(1e6);
  CHECK(gap > 0.0);
  CHECK(gap < 1e-6);
  // The integrand tail beyond M integrates to about (2/3) M^{-3/2}.
  CHECK(0.5 * sf::c0() - sf::g(1e4) == doctest::Approx(2.0 / 3.0 * 1e-6).epsilon(1e-3));
}

TEST_CASE("c0 by two routes and the Beta function") {
  const double a = sf::c0_by_truncated_quadrature();
  const double b = sf::c0_by_saturation_limit();
  CHECK(std::abs(a - b) < 1e-10);
  CHECK(std::abs(sf::c0() - oracle::c0_beta()) < 1e-12);
  CHECK(sf::c0() == doctest::Approx(2.39628).epsilon(2e-6));
  CHECK(sf::c0() * sf::c0() / 4.0 == doctest::Approx(1.43554).epsilon(5e-6));
}

TEST_CASE("G inverse round trips and guards the saturation band") {
  CHECK(sf::g_inv(0.0) == 0.0);
  CHECK(sf::g_inv(sf::g(2.0)) == doctest::Approx(2.0).epsilon(1e-13));
  CHECK(sf::g_inv(0.7443) == doctest::Approx(1.0).epsilon(1e-3));
  for (double s : {-40.0, -3.0, -0.2, 0.01, 0.9, 5.0, 80.0})
    CHECK(sf::g_inv(sf::g(s)) == doctest::Approx(s).epsilon(1e-10));
  const double edge = 0.5 * sf::c0() - sf::guard_band();
  CHECK_THROWS_AS(sf::g_inv(edge * 1.0000001), elasticflow::RangeError);
  CHECK_THROWS_AS(sf::g_inv(-0.5 * sf::c0()), elasticflow::RangeError);
  CHECK_THROWS_AS(sf::g_inv(NAN), elasticflow::DomainError);
  CHECK(std::isfinite(sf::g_inv(0.999 * edge)));
}

TEST_CASE("hypergeometric series") {
  CHECK(sf::hyp2f1({1.0, 0.5, 0.75}, 0.0) == 1.0);
  CHECK(sf::hyp2f1({1.0, 1.0, 2.0}, 0.5) == doctest::Approx(-std::log(0.5) / 0.5).epsilon(1e-13));
  // Pfaff at A = 1.3 against the Euler integral.
  const double A = 1.3;
  const double rhs = sf::hyp2f1({1.0, 0.25, 0.75}, A * A / (1.0 + A * A)) / (1.0 + A * A);
  CHECK(std::abs(oracle::hyp2f1_euler(1.0, 0.5, 0.75, -A * A) - rhs) < 1e-10);
  CHECK(std::abs(sf::hyp2f1({1.0, 0.5, 0.75}, -A * A) - rhs) < 1e-10);
  CHECK(sf::hyp2f1({1.0, 1.0, 2.0}, -3.0) == doctest::Approx(std::log(4.0) / 3.0).epsilon(1e-12));
}

TEST_CASE("hypergeometric errors") {
  CHECK_THROWS_AS(sf::hyp2f1({1.0, 0.5, 0.75}, 1.0), elasticflow::DomainError);
  CHECK_THROWS_AS(sf::hyp2f1({1.0, 0.5, -2.0}, 0.3), elasticflow::ParameterError);
  CHECK_THROWS_AS(sf::hyp2f1({1.0, 0.5, 0.0}, 0.3), elasticflow::ParameterError);
  elasticflow::specialfn::HypergeometricParams p{1.0, 0.5, 0.75};
  p.max_terms = 5;
  CHECK_THROWS_AS(sf::hyp2f1(p, 0.999), elasticflow::ConvergenceError);
}

TEST_CASE("cone height H(A)") {
  CHECK(sf::h_of_A(0.0) == 0.0);
  CHECK(sf::h_of_A(0.01) == doctest::Approx(0.01 / 3.0).epsilon(1e-4));
  for (double A : {0.01, 0.3, 1.0, 2.5, 7.0})
    CHECK(std::abs(sf::h_of_A(A) - sf::h_of_A_quadrature(A)) < 1e-9);
  CHECK_THROWS_AS(sf::h_of_A(-1.0), elasticflow::DomainError);
}

TEST_CASE("H inverse") {
  CHECK(sf::h_inv(sf::h_of_A(0.8)) == doctest::Approx(0.8).epsilon(1e-10));
  CHECK(sf::h_inv(0.01 / 3.0) == doctest::Approx(0.01).epsilon(1e-4));
  const double A = sf::h_inv(0.05);
  CHECK(A > 0.0);
  CHECK(std::abs(sf::h_of_A(A) - 0.05) < 1e-10);
  // Independent bisection on the quadrature route.
  double lo = 0.0, hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (sf::h_of_A_quadrature(mid) < 0.05 ? lo : hi) = mid;
  }
  CHECK(std::abs(A - 0.5 * (lo + hi)) < 1e-9);
}

TEST_CASE("profile u_c") {
  for (double c : {0.5, 1.0}) {
    CHECK(std::abs(sf::u_c_value(c, 0.0)) < 1e-15);
    CHECK(std::abs(sf::u_c_value(c, 1.0)) < 1e-15);
  }
  CHECK(sf::u_c_value(1.0, 0.3) == doctest::Approx(sf::u_c_value(1.0, 0.7)).epsilon(1e-14));
  // u_c' = G^{-1}(c(1/2 - x)) and a central difference agree.
  const double c = 1.0, x = 0.2, d = 1e-5;
  const double fd = (sf::u_c_value(c, x + d) - sf::u_c_value(c, x - d)) / (2 * d);
  CHECK(fd == doctest::Approx(sf::u_c_slope(c, x)).epsilon(1e-7));
  CHECK(sf::u_c_slope(c, x) == doctest::Approx(sf::g_inv(c * (0.5 - x))).epsilon(1e-12));
}

}  // TEST_SUITE
