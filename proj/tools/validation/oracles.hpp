#pragma once

#include <functional>

// Reference computations that share no code with the library routines they
// check.
namespace elasticflow::oracle {

/// Recursive adaptive Simpson with Richardson correction.
double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-12);

/// 4 int_0^1 (1+t^2)^{-5/2} dt from the antiderivative t(2t^2+3) / (3(1+t^2)^{3/2}).
double parabola_energy();

/// B(1/2, 3/4) = sqrt(pi) Gamma(3/4) / Gamma(5/4).
double c0_beta();

/// 2F1(a, b; c; z) from Euler's integral, valid for c > b > 0 and z < 1.
/// The endpoint singularities are removed with t = s^2 on [0, 1/2] and
/// 1 - t = w^4 on [1/2, 1]; both pieces use composite Gauss-Legendre.
double hyp2f1_euler(double a, double b, double c, double z);

/// G(s) by Simpson on [0, s] (only sensible for moderate |s|).
double g_simpson(double s);

}  // namespace elasticflow::oracle
