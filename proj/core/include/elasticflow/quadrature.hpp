#pragma once

#include <functional>

namespace elasticflow::quadrature {

using Integrand = std::function<double(double)>;

/// Globally adaptive Gauss-Kronrod (7/15) on [a, b]: the panel with the
/// largest error estimate is bisected until the estimates sum below
/// `abs_tol` or reach the round-off level of the result.  a > b flips the
/// sign.
double adaptive(const Integrand& f, double a, double b, double abs_tol = 1e-13);

/// Composite 10-point Gauss-Legendre rule on `panels` equal panels.
double gauss_legendre(const Integrand& f, double a, double b, int panels = 1);

}  // namespace elasticflow::quadrature
