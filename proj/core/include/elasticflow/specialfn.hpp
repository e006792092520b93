#pragma once

#include <cstddef>

/// Scalar special functions of the elastic graph energy:
///
///   G(s)  = int_0^s (1 + t^2)^{-5/4} dt      (odd, increasing, |G| < c0/2)
///   c0    = int_R (1 + t^2)^{-5/4} dt
///   u_c   = explicit profile with E(u_c) = c^2
///   H(A)  = midpoint height of the symmetric critical point over a cone with
///           initial slope A, via Gauss hypergeometric ratios.
namespace elasticflow::specialfn {

struct HypergeometricParams {
  double a = 1.0;
  double b = 1.0;
  double c = 1.0;
  double series_tol = 1e-15;
  std::size_t max_terms = 5'000'000;
};

/// G(s).  Throws DomainError for non-finite s.
double g(double s);

/// Derivative G'(s) = (1 + s^2)^{-5/4}.
double g_prime(double s);

/// G^{-1}(y) for |y| < c0/2 - guard_band().  Throws RangeError otherwise.
double g_inv(double y);

/// c0, cached after the first call.  Computed by quadrature on [-M, M],
/// M = 1e6, plus the analytic tail (4/3) M^{-3/2}.
double c0();

/// Quadrature + tail route to c0 (uncached).
double c0_by_truncated_quadrature();

/// 2 lim_{s->inf} G(s), evaluated through the substitution t = v^{-2}
/// (uncached).
double c0_by_saturation_limit();

/// Width of the excluded band below c0/2 in the domain of g_inv: 1e-9 c0.
double guard_band();

/// 2F1(a, b; c; z) for z < 1.  Direct series on [0, 1), Pfaff map
/// 2F1(a,b;c;z) = (1-z)^{-a} 2F1(a, c-b; c; z/(z-1)) for z < 0.
double hyp2f1(const HypergeometricParams& p, double z);

/// H(A) = (A/3) 2F1(1, 1/4; 7/4; x) / 2F1(1, 1/4; 3/4; x), x = A^2/(1+A^2).
double h_of_A(double A);

/// H(A) as the ratio of the two singular slope integrals, desingularized by
/// z = A - w^2.  Independent second route to h_of_A.
double h_of_A_quadrature(double A);

/// Unique A > 0 with H(A) = h.  Bracketing, bisection, Newton polish.
double h_inv(double h);

/// Upper end of the slope bracket searched by h_inv.
inline constexpr double kMaxConeSlope = 100.0;

/// u_c(x) = 2/(c (1+G^{-1}(c/2-cx)^2)^{1/4}) - 2/(c (1+G^{-1}(c/2)^2)^{1/4}).
double u_c_value(double c, double x);

/// u_c'(x) = G^{-1}(c/2 - c x).
double u_c_slope(double c, double x);

}  // namespace elasticflow::specialfn
