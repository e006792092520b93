#pragma once

#include <vector>

#include "elasticflow/discretization.hpp"
#include "elasticflow/flow.hpp"

/// Symmetric critical point over a symmetric cone obstacle, built from the
/// slope parametrization z = u'(x) in (0, A], A = u'(0) = H^{-1}(height).
/// With phi(z) = (1 + z^2)^{-5/4}, w = sqrt(A - z) and
/// I0 = int_0^{sqrt A} 2 phi(A - t^2) dt,
///
///   x(w) = (1/I0) int_0^w phi(A - t^2) dt,
///   u(w) = (1/I0) int_0^w (A - t^2) phi(A - t^2) dt,
///
/// for x in [0, 1/2], mirrored to [1/2, 1].
namespace elasticflow {

/// F(z) = x at slope z: int_0^{sqrt(A-z)} 2 phi(A - t^2) dt / (2 I0).
/// F(A) = 0, F(0) = 1/2.  DomainError unless 0 <= z <= A.
double f_of_z(double z, double A);

struct CriticalResiduals {
  double vi_residual = 0.0;     // coordinate VI of the sampled profile (L2 units)
  double vi_scale = 1.0;
  double ode_residual = 0.0;    // max |u' - J(u)| on [0.05, 0.45]
  double concavity_min = 0.0;   // min of -u'' over nodes in (0, 1/2]
  double height_residual = 0.0; // |u(1/2) - height|
  double h_roundtrip = 0.0;     // |H(A) - height|
};

struct CriticalPoint {
  explicit CriticalPoint(UniformGrid g) : grid(g), profile(g), slope_profile(g) {}

  double height = 0.0;
  double A = 0.0;
  double i0 = 0.0;
  UniformGrid grid;
  GridFunction profile;
  GridFunction slope_profile;
  double energy = 0.0;
  CriticalResiduals residuals;
  /// Parametric samples on [0, 1/2], x increasing.
  std::vector<double> sample_w, sample_x, sample_u;
};

/// Requires even n so that x = 1/2 is a node.
CriticalPoint critical_profile(double height, const UniformGrid& grid);

/// max |u'(x_i) - J(u(x_i))| over nodes with x_lo <= x_i <= x_hi.  J(v) is the
/// slope z at which the exact parametric map reaches height v.
double ode_residual(const CriticalPoint& cp, double x_lo = 0.05, double x_hi = 0.45);

struct CriticalCheck {
  double vi_residual = 0.0;  // min over clipped coordinate directions, L2 units
  double scale = 1.0;        // 1 + gradient_term_scale
  double max_second_diff = 0.0;
  double min_value = 0.0;
  std::vector<std::size_t> coincidence;

  bool vi_ok(double tol) const { return vi_residual >= -tol * scale; }
};

/// Directions e_i and -e_i on free nodes, +e_i on nodes within
/// coincidence_tol of psi.
CriticalCheck check_critical(const GridFunction& u, const Obstacle& psi, double coincidence_tol);

/// Box minimizer of E_h over the cone obstacle, started from cp.profile.
/// This is the critical point of the discrete problem; it differs from the
/// sampled formula profile by the discretization error.
StepResult discrete_critical_point(const CriticalPoint& cp, const FlowConfig& cfg);

}  // namespace elasticflow
