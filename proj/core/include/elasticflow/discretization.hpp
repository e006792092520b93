#pragma once

#include <string>
#include <vector>

#include "elasticflow/grid.hpp"

/// Finite-difference elastic energy on a uniform grid.
///
/// With p_i = (u_{i+1} - u_{i-1}) / 2h and s_i = (u_{i+1} - 2u_i + u_{i-1}) / h^2
/// at interior nodes, the discrete energy is
///
///   E_h(u) = h * sum_{i=1}^{n-1} w_i s_i^2 / (1 + p_i^2)^{5/2}
///
/// with w_1 = w_{n-1} = 3/2 and w_i = 1 otherwise.  The 3/2 end weights
/// absorb the two boundary half-cells, which keeps E_h second-order accurate.
/// No curvature is imposed at the endpoints, so u'' ~ 0 there emerges as the
/// natural condition of the discrete Euler-Lagrange system.
namespace elasticflow {

/// Interior quadrature weights w_i (without the factor h); zero at the ends.
std::vector<double> energy_weights(const UniformGrid& grid);

/// Central differences inside, one-sided second-order differences at the ends.
GridFunction first_diff(const GridFunction& u);

/// Second differences at interior nodes; the endpoint entries are left at 0.
GridFunction second_diff(const GridFunction& u);

double energy(const GridFunction& u);

/// L2 gradient of E_h: the coordinate gradient divided by h, endpoints zero.
/// <energy_gradient(u), phi>_h equals the directional derivative of E_h for
/// phi vanishing at the ends.
GridFunction energy_gradient(const GridFunction& u);

/// max_j of sum_i |w_i * (chain-rule term of s_i, p_i on node j)|, in the
/// same units as energy_gradient.  Magnitude against which cancellation in
/// the gradient is judged.
double gradient_term_scale(const GridFunction& u);

/// Directional derivative DE_h(u)(phi), assembled from the two first-variation
/// integrals 2 w s s_phi W(p) and w s^2 W'(p) p_phi.
double first_variation(const GridFunction& u, const GridFunction& phi);

/// A_u = u'' / (1 + u'^2)^{5/4} at interior nodes, endpoints 0.  E_h is
/// exactly h * sum_i w_i A_i^2.
GridFunction a_u(const GridFunction& u);

/// Trapezoid pairing on [0,1].
double l2_inner(const GridFunction& u, const GridFunction& v);
double l2_norm(const GridFunction& u);

/// Nodewise obstacle psi with the Assumption-1 flag
/// (psi(0) < 0, psi(1) < 0, max psi > 0).
class Obstacle {
 public:
  enum class Kind { Cone, Table, Constant };

  /// Symmetric cone, affine on [0, 1/2], psi(1/2) = height > 0.  The
  /// endpoint value defaults to -height.
  static Obstacle cone(const UniformGrid& grid, double height);
  static Obstacle cone(const UniformGrid& grid, double height, double endpoint);
  static Obstacle table(GridFunction samples);
  static Obstacle constant(const UniformGrid& grid, double level);

  Kind kind() const { return kind_; }
  std::string kind_name() const;
  /// Cone height or constant level; NaN for tables.
  double parameter() const { return parameter_; }
  const GridFunction& samples() const { return samples_; }
  const UniformGrid& grid() const { return samples_.grid(); }
  bool assumption1_ok() const { return assumption1_ok_; }
  double operator[](std::size_t i) const { return samples_[i]; }

 private:
  Obstacle(Kind kind, double parameter, GridFunction samples);

  Kind kind_;
  double parameter_;
  GridFunction samples_;
  bool assumption1_ok_;
};

}  // namespace elasticflow
