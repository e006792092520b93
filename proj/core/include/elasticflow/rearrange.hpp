#pragma once

#include <vector>

#include "elasticflow/grid.hpp"

/// Decreasing and symmetric-decreasing rearrangements of nodal data, and the
/// comparison function of the nonlinear Talenti argument with G as the
/// nonlinearity.
namespace elasticflow {

/// Nodal values sorted in nonincreasing order.  DomainError on negative data.
GridFunction decreasing_rearrangement(const GridFunction& f);

/// f_*(x_i) = f*(2|x_i - 1/2|).  2|x_i - 1/2| is always the node |2i - n|,
/// so no interpolation is involved.
GridFunction symmetric_rearrangement(const GridFunction& f);

/// (h sum_i |f_i|^p)^{1/p} over all n+1 nodes (max for p = inf).  Invariant
/// under permutation of the nodal values.
double counting_lp_norm(const GridFunction& f, double p);

struct RearrangedPair {
  GridFunction f_star;
  GridFunction f_sym;
};

RearrangedPair rearrange(const GridFunction& f);

/// v(x) = 1/2 int_{2|x-1/2|}^1 G^{-1}(1/2 int_0^s f*(r) dr) ds with f* the
/// piecewise-linear interpolant of the decreasing rearrangement.  The inner
/// integral is exact for that interpolant; the outer one uses Gauss-Legendre
/// per cell.  PreconditionError if 1/2 |f|_L2 exceeds c0/2 - guard.
GridFunction talenti_comparison(const GridFunction& f);

struct TalentiReport {
  GridFunction f;       // -(G(u'))' from cell slopes
  GridFunction v;       // talenti_comparison(f)
  GridFunction u_sym;   // symmetric_rearrangement(u)
  double min_gap = 0.0; // min_i v_i - u_sym_i
  double tol_mesh = 0.0;
  bool ok = false;
};

/// Requires u >= 0, concave, u(0) = u(1) = 0 and cell slopes bounded by 2.
TalentiReport talenti_inequality_check(const GridFunction& u);

/// (1/G^{-1})''(s) = (2 - y^2/2) / y^3 * (1 + y^2)^{3/2}, y = G^{-1}(s).
/// DomainError unless 0 < s < c0/2 - guard.
double one_over_ginv_second_derivative(double s);

/// u with u(0) = 0 and cell slopes sigma_{i+1/2} = slopes[i] - mean(slopes),
/// so that u(1) = 0.  Nonincreasing slopes give a concave u.
GridFunction concave_from_slopes(const UniformGrid& grid, const std::vector<double>& slopes);

}  // namespace elasticflow
