#pragma once

#include <Eigen/SparseCore>
#include <vector>

#include "elasticflow/grid.hpp"

namespace elasticflow::detail {

/// dE_h/du_j for every node; entries 0 and n are zero.
std::vector<double> coordinate_gradient(const GridFunction& u);

/// Hessian of E_h with respect to the interior unknowns u_1..u_{n-1}
/// (row k <-> node k+1).  With gauss_newton the curvature of the density
/// in p is dropped, leaving 2h sum w grad(r) grad(r)^T with
/// r = s (1+p^2)^{-5/4}, which is positive semidefinite.
Eigen::SparseMatrix<double> interior_hessian(const GridFunction& u, bool gauss_newton);

}  // namespace elasticflow::detail
