#pragma once

#include "elasticflow/flow.hpp"

namespace elasticflow::detail {

struct BoxOutcome {
  GridFunction u;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes E_h(u) + inv_tau/2 * h * sum_interior (u - f)^2 over u >= psi
/// with endpoints frozen at the start values.  inv_tau = 0 gives plain
/// energy minimization.  Converged means the KKT certificate holds at
/// cfg.inner_tol and the last step was at round-off size (or no further
/// decrease was possible).
BoxOutcome solve_box(const GridFunction& start, const GridFunction& f, double inv_tau,
                     const Obstacle& psi, const FlowConfig& cfg);

}  // namespace elasticflow::detail
