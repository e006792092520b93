#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "elasticflow/discretization.hpp"
#include "elasticflow/error.hpp"

/// Minimizing movements for Phi(u) = E_h(u) + |u - f|^2 / (2 tau) over the
/// nodewise box u >= psi, with trajectory bookkeeping and diagnostics.
namespace elasticflow {

enum class InnerMethod {
  /// Two-metric projected Newton: Newton on the free nodes, diagonal scaling
  /// on nodes held at the obstacle, Armijo search along the projection arc.
  ProjectedNewton,
  /// Projected gradient with Barzilai-Borwein steps and Armijo backtracking.
  /// Only practical on coarse grids (the condition number grows like h^-4).
  ProjectedGradient,
};

struct FlowConfig {
  double tau = 1e-3;
  double t_end = 1.0;
  double inner_tol = 1e-8;
  int inner_max_iter = 200;
  double armijo_c = 1e-4;
  double backtrack = 0.5;
  /// Gap threshold for the coincidence set; <= 0 selects 10 inner_tol sqrt(h).
  double coincidence_tol = 0.0;
  InnerMethod method = InnerMethod::ProjectedNewton;
  /// If > 0, stop early once (E_k - E_{k+1}) / tau drops below this rate.
  double stall_rate = 0.0;

  /// Throws ParameterError naming the offending field.
  void validate() const;
  double coincidence_tol_for(const UniformGrid& grid) const;
};

/// Discrete variational-inequality certificate for one step, in L2 units.
/// gamma = (u - f)/tau + grad E_h(u).  Nodes with gap <= coincidence_tol are
/// active.
struct KKTReport {
  double stationarity_residual = 0.0;  // max |gamma| over inactive nodes
  double multiplier_min = 0.0;         // min gamma over active nodes (0 if none)
  double scale = 1.0;                  // 1 + max|u_dot| + gradient_term_scale
  std::vector<std::size_t> active_set;
  /// E_h is nonconvex: the certificate is a KKT point with Phi-decrease,
  /// not global optimality.
  static constexpr const char* kNote = "KKT point with Phi-decrease; global optimality not certified";

  bool ok(double tol) const {
    return stationarity_residual <= tol * scale && multiplier_min >= -tol * scale;
  }
};

struct StepResult {
  GridFunction u;
  KKTReport kkt;
  int inner_iterations = 0;
};

/// Thrown when the inner solver exhausts inner_max_iter; carries the last
/// iterate.  step is the flow step index (0 for a standalone mm_step).
class StepNonconvergence : public ConvergenceError {
 public:
  StepNonconvergence(const std::string& what, GridFunction partial, std::size_t step)
      : ConvergenceError(what), partial_(std::move(partial)), step_(step) {}
  const GridFunction& partial() const { return partial_; }
  std::size_t step() const { return step_; }

 private:
  GridFunction partial_;
  std::size_t step_;
};

/// KKT certificate of u as a step from f.  tau = +inf drops the proximal term.
KKTReport kkt_report(const GridFunction& u, const GridFunction& f, const Obstacle& psi,
                     double tau, double coincidence_tol);

/// Phi_tau^f(u).
double step_functional(const GridFunction& u, const GridFunction& f, double tau);

/// One minimizing-movement step from f.  Starts at f, so Phi never exceeds
/// Phi(f) = E_h(f).
StepResult mm_step(const GridFunction& f, const Obstacle& psi, const FlowConfig& cfg);

/// Box-constrained minimization of E_h alone (tau = infinity), started at u.
StepResult minimize_energy(const GridFunction& start, const Obstacle& psi, const FlowConfig& cfg);

struct Trajectory {
  explicit Trajectory(UniformGrid g) : grid(g) {}

  UniformGrid grid;
  double tau = 0.0;
  std::vector<double> times;
  std::vector<GridFunction> iterates;
  std::vector<double> energies;
  /// Entry k >= 1 belongs to the step u_{k-1} -> u_k; entry 0 is a zero row
  /// for the initial state.
  std::vector<double> step_norms;
  std::vector<std::size_t> coincidence_counts;
  std::vector<int> inner_iterations;
  std::vector<double> kkt_stationarity;
  std::vector<double> kkt_multiplier_min;
  std::vector<double> kkt_scale;
  std::vector<double> symmetry_residuals;
  std::vector<std::string> warnings;

  std::size_t steps() const { return iterates.empty() ? 0 : iterates.size() - 1; }
};

/// Warnings for the energy thresholds c0^2/4 and G(2)^2.
std::vector<std::string> threshold_warnings(double e0);

/// Iterates mm_step from u0 until t_end (or the stall criterion).  t_start
/// offsets the time axis, for resumed runs.
Trajectory run_flow(const GridFunction& u0, const Obstacle& psi, const FlowConfig& cfg,
                    double t_start = 0.0);

/// ubar(t) = u_{k+1} on (t_k, t_{k+1}], ubar(t_0) = u_0.
GridFunction interpolate_constant(const Trajectory& traj, double t);
/// Linear blend between neighbouring iterates.
GridFunction interpolate_linear(const Trajectory& traj, double t);

struct DissipationReport {
  double lhs = 0.0;             // E_K + sum |du|^2 / (2 tau)
  double rhs = 0.0;             // E_0 + slack
  double slack = 0.0;           // sum inner_tol |du_k| + K * 4 eps E_0
  double dissipated = 0.0;      // sum |du|^2 / tau
  double energy_drop = 0.0;     // E_0 - E_K
  double velocity_bound = 0.0;  // 2 E_0
  bool ok = true;
};

DissipationReport dissipation_report(const Trajectory& traj, double inner_tol);

/// Per-step form: E_{k+1} <= E_k and |du|^2/(2 tau) <= E_k - E_{k+1}, both up
/// to the same slack as above.  Returns the index of the first violating
/// step, if any.
std::optional<std::size_t> first_stanminimov_violation(const Trajectory& traj, double inner_tol);

struct HolderReport {
  double d = 0.0;            // sqrt(sum |du|^2 / tau)
  double worst_ratio = 0.0;  // max |u(t)-u(s)| / (D sqrt|t-s|)
  std::size_t pairs = 0;
  std::size_t violations = 0;
  bool ok = true;
};

HolderReport holder_check(const Trajectory& traj,
                          const std::vector<std::pair<double, double>>& pairs);

std::vector<std::size_t> coincidence_set(const GridFunction& u, const Obstacle& psi, double tol);

/// L0 = y^2 / (2 infE) / (5 / (1 + y^2) - 3), y = G^{-1}(sqrt(E0)).
/// Requires E0 < G(sqrt(2/3))^2 and infE > 0; PreconditionError otherwise.
double touch_window(double e0, double inf_e);

/// G(sqrt(2/3))^2, the energy bound under which touch_window is defined.
double touch_threshold();

struct TouchScan {
  bool ok = true;
  std::optional<std::size_t> first_touch_step;
  double longest_gap = 0.0;  // longest time span without a contact step
  std::size_t windows = 0;   // number of full windows [t, t + L0] inside the run
};

/// Checks that every window of length l0 inside the run contains a step with
/// a nonempty coincidence set.
TouchScan scan_touch_windows(const Trajectory& traj, double l0);

/// |s_1| and |s_{n-1}|: the second differences next to each endpoint.
std::pair<double, double> navier_diagnostic(const GridFunction& u);

double symmetry_residual(const GridFunction& u);

}  // namespace elasticflow
