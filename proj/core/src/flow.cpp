#include "elasticflow/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "box_solver.hpp"
#include "elasticflow/specialfn.hpp"

namespace elasticflow {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

void require_admissible(const GridFunction& f, const Obstacle& psi, const char* where) {
  require_same_grid(f, psi.samples(), where);
  if (!f.all_finite()) throw DomainError(std::string(where) + ": non-finite data");
  const std::size_t n = f.n();
  if (f[0] != 0.0 || f[n] != 0.0)
    throw PreconditionError(std::string(where) + ": data must vanish at both endpoints");
  for (std::size_t i = 1; i < n; ++i)
    if (f[i] < psi[i])
      throw PreconditionError(std::string(where) + ": data below the obstacle at node " +
                              std::to_string(i));
}

GridFunction difference(const GridFunction& a, const GridFunction& b) {
  GridFunction d = a;
  for (std::size_t i = 0; i < d.size(); ++i) d[i] -= b[i];
  return d;
}

StepResult finish(detail::BoxOutcome out, const GridFunction& f, const Obstacle& psi,
                  double tau, const FlowConfig& cfg, const char* what) {
  KKTReport kkt = kkt_report(out.u, f, psi, tau, cfg.coincidence_tol_for(f.grid()));
  if (!out.converged)
    throw StepNonconvergence(std::string(what) + ": inner solver stopped after " +
                                 std::to_string(out.iterations) +
                                 " iterations with KKT stationarity " +
                                 fmt(kkt.stationarity_residual) + ", multiplier min " +
                                 fmt(kkt.multiplier_min) + " (scale " + fmt(kkt.scale) + ")",
                             out.u, 0);
  return {std::move(out.u), std::move(kkt), out.iterations};
}

}  // namespace

void FlowConfig::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau)) throw ParameterError("tau must be finite and > 0");
  if (!(t_end >= tau)) throw ParameterError("t_end must be >= tau");
  if (!(inner_tol > 0.0)) throw ParameterError("inner_tol must be > 0");
  if (inner_max_iter < 1) throw ParameterError("inner_max_iter must be >= 1");
  if (!(armijo_c > 0.0 && armijo_c < 1.0)) throw ParameterError("armijo_c must lie in (0,1)");
  if (!(backtrack > 0.0 && backtrack < 1.0)) throw ParameterError("backtrack must lie in (0,1)");
  if (!std::isfinite(coincidence_tol)) throw ParameterError("coincidence_tol must be finite");
  if (stall_rate < 0.0) throw ParameterError("stall_rate must be >= 0");
}

double FlowConfig::coincidence_tol_for(const UniformGrid& grid) const {
  return coincidence_tol > 0.0 ? coincidence_tol : 10.0 * inner_tol * std::sqrt(grid.h());
}

KKTReport kkt_report(const GridFunction& u, const GridFunction& f, const Obstacle& psi,
                     double tau, double coincidence_tol) {
  require_same_grid(u, f, "kkt_report");
  require_same_grid(u, psi.samples(), "kkt_report");
  const GridFunction grad = energy_gradient(u);
  const bool prox = std::isfinite(tau);
  KKTReport r;
  double vmax = 0.0;
  double mult = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < u.n(); ++i) {
    const double velocity = prox ? (u[i] - f[i]) / tau : 0.0;
    vmax = std::max(vmax, std::abs(velocity));
    const double gamma = velocity + grad[i];
    if (u[i] - psi[i] <= coincidence_tol) {
      r.active_set.push_back(i);
      mult = std::min(mult, gamma);
    } else {
      r.stationarity_residual = std::max(r.stationarity_residual, std::abs(gamma));
    }
  }
  r.multiplier_min = r.active_set.empty() ? 0.0 : mult;
  r.scale = 1.0 + vmax + gradient_term_scale(u);
  return r;
}

double step_functional(const GridFunction& u, const GridFunction& f, double tau) {
  const double d = l2_norm(difference(u, f));
  return energy(u) + d * d / (2.0 * tau);
}

StepResult mm_step(const GridFunction& f, const Obstacle& psi, const FlowConfig& cfg) {
  cfg.validate();
  require_admissible(f, psi, "mm_step");
  return finish(detail::solve_box(f, f, 1.0 / cfg.tau, psi, cfg), f, psi, cfg.tau, cfg,
                "mm_step");
}

StepResult minimize_energy(const GridFunction& start, const Obstacle& psi,
                           const FlowConfig& cfg) {
  cfg.validate();
  require_admissible(start, psi, "minimize_energy");
  return finish(detail::solve_box(start, start, 0.0, psi, cfg), start, psi,
                std::numeric_limits<double>::infinity(), cfg, "minimize_energy");
}

std::vector<std::string> threshold_warnings(double e0) {
  std::vector<std::string> w;
  const double c0sq = 0.25 * specialfn::c0() * specialfn::c0();
  const double g2 = specialfn::g(2.0);
  if (e0 >= c0sq)
    w.push_back("E(u0) = " + fmt(e0) + " is not below c0^2/4 = " + fmt(c0sq));
  if (e0 > g2 * g2)
    w.push_back("E(u0) = " + fmt(e0) + " exceeds G(2)^2 = " + fmt(g2 * g2) +
                ": outside proven regime");
  return w;
}

Trajectory run_flow(const GridFunction& u0, const Obstacle& psi, const FlowConfig& cfg,
                    double t_start) {
  cfg.validate();
  require_admissible(u0, psi, "run_flow");
  const UniformGrid grid = u0.grid();
  const double ctol = cfg.coincidence_tol_for(grid);

  Trajectory traj(grid);
  traj.tau = cfg.tau;
  const double e0 = energy(u0);
  traj.warnings = threshold_warnings(e0);
  if (cfg.tau > 10.0 * grid.h() * grid.h())
    traj.warnings.push_back("tau = " + fmt(cfg.tau) + " exceeds 10 h^2 = " +
                            fmt(10.0 * grid.h() * grid.h()) +
                            "; KKT residuals are less informative");
  if (!psi.assumption1_ok()) traj.warnings.push_back("obstacle violates Assumption 1");

  const auto record = [&](GridFunction u, double t, double e, double step_norm,
                          const KKTReport& kkt, int iters) {
    traj.times.push_back(t);
    traj.energies.push_back(e);
    traj.step_norms.push_back(step_norm);
    traj.coincidence_counts.push_back(coincidence_set(u, psi, ctol).size());
    traj.inner_iterations.push_back(iters);
    traj.kkt_stationarity.push_back(kkt.stationarity_residual);
    traj.kkt_multiplier_min.push_back(kkt.multiplier_min);
    traj.kkt_scale.push_back(kkt.scale);
    traj.symmetry_residuals.push_back(symmetry_residual(u));
    traj.iterates.push_back(std::move(u));
  };
  record(u0, t_start, e0, 0.0, KKTReport{}, 0);

  const double span = (cfg.t_end - t_start) / cfg.tau;
  const auto steps = static_cast<std::size_t>(std::max(0.0, std::ceil(span - 1e-9)));
  for (std::size_t k = 1; k <= steps; ++k) {
    const GridFunction& prev = traj.iterates.back();
    detail::BoxOutcome out = detail::solve_box(prev, prev, 1.0 / cfg.tau, psi, cfg);
    KKTReport kkt = kkt_report(out.u, prev, psi, cfg.tau, ctol);
    if (!out.converged)
      throw StepNonconvergence("run_flow: step " + std::to_string(k) +
                                   " did not converge (KKT stationarity " +
                                   fmt(kkt.stationarity_residual) + ", scale " +
                                   fmt(kkt.scale) + ")",
                               out.u, k);
    const double e = energy(out.u);
    const double d = l2_norm(difference(out.u, prev));
    const double drop_rate = (traj.energies.back() - e) / cfg.tau;
    record(std::move(out.u), t_start + static_cast<double>(k) * cfg.tau, e, d, kkt,
           out.iterations);
    if (cfg.stall_rate > 0.0 && drop_rate < cfg.stall_rate) break;
  }
  return traj;
}

namespace {

// Index k with t in (t_{k-1}, t_k], snapping to nodes within 1e-9 tau.
std::size_t locate(const Trajectory& traj, double t, bool& on_node) {
  if (traj.iterates.empty()) throw DomainError("interpolate: empty trajectory");
  const double t0 = traj.times.front();
  const double snap = 1e-9 * traj.tau;
  if (!(t >= t0 - snap && t <= traj.times.back() + snap))
    throw DomainError("interpolate: t = " + fmt(t) + " outside [" + fmt(t0) + ", " +
                      fmt(traj.times.back()) + "]");
  const double r = (t - t0) / traj.tau;
  const double k = std::round(r);
  if (std::abs(r - k) * traj.tau <= snap) {
    on_node = true;
    return std::min(static_cast<std::size_t>(k), traj.steps());
  }
  on_node = false;
  return std::min(static_cast<std::size_t>(std::ceil(r)), traj.steps());
}

}  // namespace

GridFunction interpolate_constant(const Trajectory& traj, double t) {
  bool on_node = false;
  return traj.iterates[locate(traj, t, on_node)];
}

GridFunction interpolate_linear(const Trajectory& traj, double t) {
  bool on_node = false;
  const std::size_t k = locate(traj, t, on_node);
  if (on_node || k == 0) return traj.iterates[k];
  const double lambda = (t - traj.times[k - 1]) / traj.tau;
  GridFunction u = traj.iterates[k - 1];
  const GridFunction& next = traj.iterates[k];
  for (std::size_t i = 0; i < u.size(); ++i) u[i] = (1.0 - lambda) * u[i] + lambda * next[i];
  return u;
}

DissipationReport dissipation_report(const Trajectory& traj, double inner_tol) {
  DissipationReport r;
  if (traj.iterates.empty()) return r;
  const double e0 = traj.energies.front();
  const std::size_t steps = traj.steps();
  double sum = 0.0;
  double slack = 4.0 * kEps * e0 * static_cast<double>(steps);
  for (std::size_t k = 1; k <= steps; ++k) {
    const double d = traj.step_norms[k];
    sum += d * d;
    slack += inner_tol * d;
  }
  r.slack = slack;
  r.dissipated = sum / traj.tau;
  r.energy_drop = e0 - traj.energies.back();
  r.lhs = traj.energies.back() + 0.5 * r.dissipated;
  r.rhs = e0 + slack;
  r.velocity_bound = 2.0 * e0;
  r.ok = r.lhs <= r.rhs && r.dissipated <= r.velocity_bound + 2.0 * slack;
  return r;
}

std::optional<std::size_t> first_stanminimov_violation(const Trajectory& traj,
                                                       double inner_tol) {
  for (std::size_t k = 1; k <= traj.steps(); ++k) {
    const double d = traj.step_norms[k];
    const double slack = inner_tol * d + 4.0 * kEps * traj.energies[k - 1];
    const double drop = traj.energies[k - 1] - traj.energies[k];
    if (drop < -slack || d * d / (2.0 * traj.tau) > drop + slack) return k;
  }
  return std::nullopt;
}

HolderReport holder_check(const Trajectory& traj,
                          const std::vector<std::pair<double, double>>& pairs) {
  HolderReport r;
  double sum = 0.0;
  for (std::size_t k = 1; k <= traj.steps(); ++k) sum += traj.step_norms[k] * traj.step_norms[k];
  r.d = std::sqrt(sum / traj.tau);
  for (const auto& [s, t] : pairs) {
    const double dist = l2_norm(difference(interpolate_linear(traj, t), interpolate_linear(traj, s)));
    const double bound = r.d * std::sqrt(std::abs(t - s));
    ++r.pairs;
    if (bound > 0.0) r.worst_ratio = std::max(r.worst_ratio, dist / bound);
    if (dist > bound * (1.0 + 1e-12) + 1e-14) ++r.violations;
  }
  r.ok = r.violations == 0;
  return r;
}

std::vector<std::size_t> coincidence_set(const GridFunction& u, const Obstacle& psi, double tol) {
  require_same_grid(u, psi.samples(), "coincidence_set");
  std::vector<std::size_t> set;
  for (std::size_t i = 0; i < u.size(); ++i)
    if (u[i] - psi[i] <= tol) set.push_back(i);
  return set;
}

double touch_threshold() {
  const double g = specialfn::g(std::sqrt(2.0 / 3.0));
  return g * g;
}

double touch_window(double e0, double inf_e) {
  if (!(inf_e > 0.0)) throw PreconditionError("touch_window: infE must be > 0");
  if (!(e0 >= 0.0)) throw PreconditionError("touch_window: E0 must be >= 0");
  const double thr = touch_threshold();
  if (!(e0 < thr))
    throw PreconditionError("touch_window: E0 = " + fmt(e0) + " is not below G(sqrt(2/3))^2 = " +
                            fmt(thr));
  const double y = specialfn::g_inv(std::sqrt(e0));
  const double y2 = y * y;
  return y2 / (2.0 * inf_e) / (5.0 / (1.0 + y2) - 3.0);
}

TouchScan scan_touch_windows(const Trajectory& traj, double l0) {
  TouchScan r;
  if (traj.iterates.empty()) return r;
  const double t0 = traj.times.front();
  const double t_last = traj.times.back();
  double prev = t0;
  bool any = false;
  for (std::size_t k = 0; k <= traj.steps(); ++k) {
    if (traj.coincidence_counts[k] == 0) continue;
    if (!r.first_touch_step) r.first_touch_step = k;
    r.longest_gap = std::max(r.longest_gap, traj.times[k] - prev);
    prev = traj.times[k];
    any = true;
  }
  r.longest_gap = std::max(r.longest_gap, t_last - prev);
  if (!any) r.longest_gap = t_last - t0;
  r.windows = l0 > 0.0 ? static_cast<std::size_t>(std::floor((t_last - t0) / l0)) : 0;
  r.ok = r.longest_gap <= l0;
  return r;
}

std::pair<double, double> navier_diagnostic(const GridFunction& u) {
  const GridFunction s = second_diff(u);
  return {std::abs(s[1]), std::abs(s[u.n() - 1])};
}

double symmetry_residual(const GridFunction& u) {
  const std::size_t n = u.n();
  double m = 0.0;
  for (std::size_t i = 0; i <= n; ++i) m = std::max(m, std::abs(u[i] - u[n - i]));
  return m;
}

}  // namespace elasticflow
