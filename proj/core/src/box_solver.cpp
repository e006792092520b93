#include "box_solver.hpp"

#include <Eigen/SparseCholesky>
#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "energy_detail.hpp"

namespace elasticflow::detail {

namespace {

constexpr double kMinStep = 1e-14;

struct Problem {
  const GridFunction& f;
  double inv_tau;
  const Obstacle& psi;
  const FlowConfig& cfg;
  double ctol;

  double phi(const GridFunction& x) const {
    double prox = 0.0;
    if (inv_tau > 0.0) {
      for (std::size_t i = 1; i < x.n(); ++i) prox += (x[i] - f[i]) * (x[i] - f[i]);
      prox *= 0.5 * inv_tau * x.grid().h();
    }
    return energy(x) + prox;
  }

  std::vector<double> grad(const GridFunction& x) const {
    auto g = coordinate_gradient(x);
    const double c = inv_tau * x.grid().h();
    if (c > 0.0)
      for (std::size_t i = 1; i < x.n(); ++i) g[i] += c * (x[i] - f[i]);
    return g;
  }

  KKTReport kkt(const GridFunction& x) const {
    const double tau = inv_tau > 0.0 ? 1.0 / inv_tau : std::numeric_limits<double>::infinity();
    return kkt_report(x, f, psi, tau, ctol);
  }

  GridFunction project(const GridFunction& x) const {
    GridFunction y = x;
    for (std::size_t i = 1; i < y.n(); ++i) y[i] = std::max(y[i], psi[i]);
    return y;
  }
};

double inf_norm_interior(const GridFunction& x) {
  double m = 0.0;
  for (std::size_t i = 1; i < x.n(); ++i) m = std::max(m, std::abs(x[i]));
  return m;
}

// Two-metric projected Newton.  Nodes within eps of the obstacle and pushed
// into it are decoupled and moved by a diagonally scaled gradient step; the
// rest get a Newton step on the reduced Hessian.
BoxOutcome projected_newton(const GridFunction& start, const Problem& pb) {
  const std::size_t n = start.n();
  const double h = start.grid().h();
  const int m = static_cast<int>(n - 1);
  GridFunction x = pb.project(start);
  double phi = pb.phi(x);
  bool tiny_step = false;

  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>, Eigen::Lower, Eigen::NaturalOrdering<int>>
      ldlt;

  for (int it = 0; it < pb.cfg.inner_max_iter; ++it) {
    const auto g = pb.grad(x);
    const KKTReport kkt = pb.kkt(x);
    if (kkt.ok(pb.cfg.inner_tol) && tiny_step) return {x, it, true};

    double pg = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      const double gamma = g[i] / h;
      pg = std::max(pg, std::abs(x[i] - std::max(pb.psi[i], x[i] - gamma)));
    }
    const double eps = std::min(pb.ctol, pg);
    std::vector<char> bound(n + 1, 0);
    for (std::size_t i = 1; i < n; ++i)
      bound[i] = (x[i] - pb.psi[i] <= eps && g[i] > 0.0) ? 1 : 0;

    Eigen::VectorXd d(m);
    bool solved = false;
    for (int attempt = 0; attempt < 2 && !solved; ++attempt) {
      Eigen::SparseMatrix<double> H = interior_hessian(x, attempt == 1);
      std::vector<double> diag(m, 0.0);
      std::vector<Eigen::Triplet<double>> trips;
      trips.reserve(H.nonZeros() + m);
      for (int k = 0; k < H.outerSize(); ++k)
        for (Eigen::SparseMatrix<double>::InnerIterator e(H, k); e; ++e) {
          const int r = static_cast<int>(e.row());
          const int c = static_cast<int>(e.col());
          if (r == c) diag[r] = e.value();
          if (bound[r + 1] || bound[c + 1]) continue;
          trips.emplace_back(r, c, e.value());
        }
      Eigen::VectorXd rhs(m);
      const double prox = pb.inv_tau * h;
      for (int r = 0; r < m; ++r) {
        rhs[r] = -g[r + 1];
        if (bound[r + 1]) {
          const double dr = diag[r] + prox;
          trips.emplace_back(r, r, dr > 0.0 ? dr : 1.0);
        } else if (prox > 0.0) {
          trips.emplace_back(r, r, prox);
        }
      }
      Eigen::SparseMatrix<double> K(m, m);
      K.setFromTriplets(trips.begin(), trips.end());
      ldlt.compute(K);
      if (ldlt.info() != Eigen::Success || !(ldlt.vectorD().minCoeff() > 0.0)) continue;
      d = ldlt.solve(rhs);
      solved = ldlt.info() == Eigen::Success && d.allFinite();
    }
    if (!solved) {
      // Both Hessians failed; fall back to a steepest-descent direction.
      for (int r = 0; r < m; ++r) d[r] = -g[r + 1] / h;
    }

    const double scale = 1.0 + inf_norm_interior(x);
    if (d.lpNorm<Eigen::Infinity>() <= 1e-15 * scale) return {x, it, kkt.ok(pb.cfg.inner_tol)};

    double alpha = 1.0;
    bool accepted = false;
    GridFunction xa = x;
    double pa = phi;
    while (alpha >= kMinStep) {
      double model = 0.0;
      for (std::size_t i = 1; i < n; ++i) {
        xa[i] = std::max(x[i] + alpha * d[static_cast<int>(i - 1)], pb.psi[i]);
        model += g[i] * (xa[i] - x[i]);
      }
      if (model >= 0.0) break;
      pa = pb.phi(xa);
      if (pa <= phi + pb.cfg.armijo_c * model) {
        accepted = true;
        break;
      }
      alpha *= pb.cfg.backtrack;
    }
    if (!accepted) return {x, it, kkt.ok(pb.cfg.inner_tol)};

    double step = 0.0;
    for (std::size_t i = 1; i < n; ++i) step = std::max(step, std::abs(xa[i] - x[i]));
    tiny_step = step <= 1e-12 * scale;
    x = xa;
    phi = pa;
  }
  return {x, pb.cfg.inner_max_iter, pb.kkt(x).ok(pb.cfg.inner_tol)};
}

BoxOutcome projected_gradient(const GridFunction& start, const Problem& pb) {
  const std::size_t n = start.n();
  const double h = start.grid().h();
  GridFunction x = pb.project(start);
  double phi = pb.phi(x);
  auto g = pb.grad(x);
  double alpha = 1.0;
  {
    double gmax = 0.0;
    for (std::size_t i = 1; i < n; ++i) gmax = std::max(gmax, std::abs(g[i] / h));
    alpha = std::clamp(1.0 / (1.0 + gmax), 1e-8, 1e4);
  }

  for (int it = 0; it < pb.cfg.inner_max_iter; ++it) {
    if (pb.kkt(x).ok(pb.cfg.inner_tol)) return {x, it, true};
    GridFunction xa = x;
    double pa = phi;
    double trial = alpha;
    bool accepted = false;
    while (trial >= kMinStep * 1e-8) {
      double model = 0.0;
      for (std::size_t i = 1; i < n; ++i) {
        xa[i] = std::max(x[i] - trial * g[i] / h, pb.psi[i]);
        model += g[i] * (xa[i] - x[i]);
      }
      if (model >= 0.0) break;
      pa = pb.phi(xa);
      if (pa <= phi + pb.cfg.armijo_c * model) {
        accepted = true;
        break;
      }
      trial *= pb.cfg.backtrack;
    }
    if (!accepted) return {x, it, pb.kkt(x).ok(pb.cfg.inner_tol)};

    const auto ga = pb.grad(xa);
    double ss = 0.0;
    double sy = 0.0;
    for (std::size_t i = 1; i < n; ++i) {
      const double s = xa[i] - x[i];
      ss += s * s;
      sy += s * (ga[i] - g[i]) / h;
    }
    alpha = sy > 0.0 ? std::clamp(ss / sy, 1e-8, 1e4) : 1e4;
    x = xa;
    phi = pa;
    g = ga;
  }
  return {x, pb.cfg.inner_max_iter, pb.kkt(x).ok(pb.cfg.inner_tol)};
}

}  // namespace

BoxOutcome solve_box(const GridFunction& start, const GridFunction& f, double inv_tau,
                     const Obstacle& psi, const FlowConfig& cfg) {
  require_same_grid(start, f, "solve_box");
  require_same_grid(start, psi.samples(), "solve_box");
  const Problem pb{f, inv_tau, psi, cfg, cfg.coincidence_tol_for(start.grid())};
  return cfg.method == InnerMethod::ProjectedNewton ? projected_newton(start, pb)
                                                    : projected_gradient(start, pb);
}

}  // namespace elasticflow::detail
