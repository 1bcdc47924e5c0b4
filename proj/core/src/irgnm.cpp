#include "deconv2d/irgnm.hpp"

#include <cmath>
#include <limits>
#include <sstream>

namespace deconv2d {

int cg_solve(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
             const Eigen::VectorXd& b, Eigen::VectorXd& x, double rel_tol, int max_iters) {
  const double bnorm = b.norm();
  if (bnorm == 0.0) {
    x.setZero(b.size());
    return 0;
  }
  if (x.size() != b.size()) x = Eigen::VectorXd::Zero(b.size());
  Eigen::VectorXd r = b - apply(x);
  Eigen::VectorXd p = r;
  double rr = r.squaredNorm();
  const double target = rel_tol * bnorm;
  int it = 0;
  while (std::sqrt(rr) > target) {
    if (it >= max_iters) {
      std::ostringstream msg;
      msg << "cg_solve: no convergence after " << it
          << " iterations, relative residual " << std::sqrt(rr) / bnorm;
      throw SolverError(msg.str());
    }
    Eigen::VectorXd Ap = apply(p);
    const double pAp = p.dot(Ap);
    if (!(pAp > 0.0)) throw SolverError("cg_solve: operator not positive definite");
    const double a = rr / pAp;
    x += a * p;
    r -= a * Ap;
    const double rr_new = r.squaredNorm();
    p = r + (rr_new / rr) * p;
    rr = rr_new;
    ++it;
  }
  return it;
}

namespace {

// F'(x_n)*[F'(x_n) x_n + y^delta - F(x_n)], the shared right-hand side.
Eigen::VectorXd linearized_rhs(const SpectralOperator& op, const GridFunction& x_n,
                               const DataGrid& ydelta) {
  DataGrid lin = op.derivative_apply(x_n, x_n);
  DataGrid f = op.forward(x_n);
  DataGrid b(ydelta.data_case(), ydelta.n());
  b.values() = lin.values() + ydelta.values() - f.values();
  return op.adjoint_apply(x_n, b).vectorize();
}

Eigen::VectorXd normal_apply(const SpectralOperator& op, const GridFunction& x_n,
                             const Eigen::VectorXd& u) {
  GridFunction ug = GridFunction::devectorize(op.n(), u);
  return op.adjoint_apply(x_n, op.derivative_apply(x_n, ug)).vectorize();
}

}  // namespace

GridFunction irgnm_step_norm_square(const SpectralOperator& op, const GridFunction& x_n,
                                    const DataGrid& ydelta, double alpha_n,
                                    const GridFunction& xbar, const IrgnmConfig& cfg,
                                    int* cg_iterations) {
  if (alpha_n <= 0.0) throw std::invalid_argument("irgnm step: alpha must be positive");
  Eigen::VectorXd rhs = linearized_rhs(op, x_n, ydelta) + alpha_n * xbar.vectorize();
  auto apply = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
    return normal_apply(op, x_n, u) + alpha_n * u;
  };
  Eigen::VectorXd x = x_n.vectorize();  // warm start the inner solve
  int iters = cg_solve(apply, rhs, x, cfg.cg_tol, cfg.cg_max);
  if (cg_iterations) *cg_iterations = iters;
  return GridFunction::devectorize(op.n(), x);
}

GridFunction irgnm_step_gradient_square(const SpectralOperator& op, const GridFunction& x_n,
                                        const DataGrid& ydelta, double alpha_n,
                                        const IrgnmConfig& cfg, int* cg_iterations) {
  if (alpha_n <= 0.0) throw std::invalid_argument("irgnm step: alpha must be positive");
  Eigen::VectorXd rhs = linearized_rhs(op, x_n, ydelta);
  auto apply = [&](const Eigen::VectorXd& u) -> Eigen::VectorXd {
    GridFunction ug = GridFunction::devectorize(op.n(), u);
    return normal_apply(op, x_n, u) + alpha_n * grad_div_apply(ug).vectorize() + 1e-12 * u;
  };
  Eigen::VectorXd x = x_n.vectorize();
  int iters = cg_solve(apply, rhs, x, cfg.cg_tol, cfg.cg_max);
  if (cg_iterations) *cg_iterations = iters;
  return GridFunction::devectorize(op.n(), x);
}

std::vector<SolveRecord> irgnm_run(const SpectralOperator& op, const DataGrid& ydelta,
                                   const PenaltySpec& penalty, const GridFunction& x0,
                                   double tau_delta, const IrgnmConfig& cfg,
                                   const GridFunction* xref) {
  if (penalty.kind == PenaltyKind::SmoothedTv)
    throw std::invalid_argument("irgnm_run: smoothed TV is not supported by the iterative method");
  if (penalty.kind == PenaltyKind::NormSquare && !penalty.xbar)
    throw std::invalid_argument("irgnm_run: norm-square penalty needs a reference element");

  const double ynorm = discrete_l2_norm(ydelta);
  const double residual_target = tau_delta > 0.0 ? tau_delta : 1e-6 * ynorm;

  std::vector<SolveRecord> records;
  GridFunction x = x0;
  double alpha = cfg.alpha0;
  double best_error = std::numeric_limits<double>::infinity();
  int best_index = 0;
  int last_cg = 0;

  for (int n = 0; n <= cfg.max_outer; ++n) {
    SolveRecord rec;
    rec.x = x;
    rec.alpha = alpha;  // ladder value alpha_n; the system with alpha_n yields x_{n+1}
    rec.stop_index = n;
    rec.iterations = last_cg;  // CG cost of producing x_n
    rec.residual = discrete_l2_norm(op.forward(x) - ydelta);
    rec.penalty = penalty_value(penalty, x);
    rec.converged = true;
    if (xref) {
      rec.rel_error = relative_error(x, *xref);
      if (*rec.rel_error < best_error) {
        best_error = *rec.rel_error;
        best_index = n;
      }
    }
    records.push_back(std::move(rec));

    const bool residual_met = records.back().residual <= residual_target;
    const bool error_passed = xref && (n - best_index >= 3);
    if (residual_met && (!xref || error_passed)) break;
    if (n == cfg.max_outer) break;

    if (penalty.kind == PenaltyKind::NormSquare)
      x = irgnm_step_norm_square(op, x, ydelta, alpha, *penalty.xbar, cfg, &last_cg);
    else
      x = irgnm_step_gradient_square(op, x, ydelta, alpha, cfg, &last_cg);
    alpha *= cfg.q;
  }
  return records;
}

}  // namespace deconv2d
