#include "deconv2d/tikhonov.hpp"

#include <Eigen/Cholesky>
#include <Eigen/LU>

#include <cmath>
#include <sstream>

namespace deconv2d {

namespace {

struct Objective {
  const MidpointOperator& op;
  const DataGrid& ydelta;
  double alpha;
  const PenaltySpec* penalty;  // null for plain least squares
  Eigen::VectorXd yvec;

  explicit Objective(const MidpointOperator& op_, const DataGrid& yd, double a,
                     const PenaltySpec* pen)
      : op(op_), ydelta(yd), alpha(a), penalty(pen), yvec(yd.vectorize()) {}

  double value(const GridFunction& x, Eigen::VectorXd* residual_out = nullptr) const {
    Eigen::VectorXd r = op.forward(x).vectorize() - yvec;
    double v = 0.5 * r.squaredNorm();
    if (penalty && alpha > 0.0) v += alpha * penalty_value(*penalty, x);
    if (residual_out) *residual_out = std::move(r);
    return v;
  }

  // Optimality residual 2h^2 M^T r + alpha R'(x), vectorized.
  Eigen::VectorXd gradient(const GridFunction& x, const Eigen::VectorXd& r) const {
    DataGrid rg = DataGrid::devectorize(ydelta.data_case(), op.n(), r);
    Eigen::VectorXd g = op.derivative_adjoint_apply(x, rg).vectorize();
    if (penalty && alpha > 0.0) g += alpha * penalty_gradient(*penalty, x).vectorize();
    return g;
  }
};

SolveRecord solve_impl(const MidpointOperator& op, const DataGrid& ydelta, double alpha,
                       const PenaltySpec* penalty, const GridFunction& x_init,
                       const NewtonConfig& cfg, const GridFunction* xref) {
  if (x_init.n() != op.n()) throw std::invalid_argument("tikhonov_solve: x_init size mismatch");
  if (ydelta.data_case() != op.data_case() || ydelta.n() != op.n())
    throw std::invalid_argument("tikhonov_solve: data grid mismatch");
  if (alpha < 0.0) throw std::invalid_argument("tikhonov_solve: alpha must be nonnegative");

  const int n = op.n();
  const double h2 = 1.0 / (double(n) * n);
  const Objective obj(op, ydelta, alpha, penalty);

  GridFunction x = x_init;
  Eigen::VectorXd r;
  double phi = obj.value(x, &r);
  if (!std::isfinite(phi)) throw SolverError("tikhonov_solve: non-finite objective at start");

  SolveRecord rec;
  rec.alpha = alpha;
  rec.objective_trace.push_back(phi);
  std::ostringstream diag;

  Eigen::VectorXd g = obj.gradient(x, r);
  int iter = 0;
  const bool use_exact_newton = (penalty != nullptr && alpha > 0.0);

  for (; iter < cfg.max_iters; ++iter) {
    if (g.norm() <= cfg.grad_tol) {
      rec.converged = true;
      break;
    }

    const Eigen::MatrixXd M = op.assemble_matrix(x);
    Eigen::MatrixXd Hgn = (4.0 * h2 * h2) * (M.transpose() * M);
    if (penalty && alpha > 0.0) Hgn += alpha * penalty_hessian_matrix(*penalty, x);

    Eigen::VectorXd d;
    bool have_direction = false;
    if (use_exact_newton) {
      DataGrid rg = DataGrid::devectorize(ydelta.data_case(), n, r);
      Eigen::MatrixXd H = Hgn + (2.0 * h2) * op.curvature_matrix(rg);
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(H);
      Eigen::VectorXd cand = lu.solve(-g);
      if (cand.allFinite() && g.dot(cand) < 0.0) {
        d = std::move(cand);
        have_direction = true;
      }
    }
    if (!have_direction) {
      // Gauss-Newton direction; escalate a diagonal shift until the
      // factorization succeeds and yields descent.
      double shift = 0.0;
      const double base = std::max(1.0, Hgn.trace() / Hgn.rows()) * 1e-14;
      for (int attempt = 0; attempt < 8; ++attempt) {
        Eigen::MatrixXd Hs = Hgn;
        if (shift > 0.0) Hs.diagonal().array() += shift;
        Eigen::LLT<Eigen::MatrixXd> llt(Hs);
        if (llt.info() == Eigen::Success) {
          Eigen::VectorXd cand = llt.solve(-g);
          if (cand.allFinite() && g.dot(cand) < 0.0) {
            d = std::move(cand);
            have_direction = true;
            if (shift > 0.0) diag << "gn shift " << shift << " at iter " << iter << "; ";
            break;
          }
        }
        shift = (shift == 0.0) ? base : shift * 100.0;
      }
    }
    if (!have_direction) {
      diag << "no descent direction at iter " << iter << "; ";
      break;
    }

    // Armijo backtracking on the potential of the optimality condition.
    const double slope = g.dot(d);
    double t = 1.0;
    bool accepted = false;
    GridFunction x_trial(n);
    double phi_trial = 0.0;
    Eigen::VectorXd r_trial;
    while (t >= cfg.min_step) {
      x_trial = GridFunction::devectorize(n, x.vectorize() + t * d);
      phi_trial = obj.value(x_trial, &r_trial);
      if (std::isfinite(phi_trial) && phi_trial <= phi + cfg.sufficient_decrease * t * slope) {
        accepted = true;
        break;
      }
      t *= cfg.contraction;
    }
    if (!accepted) {
      diag << "line search stalled at iter " << iter << "; ";
      break;
    }

    x = std::move(x_trial);
    r = std::move(r_trial);
    phi = phi_trial;
    rec.objective_trace.push_back(phi);
    g = obj.gradient(x, r);
  }

  if (!rec.converged && g.norm() <= cfg.grad_tol) rec.converged = true;

  rec.x = x;
  rec.iterations = iter;
  rec.objective = phi;
  rec.grad_norm = g.norm();
  rec.residual = (1.0 / n) * r.norm();
  rec.penalty = penalty ? penalty_value(*penalty, x) : 0.0;
  if (xref) rec.rel_error = relative_error(x, *xref);
  rec.diagnostic = diag.str();
  return rec;
}

}  // namespace

SolveRecord tikhonov_solve(const MidpointOperator& op, const DataGrid& ydelta, double alpha,
                           const PenaltySpec& penalty, const GridFunction& x_init,
                           const NewtonConfig& cfg, const GridFunction* xref) {
  return solve_impl(op, ydelta, alpha, &penalty, x_init, cfg, xref);
}

SolveRecord least_squares_solve(const MidpointOperator& op, const DataGrid& ydelta,
                                const GridFunction& x_init, const NewtonConfig& cfg,
                                const GridFunction* xref) {
  return solve_impl(op, ydelta, 0.0, nullptr, x_init, cfg, xref);
}

}  // namespace deconv2d
