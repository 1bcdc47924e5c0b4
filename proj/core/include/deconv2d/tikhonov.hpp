#ifndef DECONV2D_TIKHONOV_HPP
#define DECONV2D_TIKHONOV_HPP

#include "deconv2d/grid.hpp"
#include "deconv2d/midpoint.hpp"
#include "deconv2d/penalty.hpp"
#include "deconv2d/solve_record.hpp"

namespace deconv2d {

struct NewtonConfig {
  int max_iters = 50;
  /// Convergence threshold on the Euclidean norm of the optimality residual
  /// 2h^2 M(x)^T (F(x) - y^delta) + alpha R'(x).
  double grad_tol = 1e-8;
  double contraction = 0.5;          // line-search backtracking factor
  double sufficient_decrease = 1e-4; // Armijo constant
  double min_step = 0x1p-30;
};

/// Minimizes the Tikhonov objective for fixed (alpha, y^delta) by a damped
/// Newton method on the first-order optimality condition
///   2h^2 M(x)^T (h^2 M(x) x - y^delta) + alpha R'(x) = 0,
/// whose potential is Phi(x) = 1/2 ||F(x) - y^delta||^2 + alpha R(x) (plain
/// Euclidean data term). The Newton matrix is the exact Hessian
/// 4h^4 M^T M + 2h^2 W(r) + alpha R''; on factorization failure or loss of
/// descent it falls back to the Gauss-Newton part 4h^4 M^T M + alpha R''.
///
/// Throws SolverError if the objective turns non-finite at the current
/// iterate. A failed line search returns the best iterate with
/// converged=false and a diagnostic instead.
SolveRecord tikhonov_solve(const MidpointOperator& op, const DataGrid& ydelta, double alpha,
                           const PenaltySpec& penalty, const GridFunction& x_init,
                           const NewtonConfig& cfg = {}, const GridFunction* xref = nullptr);

/// Unregularized least squares (alpha = 0): pure damped Gauss-Newton.
/// Near-singular normal matrices are handled with an escalating diagonal
/// shift, reported through SolveRecord::diagnostic.
SolveRecord least_squares_solve(const MidpointOperator& op, const DataGrid& ydelta,
                                const GridFunction& x_init, const NewtonConfig& cfg = {},
                                const GridFunction* xref = nullptr);

}  // namespace deconv2d

#endif
