#ifndef DECONV2D_IRGNM_HPP
#define DECONV2D_IRGNM_HPP

#include <functional>
#include <vector>

#include "deconv2d/grid.hpp"
#include "deconv2d/penalty.hpp"
#include "deconv2d/solve_record.hpp"
#include "deconv2d/spectral.hpp"

namespace deconv2d {

struct IrgnmConfig {
  double alpha0 = 1.0;
  double q = 0.5;       // alpha_n = q^n alpha0, so alpha_n/alpha_{n+1} = 2 <= C
  int max_outer = 60;
  double cg_tol = 1e-10;  // relative residual of the inner CG solve
  int cg_max = 2000;
};

/// Conjugate gradients for an SPD operator in the unweighted Euclidean inner
/// product. Returns the iteration count; throws SolverError when the relative
/// residual target is not met within max_iters.
int cg_solve(const std::function<Eigen::VectorXd(const Eigen::VectorXd&)>& apply,
             const Eigen::VectorXd& b, Eigen::VectorXd& x, double rel_tol, int max_iters);

/// One Gauss-Newton step with the norm-square penalty: solves
///   (F'(x_n)* F'(x_n) + alpha_n I) x = F'(x_n)*[F'(x_n) x_n + y^delta - F(x_n)] + alpha_n xbar
/// by CG with the spectral operator backend.
GridFunction irgnm_step_norm_square(const SpectralOperator& op, const GridFunction& x_n,
                                    const DataGrid& ydelta, double alpha_n,
                                    const GridFunction& xbar, const IrgnmConfig& cfg = {},
                                    int* cg_iterations = nullptr);

/// One Gauss-Newton step with the gradient-square penalty: solves
///   (F'(x_n)* F'(x_n) + alpha_n D^T D) x = F'(x_n)*[F'(x_n) x_n + y^delta - F(x_n)].
/// A 1e-12 diagonal jitter keeps the system safely positive definite near the
/// joint null space (constants when F'(x_n) nearly annihilates them).
GridFunction irgnm_step_gradient_square(const SpectralOperator& op, const GridFunction& x_n,
                                        const DataGrid& ydelta, double alpha_n,
                                        const IrgnmConfig& cfg = {}, int* cg_iterations = nullptr);

/// Full outer iteration from x0. Record n holds the iterate x_n, its
/// h-weighted residual, alpha = n (the stop index), and the relative error
/// when xref is given. The run extends until the residual falls below
/// tau_delta (or below 1e-6 ||y^delta|| when tau_delta <= 0) and, when xref
/// is supplied, the error has moved past its minimum; max_outer caps it.
std::vector<SolveRecord> irgnm_run(const SpectralOperator& op, const DataGrid& ydelta,
                                   const PenaltySpec& penalty, const GridFunction& x0,
                                   double tau_delta, const IrgnmConfig& cfg = {},
                                   const GridFunction* xref = nullptr);

}  // namespace deconv2d

#endif
