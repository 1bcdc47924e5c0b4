#ifndef DECONV2D_SOLVE_RECORD_HPP
#define DECONV2D_SOLVE_RECORD_HPP

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "deconv2d/grid.hpp"

namespace deconv2d {

/// Raised when a solver cannot proceed (non-finite objective, inner CG
/// breakdown). Expected near-singular systems degrade gracefully instead.
struct SolverError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// One regularized solution together with its selection bookkeeping.
struct SolveRecord {
  GridFunction x;
  /// Ladder value alpha_l = q^l alpha0 (for the iterative method, the ladder
  /// value attached to outer iterate n).
  double alpha = 0.0;
  /// Position on the ladder: l (possibly negative) for variational runs, the
  /// outer index n for the iterative method. -1 for standalone solves.
  int stop_index = -1;
  /// ||F(x) - y^delta|| in the h-weighted discrete L2 norm.
  double residual = 0.0;
  double penalty = 0.0;
  int iterations = 0;
  bool converged = false;
  /// ||x - xref|| / ||xref|| when the exact solution is supplied.
  std::optional<double> rel_error;

  // solver diagnostics
  double objective = 0.0;
  double grad_norm = 0.0;
  std::vector<double> objective_trace;
  std::string diagnostic;
};

}  // namespace deconv2d

#endif
