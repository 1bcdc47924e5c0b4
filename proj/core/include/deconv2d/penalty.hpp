#ifndef DECONV2D_PENALTY_HPP
#define DECONV2D_PENALTY_HPP

#include <Eigen/Dense>

#include <optional>

#include "deconv2d/grid.hpp"

namespace deconv2d {

enum class PenaltyKind {
  NormSquare,      // ||x - xbar||^2 in the discrete L2 norm
  GradientSquare,  // forward-difference surrogate of int ||grad x||_2^2
  SmoothedTv       // smoothed total variation, sqrt(.^2 + h^2 beta^2) terms
};

std::string to_string(PenaltyKind k);

struct PenaltySpec {
  PenaltyKind kind = PenaltyKind::NormSquare;
  std::optional<GridFunction> xbar;  // NormSquare only
  double beta = 0.1;                 // SmoothedTv only, in (0,1)

  static PenaltySpec norm_square(GridFunction reference);
  static PenaltySpec gradient_square();
  static PenaltySpec smoothed_tv(double beta = 0.1);
};

/// Forward differences D1 x, D2 x scaled by 1/h; row i of d1 holds
/// (x_{i+1,j} - x_{i,j})/h for i = 0..n-2 (last row zero padding), and
/// column j of d2 holds (x_{i,j+1} - x_{i,j})/h likewise.
struct GradientField {
  Eigen::MatrixXd d1;
  Eigen::MatrixXd d2;
};

GradientField gradient_field(const GridFunction& x);

double penalty_value(const PenaltySpec& spec, const GridFunction& x);
GridFunction penalty_gradient(const PenaltySpec& spec, const GridFunction& x);
GridFunction penalty_hessian_apply(const PenaltySpec& spec, const GridFunction& x,
                                   const GridFunction& u);

/// Dense n^2 x n^2 Hessian in the row-major vectorization, for the Newton solver.
Eigen::MatrixXd penalty_hessian_matrix(const PenaltySpec& spec, const GridFunction& x);

/// The unweighted D^T D map (null space: constants). The gradient-square
/// penalty equals <D^T D x, x> and its gradient is 2 D^T D x; the iterative
/// solver uses this as the discrete grad*grad operator.
GridFunction grad_div_apply(const GridFunction& u);

}  // namespace deconv2d

#endif
