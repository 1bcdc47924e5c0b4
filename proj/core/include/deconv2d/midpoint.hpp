#ifndef DECONV2D_MIDPOINT_HPP
#define DECONV2D_MIDPOINT_HPP

#include <Eigen/Dense>

#include "deconv2d/grid.hpp"

namespace deconv2d {

/// Composite-midpoint-rule discretization of the autoconvolution operator.
///
/// F(x) = h^2 M(x) vec(x) with the lower-triangular block matrix M_1 in the
/// limited case and the extended 4n^2 x n^2 block matrix M_2 in the full
/// case. Evaluation is matrix-free (block convolution); assemble_matrix
/// produces the explicit matrix for the Newton solver and for tests.
class MidpointOperator {
public:
  MidpointOperator(int n, DataCase data_case) : n_(n), case_(data_case) {}

  int n() const { return n_; }
  DataCase data_case() const { return case_; }
  int output_size() const { return case_ == DataCase::Limited ? n_ * n_ : 4 * n_ * n_; }

  /// y_{k,l} = h^2 sum_{i<=k, j<=l} x_{k-i+1,l-j+1} x_{i,j} on the observed lattice.
  DataGrid forward(const GridFunction& x) const;

  /// F'(x)u = 2 h^2 M(x) vec(u); symmetric in (x, u).
  DataGrid derivative_apply(const GridFunction& x, const GridFunction& u) const;

  /// devectorize(2 h^2 M(x)^T vec(r)); the discrete adjoint of F'(x).
  GridFunction derivative_adjoint_apply(const GridFunction& x, const DataGrid& r) const;

  /// The block matrix M(x) itself (no h^2 factor): n^2 x n^2 (limited) or
  /// 4n^2 x n^2 (full), rows ordered q = (k-1)*extent + l.
  Eigen::MatrixXd assemble_matrix(const GridFunction& x) const;

  /// Matrix W(r) of the map u -> M(u)^T vec(r), the second-order term of the
  /// data-misfit Hessian: W_{(i,j),(i',j')} = r_{i+i'-1, j+j'-1} (zero when
  /// the node falls outside the observed lattice).
  Eigen::MatrixXd curvature_matrix(const DataGrid& r) const;

private:
  void check_x(const GridFunction& x) const;
  int n_;
  DataCase case_;
};

}  // namespace deconv2d

#endif
