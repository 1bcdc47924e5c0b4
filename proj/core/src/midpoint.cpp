#include "deconv2d/midpoint.hpp"

#include <stdexcept>

namespace deconv2d {

namespace {

// Linear convolution of two n x n arrays; result (2n-1) x (2n-1),
// c_{a,b} = sum_{i,j} A_{i,j} B_{a-i,b-j} (0-based, in-range terms).
Eigen::MatrixXd conv2(const Eigen::MatrixXd& A, const Eigen::MatrixXd& B) {
  const int n = static_cast<int>(A.rows());
  Eigen::MatrixXd c = Eigen::MatrixXd::Zero(2 * n - 1, 2 * n - 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = A(i, j);
      if (a == 0.0) continue;
      c.block(i, j, n, n) += a * B;
    }
  return c;
}

}  // namespace

void MidpointOperator::check_x(const GridFunction& x) const {
  if (x.n() != n_) throw std::invalid_argument("MidpointOperator: grid size mismatch");
}

DataGrid MidpointOperator::forward(const GridFunction& x) const {
  check_x(x);
  const double h2 = x.h() * x.h();
  const Eigen::MatrixXd c = conv2(x.values(), x.values());
  DataGrid y(case_, n_);
  const int m = y.extent();
  // node (k,l) <-> convolution bin (k-1, l-1); bins beyond 2n-1 vanish,
  // which is exactly the zero outer boundary of the full case.
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      if (k < c.rows() && l < c.cols()) y(k, l) = h2 * c(k, l);
  return y;
}

DataGrid MidpointOperator::derivative_apply(const GridFunction& x, const GridFunction& u) const {
  check_x(x);
  check_x(u);
  const double h2 = x.h() * x.h();
  const Eigen::MatrixXd c = conv2(x.values(), u.values());
  DataGrid y(case_, n_);
  const int m = y.extent();
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l)
      if (k < c.rows() && l < c.cols()) y(k, l) = 2.0 * h2 * c(k, l);
  return y;
}

GridFunction MidpointOperator::derivative_adjoint_apply(const GridFunction& x, const DataGrid& r) const {
  check_x(x);
  if (r.data_case() != case_ || r.n() != n_)
    throw std::invalid_argument("MidpointOperator: data grid mismatch");
  const double h2 = x.h() * x.h();
  const int m = r.extent();
  GridFunction out(n_);
  // (M^T r)_{i,j} = sum_{a,b} x_{a,b} r_{i+a-1, j+b-1} over observed nodes.
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) {
      double s = 0.0;
      const int amax = std::min(n_, m - i);
      const int bmax = std::min(n_, m - j);
      for (int a = 0; a < amax; ++a)
        for (int b = 0; b < bmax; ++b) s += x(a, b) * r(i + a, j + b);
      out(i, j) = 2.0 * h2 * s;
    }
  return out;
}

Eigen::MatrixXd MidpointOperator::assemble_matrix(const GridFunction& x) const {
  check_x(x);
  const int m = data_extent(case_, n_);
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(m * m, n_ * n_);
  // Row q = k*m + l (0-based node), column p = i*n + j; entry x_{k-i, l-j}
  // when that index lies inside the grid. Rows on the full-case outer
  // boundary stay zero.
  for (int k = 0; k < m; ++k) {
    if (case_ == DataCase::Full && k == m - 1) continue;
    for (int l = 0; l < m; ++l) {
      if (case_ == DataCase::Full && l == m - 1) continue;
      const int row = k * m + l;
      const int ilo = std::max(0, k - n_ + 1), ihi = std::min(n_ - 1, k);
      const int jlo = std::max(0, l - n_ + 1), jhi = std::min(n_ - 1, l);
      for (int i = ilo; i <= ihi; ++i)
        for (int j = jlo; j <= jhi; ++j) M(row, i * n_ + j) = x(k - i, l - j);
    }
  }
  return M;
}

Eigen::MatrixXd MidpointOperator::curvature_matrix(const DataGrid& r) const {
  if (r.data_case() != case_ || r.n() != n_)
    throw std::invalid_argument("MidpointOperator: data grid mismatch");
  const int m = r.extent();
  const int nn = n_ * n_;
  Eigen::MatrixXd W = Eigen::MatrixXd::Zero(nn, nn);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j)
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b) {
          const int k = i + a, l = j + b;
          if (k < m && l < m) W(i * n_ + j, a * n_ + b) = r(k, l);
        }
  return W;
}

}  // namespace deconv2d
