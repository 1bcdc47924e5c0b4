// Test-only reference implementations, kept independent of the library's
// evaluation paths: quadruple-loop sums for the discrete forward operator
// and central finite differences for penalty derivatives.
#ifndef DECONV2D_TESTS_ORACLES_HPP
#define DECONV2D_TESTS_ORACLES_HPP

#include <Eigen/Dense>

#include <random>

#include "deconv2d/grid.hpp"
#include "deconv2d/penalty.hpp"

namespace oracle {

// Limited case: y_{k,l} = sum_{j=1}^{l} sum_{i=1}^{k} h^2 x_{k-i+1,l-j+1} x_{i,j},
// 1-based indices as printed.
inline Eigen::MatrixXd forward_limited(const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.rows());
  const double h2 = 1.0 / (double(n) * n);
  Eigen::MatrixXd y(n, n);
  for (int k = 1; k <= n; ++k)
    for (int l = 1; l <= n; ++l) {
      double s = 0.0;
      for (int j = 1; j <= l; ++j)
        for (int i = 1; i <= k; ++i) s += x(k - i + 1 - 1, l - j + 1 - 1) * x(i - 1, j - 1);
      y(k - 1, l - 1) = h2 * s;
    }
  return y;
}

// Full case: the four subarea sums, then zeros on the outer boundary.
inline Eigen::MatrixXd forward_full(const Eigen::MatrixXd& x) {
  const int n = static_cast<int>(x.rows());
  const double h2 = 1.0 / (double(n) * n);
  Eigen::MatrixXd y = Eigen::MatrixXd::Zero(2 * n, 2 * n);
  // [0,1]^2
  y.topLeftCorner(n, n) = forward_limited(x);
  // [0,1] x (1,2)
  for (int k = 1; k <= n; ++k)
    for (int l = n + 1; l <= 2 * n - 1; ++l) {
      double s = 0.0;
      for (int j = l - n; j <= n - 1; ++j)
        for (int i = 1; i <= k; ++i) s += x(k - i + 1 - 1, l - j - 1) * x(i - 1, j + 1 - 1);
      y(k - 1, l - 1) = h2 * s;
    }
  // (1,2) x [0,1]
  for (int k = n + 1; k <= 2 * n - 1; ++k)
    for (int l = 1; l <= n; ++l) {
      double s = 0.0;
      for (int j = 1; j <= l; ++j)
        for (int i = k - n; i <= n - 1; ++i) s += x(k - i - 1, l - j + 1 - 1) * x(i + 1 - 1, j - 1);
      y(k - 1, l - 1) = h2 * s;
    }
  // (1,2)^2
  for (int k = n + 1; k <= 2 * n - 1; ++k)
    for (int l = n + 1; l <= 2 * n - 1; ++l) {
      double s = 0.0;
      for (int j = l - n; j <= n - 1; ++j)
        for (int i = k - n; i <= n - 1; ++i) s += x(k - i - 1, l - j - 1) * x(i + 1 - 1, j + 1 - 1);
      y(k - 1, l - 1) = h2 * s;
    }
  return y;
}

inline deconv2d::GridFunction random_grid(int n, unsigned seed, double lo = -1.0, double hi = 1.0) {
  std::mt19937 eng(seed);
  std::uniform_real_distribution<double> dist(lo, hi);
  deconv2d::GridFunction g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = dist(eng);
  return g;
}

inline deconv2d::DataGrid random_data(deconv2d::DataCase c, int n, unsigned seed) {
  std::mt19937 eng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  deconv2d::DataGrid d(c, n);
  const int m = d.extent();
  const int interior = c == deconv2d::DataCase::Limited ? m : m - 1;
  for (int k = 0; k < interior; ++k)
    for (int l = 0; l < interior; ++l) d(k, l) = dist(eng);
  return d;
}

// Central finite difference of the penalty value along direction u.
inline double fd_directional(const deconv2d::PenaltySpec& spec, const deconv2d::GridFunction& x,
                             const deconv2d::GridFunction& u, double eps) {
  using deconv2d::penalty_value;
  const deconv2d::GridFunction xp(x.n(), x.values() + eps * u.values());
  const deconv2d::GridFunction xm(x.n(), x.values() - eps * u.values());
  return (penalty_value(spec, xp) - penalty_value(spec, xm)) / (2.0 * eps);
}

// Second-difference probe of the Hessian action <R''(x) u, u>: central
// difference of the directional derivative <R'(.), u> along u.
inline double fd_second_directional(const deconv2d::PenaltySpec& spec,
                                    const deconv2d::GridFunction& x,
                                    const deconv2d::GridFunction& u, double eps) {
  using deconv2d::penalty_gradient;
  const deconv2d::GridFunction xp(x.n(), x.values() + eps * u.values());
  const deconv2d::GridFunction xm(x.n(), x.values() - eps * u.values());
  const double dp = penalty_gradient(spec, xp).values().cwiseProduct(u.values()).sum();
  const double dm = penalty_gradient(spec, xm).values().cwiseProduct(u.values()).sum();
  return (dp - dm) / (2.0 * eps);
}

}  // namespace oracle

#endif
