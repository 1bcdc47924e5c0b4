#ifndef DECONV2D_GRID_HPP
#define DECONV2D_GRID_HPP

#include <Eigen/Dense>

#include <cstdint>
#include <iosfwd>
#include <string>

namespace deconv2d {

/// Observation window: x*x restricted to [0,1]^2 (Limited) or all of [0,2]^2 (Full).
enum class DataCase { Limited, Full };

std::string to_string(DataCase c);

/// Number of lattice nodes per axis carried by a DataGrid of size n.
inline int data_extent(DataCase c, int n) { return c == DataCase::Limited ? n : 2 * n; }

/// Midpoint samples of a function on the unit square.
///
/// Entry (i,j), 0-based, holds x(((i+1/2)h, (j+1/2)h)) with h = 1/n.
/// Value type: copies are independent, instances are safe to share read-only.
class GridFunction {
public:
  GridFunction() = default;
  explicit GridFunction(int n) : n_(n), values_(Eigen::MatrixXd::Zero(n, n)) { check_n(n); }
  GridFunction(int n, Eigen::MatrixXd values);

  static GridFunction constant(int n, double value);

  int n() const { return n_; }
  double h() const { return 1.0 / n_; }

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::MatrixXd& values() { return values_; }
  double operator()(int i, int j) const { return values_(i, j); }
  double& operator()(int i, int j) { return values_(i, j); }

  /// Row-major flattening: slot (i*n + j) holds entry (i,j). The 1-based
  /// convention p = (i-1)*n + j maps to slot p-1.
  Eigen::VectorXd vectorize() const;
  static GridFunction devectorize(int n, const Eigen::VectorXd& v);

  bool all_finite() const { return values_.allFinite(); }

private:
  static void check_n(int n);
  int n_ = 0;
  Eigen::MatrixXd values_;
};

GridFunction operator+(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a, const GridFunction& b);
GridFunction operator-(const GridFunction& a);
GridFunction operator*(double s, const GridFunction& a);

/// Samples of y (or y^delta) at the lattice nodes (kh, lh), k,l = 1..extent.
/// Entry (k,l) is stored 0-based at (k-1, l-1). In the full case the outer
/// boundary nodes k = 2n or l = 2n must be exactly zero.
class DataGrid {
public:
  DataGrid() = default;
  DataGrid(DataCase c, int n);
  DataGrid(DataCase c, int n, Eigen::MatrixXd values);

  DataCase data_case() const { return case_; }
  int n() const { return n_; }
  double h() const { return 1.0 / n_; }
  int extent() const { return data_extent(case_, n_); }

  const Eigen::MatrixXd& values() const { return values_; }
  Eigen::MatrixXd& values() { return values_; }
  double operator()(int k, int l) const { return values_(k, l); }
  double& operator()(int k, int l) { return values_(k, l); }

  /// Row-major flattening over the node lattice, q = (k-1)*extent + l in
  /// 1-based terms. Length n^2 (limited) or 4n^2 (full).
  Eigen::VectorXd vectorize() const;
  static DataGrid devectorize(DataCase c, int n, const Eigen::VectorXd& v);

  /// Throws std::invalid_argument if values are non-finite or the full-case
  /// boundary is nonzero.
  void validate() const;

private:
  DataCase case_ = DataCase::Limited;
  int n_ = 0;
  Eigen::MatrixXd values_;
};

DataGrid operator+(const DataGrid& a, const DataGrid& b);
DataGrid operator-(const DataGrid& a, const DataGrid& b);

/// Discrete L2 norm with midpoint-quadrature weight: h * sqrt(sum of squares).
double discrete_l2_norm(const GridFunction& v);
double discrete_l2_norm(const DataGrid& v);

/// ||x - xref|| / ||xref|| in the discrete L2 norm. Throws if ||xref|| = 0.
double relative_error(const GridFunction& x, const GridFunction& xref);
double relative_error(const DataGrid& x, const DataGrid& xref);

/// Matrix CSV: one grid row per line, commas, 12 significant digits.
void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m);
std::string matrix_csv(const Eigen::MatrixXd& m);
Eigen::MatrixXd read_matrix_csv(std::istream& is);
Eigen::MatrixXd read_matrix_csv_file(const std::string& path);

/// printf-style "%.12g" used for all floating-point output.
std::string format_double(double v);

}  // namespace deconv2d

#endif
