#include "deconv2d/grid.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace deconv2d {

std::string to_string(DataCase c) { return c == DataCase::Limited ? "limited" : "full"; }

void GridFunction::check_n(int n) {
  if (n < 1) throw std::invalid_argument("GridFunction: n must be positive");
}

GridFunction::GridFunction(int n, Eigen::MatrixXd values) : n_(n), values_(std::move(values)) {
  check_n(n);
  if (values_.rows() != n || values_.cols() != n)
    throw std::invalid_argument("GridFunction: values must be n x n");
}

GridFunction GridFunction::constant(int n, double value) {
  check_n(n);
  return GridFunction(n, Eigen::MatrixXd::Constant(n, n, value));
}

Eigen::VectorXd GridFunction::vectorize() const {
  Eigen::VectorXd v(n_ * n_);
  for (int i = 0; i < n_; ++i)
    for (int j = 0; j < n_; ++j) v(i * n_ + j) = values_(i, j);
  return v;
}

GridFunction GridFunction::devectorize(int n, const Eigen::VectorXd& v) {
  check_n(n);
  if (v.size() != static_cast<Eigen::Index>(n) * n)
    throw std::invalid_argument("devectorize: length mismatch");
  GridFunction g(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g.values_(i, j) = v(i * n + j);
  return g;
}

GridFunction operator+(const GridFunction& a, const GridFunction& b) {
  return GridFunction(a.n(), a.values() + b.values());
}
GridFunction operator-(const GridFunction& a, const GridFunction& b) {
  return GridFunction(a.n(), a.values() - b.values());
}
GridFunction operator-(const GridFunction& a) { return GridFunction(a.n(), -a.values()); }
GridFunction operator*(double s, const GridFunction& a) {
  return GridFunction(a.n(), s * a.values());
}

DataGrid::DataGrid(DataCase c, int n) : case_(c), n_(n) {
  if (n < 1) throw std::invalid_argument("DataGrid: n must be positive");
  const int m = data_extent(c, n);
  values_ = Eigen::MatrixXd::Zero(m, m);
}

DataGrid::DataGrid(DataCase c, int n, Eigen::MatrixXd values) : case_(c), n_(n), values_(std::move(values)) {
  if (n < 1) throw std::invalid_argument("DataGrid: n must be positive");
  const int m = data_extent(c, n);
  if (values_.rows() != m || values_.cols() != m)
    throw std::invalid_argument("DataGrid: values have wrong extent");
  validate();
}

void DataGrid::validate() const {
  if (!values_.allFinite()) throw std::invalid_argument("DataGrid: non-finite values");
  if (case_ == DataCase::Full) {
    const int m = extent();
    if (values_.row(m - 1).cwiseAbs().maxCoeff() != 0.0 ||
        values_.col(m - 1).cwiseAbs().maxCoeff() != 0.0)
      throw std::invalid_argument("DataGrid: full-case outer boundary must vanish");
  }
}

Eigen::VectorXd DataGrid::vectorize() const {
  const int m = extent();
  Eigen::VectorXd v(m * m);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) v(k * m + l) = values_(k, l);
  return v;
}

DataGrid DataGrid::devectorize(DataCase c, int n, const Eigen::VectorXd& v) {
  const int m = data_extent(c, n);
  if (v.size() != static_cast<Eigen::Index>(m) * m)
    throw std::invalid_argument("devectorize: length mismatch");
  DataGrid g(c, n);
  for (int k = 0; k < m; ++k)
    for (int l = 0; l < m; ++l) g.values_(k, l) = v(k * m + l);
  return g;
}

DataGrid operator+(const DataGrid& a, const DataGrid& b) {
  if (a.data_case() != b.data_case() || a.n() != b.n())
    throw std::invalid_argument("DataGrid: case/size mismatch");
  DataGrid out(a.data_case(), a.n());
  out.values() = a.values() + b.values();
  return out;
}
DataGrid operator-(const DataGrid& a, const DataGrid& b) {
  if (a.data_case() != b.data_case() || a.n() != b.n())
    throw std::invalid_argument("DataGrid: case/size mismatch");
  DataGrid out(a.data_case(), a.n());
  out.values() = a.values() - b.values();
  return out;
}

double discrete_l2_norm(const GridFunction& v) { return v.h() * v.values().norm(); }
double discrete_l2_norm(const DataGrid& v) { return v.h() * v.values().norm(); }

double relative_error(const GridFunction& x, const GridFunction& xref) {
  const double d = discrete_l2_norm(xref);
  if (d == 0.0) throw std::invalid_argument("relative_error: reference has zero norm");
  return discrete_l2_norm(x - xref) / d;
}

double relative_error(const DataGrid& x, const DataGrid& xref) {
  const double d = discrete_l2_norm(xref);
  if (d == 0.0) throw std::invalid_argument("relative_error: reference has zero norm");
  return discrete_l2_norm(x - xref) / d;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m) {
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j) os << ',';
      os << format_double(m(i, j));
    }
    os << '\n';
  }
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::ostringstream os;
  write_matrix_csv(os, m);
  return os.str();
}

Eigen::MatrixXd read_matrix_csv(std::istream& is) {
  std::vector<std::vector<double>> rows;
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<double> row;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) {
      size_t pos = 0;
      double v = std::stod(cell, &pos);
      row.push_back(v);
    }
    if (!rows.empty() && row.size() != rows.front().size())
      throw std::invalid_argument("read_matrix_csv: ragged rows");
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw std::invalid_argument("read_matrix_csv: empty input");
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (size_t i = 0; i < rows.size(); ++i)
    for (size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

Eigen::MatrixXd read_matrix_csv_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open grid file: " + path);
  return read_matrix_csv(f);
}

}  // namespace deconv2d
