#include <doctest.h>

#include "deconv2d/midpoint.hpp"
#include "deconv2d/spectral.hpp"
#include "oracles.hpp"

using namespace deconv2d;

namespace {
double max_abs(const Eigen::MatrixXd& m) { return m.cwiseAbs().maxCoeff(); }
}  // namespace

TEST_CASE("spectral forward reproduces the midpoint sums") {
  for (int n : {4, 8, 20}) {
    for (DataCase c : {DataCase::Limited, DataCase::Full}) {
      GridFunction x = oracle::random_grid(n, 100u + n);
      SpectralOperator sop(n, c);
      MidpointOperator mop(n, c);
      const Eigen::MatrixXd a = sop.forward(x).values();
      const Eigen::MatrixXd b = mop.forward(x).values();
      CHECK(max_abs(a - b) <= 1e-12 * std::max(1e-30, max_abs(b)));
    }
  }
}

TEST_CASE("spectral forward matches the quadruple-loop oracle for n <= 4") {
  for (int n : {2, 3, 4}) {
    GridFunction x = oracle::random_grid(n, 120u + n);
    CHECK(max_abs(SpectralOperator(n, DataCase::Limited).forward(x).values() -
                  oracle::forward_limited(x.values())) <= 1e-13);
    CHECK(max_abs(SpectralOperator(n, DataCase::Full).forward(x).values() -
                  oracle::forward_full(x.values())) <= 1e-13);
  }
}

TEST_CASE("zero input, even symmetry, full boundary") {
  const int n = 6;
  for (DataCase c : {DataCase::Limited, DataCase::Full}) {
    SpectralOperator op(n, c);
    CHECK(max_abs(op.forward(GridFunction(n)).values()) == 0.0);
    GridFunction x = oracle::random_grid(n, 130u);
    CHECK(max_abs(op.forward(x).values() - op.forward(-x).values()) == 0.0);
  }
  SpectralOperator ful(n, DataCase::Full);
  DataGrid y = ful.forward(oracle::random_grid(n, 131u));
  CHECK(y.values().row(2 * n - 1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(y.values().col(2 * n - 1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("full output restricted to the window equals the limited output") {
  const int n = 5;
  GridFunction x = oracle::random_grid(n, 140u);
  const Eigen::MatrixXd full = SpectralOperator(n, DataCase::Full).forward(x).values();
  const Eigen::MatrixXd lim = SpectralOperator(n, DataCase::Limited).forward(x).values();
  CHECK(max_abs(full.topLeftCorner(n, n) - lim) <= 1e-15);
}

TEST_CASE("spectral derivative: doubling, linearity, cross-backend agreement") {
  const int n = 10;
  GridFunction x = oracle::random_grid(n, 150u);
  GridFunction u = oracle::random_grid(n, 151u);
  GridFunction v = oracle::random_grid(n, 152u);
  for (DataCase c : {DataCase::Limited, DataCase::Full}) {
    SpectralOperator op(n, c);
    CHECK(max_abs(op.derivative_apply(x, x).values() - 2.0 * op.forward(x).values()) <= 1e-13);

    Eigen::MatrixXd lin = op.derivative_apply(x, GridFunction(n, 2.0 * u.values() - 3.0 * v.values())).values();
    Eigen::MatrixXd split = 2.0 * op.derivative_apply(x, u).values() - 3.0 * op.derivative_apply(x, v).values();
    CHECK(max_abs(lin - split) <= 1e-12);

    MidpointOperator mop(n, c);
    CHECK(max_abs(op.derivative_apply(x, u).values() - mop.derivative_apply(x, u).values()) <=
          1e-12);
  }
}

TEST_CASE("spectral adjoint identity and normal-operator positivity") {
  const int n = 8;
  for (DataCase c : {DataCase::Limited, DataCase::Full}) {
    SpectralOperator op(n, c);
    GridFunction x = oracle::random_grid(n, 160u);
    GridFunction u = oracle::random_grid(n, 161u);
    GridFunction w = oracle::random_grid(n, 162u);
    DataGrid v = oracle::random_data(c, n, 163u);

    const double lhs = op.derivative_apply(x, u).vectorize().dot(v.vectorize());
    const double rhs = u.vectorize().dot(op.adjoint_apply(x, v).vectorize());
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));

    CHECK(max_abs(op.adjoint_apply(x, DataGrid(c, n)).values()) == 0.0);

    // A = F'(x)* F'(x): symmetric positive semidefinite on probes
    auto A = [&](const GridFunction& g) { return op.adjoint_apply(x, op.derivative_apply(x, g)); };
    const Eigen::VectorXd Au = A(u).vectorize();
    const Eigen::VectorXd Aw = A(w).vectorize();
    CHECK(Au.dot(u.vectorize()) >= -1e-12);
    CHECK(Au.dot(w.vectorize()) == doctest::Approx(Aw.dot(u.vectorize())).epsilon(1e-10));
  }
}

TEST_CASE("spectral adjoint agrees with the midpoint transpose") {
  const int n = 6;
  for (DataCase c : {DataCase::Limited, DataCase::Full}) {
    SpectralOperator sop(n, c);
    MidpointOperator mop(n, c);
    GridFunction x = oracle::random_grid(n, 170u);
    DataGrid v = oracle::random_data(c, n, 171u);
    CHECK(max_abs(sop.adjoint_apply(x, v).values() - mop.derivative_adjoint_apply(x, v).values()) <=
          1e-12);
  }
}
