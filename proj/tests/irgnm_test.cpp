#include <doctest.h>

#include <cmath>

#include "deconv2d/examples.hpp"
#include "deconv2d/irgnm.hpp"
#include "deconv2d/param_select.hpp"
#include "oracles.hpp"

using namespace deconv2d;

TEST_CASE("norm-square step: huge alpha returns the reference element") {
  const int n = 10;
  const GridFunction xd = sample_example(ExampleId::SmoothFactored, n);
  const SpectralOperator op(n, DataCase::Limited);
  const DataGrid y = op.forward(xd);
  const GridFunction xbar = GridFunction::constant(n, 0.5);
  GridFunction x = irgnm_step_norm_square(op, GridFunction::constant(n, 1.0), y, 1e8, xbar);
  CHECK(discrete_l2_norm(x - xbar) <= 1e-3);
}

TEST_CASE("norm-square step: exact data at x_dagger approaches x_dagger as alpha drops") {
  const int n = 10;
  const GridFunction xd = sample_example(ExampleId::SmoothFactored, n);
  const SpectralOperator op(n, DataCase::Limited);
  const DataGrid y = op.forward(xd);
  const GridFunction xbar = GridFunction::constant(n, 0.5);
  double prev = std::numeric_limits<double>::infinity();
  for (double alpha : {1.0, 1e-2, 1e-4}) {
    GridFunction x = irgnm_step_norm_square(op, xd, y, alpha, xbar);
    const double err = discrete_l2_norm(x - xd);
    CHECK(err < prev);
    prev = err;
  }
  CHECK(prev <= 1e-3);
}

TEST_CASE("norm-square step satisfies its own normal equation to cg_tol") {
  const int n = 8;
  const SpectralOperator op(n, DataCase::Full);
  const GridFunction xn = oracle::random_grid(n, 33u, 0.2, 1.2);
  const GridFunction xbar = GridFunction::constant(n, 0.5);
  const DataGrid y = op.forward(sample_example(ExampleId::SmoothFactored, n));
  const double alpha = 0.05;
  IrgnmConfig cfg;
  GridFunction x = irgnm_step_norm_square(op, xn, y, alpha, xbar, cfg);

  auto apply = [&](const GridFunction& g) {
    return GridFunction(n, op.adjoint_apply(xn, op.derivative_apply(xn, g)).values() +
                               alpha * g.values());
  };
  DataGrid lin = op.derivative_apply(xn, xn);
  DataGrid b(y.data_case(), n);
  b.values() = lin.values() + y.values() - op.forward(xn).values();
  Eigen::VectorXd rhs = op.adjoint_apply(xn, b).vectorize() + alpha * xbar.vectorize();
  const double rel = (apply(x).vectorize() - rhs).norm() / rhs.norm();
  CHECK(rel <= cfg.cg_tol * 10);
}

TEST_CASE("gradient-square system: symmetry probe and constant fixed point") {
  const int n = 8;
  const SpectralOperator op(n, DataCase::Limited);
  const GridFunction xn = oracle::random_grid(n, 44u, 0.2, 1.2);
  const double alpha = 0.25;
  auto apply = [&](const Eigen::VectorXd& u) {
    GridFunction ug = GridFunction::devectorize(n, u);
    return (op.adjoint_apply(xn, op.derivative_apply(xn, ug)).values() +
            alpha * grad_div_apply(ug).values() + 1e-12 * ug.values())
        .eval();
  };
  GridFunction u = oracle::random_grid(n, 45u);
  GridFunction w = oracle::random_grid(n, 46u);
  Eigen::MatrixXd Au = apply(u.vectorize());
  Eigen::MatrixXd Aw = apply(w.vectorize());
  const double a = (Au.cwiseProduct(w.values())).sum();
  const double b = (Aw.cwiseProduct(u.values())).sum();
  CHECK(a == doctest::Approx(b).epsilon(1e-10));

  // consistency: generate the right-hand side from a known solution and re-solve
  const GridFunction xc = GridFunction::constant(n, 0.8);
  auto apply_vec = [&](const Eigen::VectorXd& v) { return GridFunction(n, apply(v)).vectorize(); };
  Eigen::VectorXd rhs = apply_vec(xc.vectorize());
  Eigen::VectorXd sol = Eigen::VectorXd::Zero(n * n);
  cg_solve(apply_vec, rhs, sol, 1e-12, 5000);
  CHECK((sol - xc.vectorize()).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("noiseless run drives the residual below 1e-6 of the data norm") {
  const int n = 20;
  const Observation obs =
      synthesize_data(ExampleId::SmoothFactored, n, DataCase::Limited, {0.0, 1});
  const GridFunction xd = sample_example(ExampleId::SmoothFactored, n);
  const SpectralOperator op(n, DataCase::Limited);
  const PenaltySpec r1 = PenaltySpec::norm_square(GridFunction::constant(n, 0.5));
  auto records = irgnm_run(op, obs.noisy, r1, GridFunction::constant(n, 1.0), 0.0, {}, &xd);
  CHECK(records.back().residual <= 1e-6 * discrete_l2_norm(obs.noisy));
}

TEST_CASE("discrepancy stop satisfies the bracket and the ladder halves exactly") {
  const int n = 20;
  const Observation obs =
      synthesize_data(ExampleId::SmoothFactored, n, DataCase::Limited, {0.01, 9});
  const GridFunction xd = sample_example(ExampleId::SmoothFactored, n);
  const SpectralOperator op(n, DataCase::Limited);
  const PenaltySpec r1 = PenaltySpec::norm_square(GridFunction::constant(n, 0.5));
  const double tau = 1.2;
  auto records = irgnm_run(op, obs.noisy, r1, GridFunction::constant(n, 1.0),
                           tau * obs.delta, {}, &xd);

  SdpResult sdp = choose_sdp(records, obs.delta, tau);
  REQUIRE(sdp.status == SdpStatus::Bracketed);
  const int i = sdp.result.index;
  CHECK(records[i].residual <= tau * obs.delta);
  CHECK(records[i - 1].residual > tau * obs.delta);

  for (size_t k = 0; k + 1 < records.size(); ++k)
    CHECK(records[k].alpha / records[k + 1].alpha == 2.0);

  // residual at the oracle index does not exceed the starting residual
  const int opt = choose_opt(records, xd).index;
  CHECK(records[opt].residual <= records[0].residual);
}
