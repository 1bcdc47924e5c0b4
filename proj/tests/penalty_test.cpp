#include <doctest.h>

#include <cmath>

#include "deconv2d/penalty.hpp"
#include "oracles.hpp"

using namespace deconv2d;

namespace {

GridFunction unit_norm(GridFunction g) {
  const double s = discrete_l2_norm(g);
  return GridFunction(g.n(), g.values() / s);
}

std::vector<PenaltySpec> all_penalties(int n) {
  return {PenaltySpec::norm_square(GridFunction::constant(n, 0.5)), PenaltySpec::gradient_square(),
          PenaltySpec::smoothed_tv(0.1)};
}

}  // namespace

TEST_CASE("norm-square penalty values") {
  const int n = 10;
  GridFunction xbar = GridFunction::constant(n, 0.5);
  PenaltySpec r1 = PenaltySpec::norm_square(xbar);
  CHECK(penalty_value(r1, xbar) == 0.0);
  // ||1|| = 1, so a constant offset c gives c^2
  CHECK(penalty_value(r1, GridFunction::constant(n, 0.5 + 0.3)) ==
        doctest::Approx(0.09).epsilon(1e-13));
}

TEST_CASE("gradient-square and smoothed-TV at constants") {
  const int n = 20;
  const double h = 1.0 / n;
  const double beta = 0.1;
  GridFunction c = GridFunction::constant(n, 0.7);
  CHECK(penalty_value(PenaltySpec::gradient_square(), c) == 0.0);
  // smoothing floor: h ((n-1)^2 + 2(n-1)) h beta
  const double floor = h * ((n - 1.0) * (n - 1.0) + 2.0 * (n - 1.0)) * h * beta;
  CHECK(penalty_value(PenaltySpec::smoothed_tv(beta), c) == doctest::Approx(floor).epsilon(1e-13));
}

TEST_CASE("smoothed TV of an axis-aligned step approaches the jump size") {
  const int n = 20;
  const double beta = 1e-9;
  GridFunction step(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) step(i, j) = i < n / 2 ? 0.0 : 1.0;
  // direct evaluation of the discretized sum: n terms of size ~1 along the
  // interface, each weighted by h, plus the beta floor
  const double v = penalty_value(PenaltySpec::smoothed_tv(beta), step);
  CHECK(v == doctest::Approx(1.0).epsilon(1e-6));
}

TEST_CASE("gradients match central finite differences of the value") {
  const int n = 10;
  for (unsigned probe = 0; probe < 5; ++probe) {
    GridFunction x = unit_norm(oracle::random_grid(n, 200u + probe));
    GridFunction u = unit_norm(oracle::random_grid(n, 300u + probe));
    for (const PenaltySpec& spec : all_penalties(n)) {
      const double fd = oracle::fd_directional(spec, x, u, 1e-5);
      const double an = penalty_gradient(spec, x).values().cwiseProduct(u.values()).sum();
      CHECK(std::abs(fd - an) <= 1e-6);
    }
  }
}

TEST_CASE("hessian action matches second differences") {
  const int n = 10;
  for (unsigned probe = 0; probe < 5; ++probe) {
    GridFunction x = unit_norm(oracle::random_grid(n, 400u + probe));
    GridFunction u = unit_norm(oracle::random_grid(n, 500u + probe));
    for (const PenaltySpec& spec : all_penalties(n)) {
      const double fd = oracle::fd_second_directional(spec, x, u, 1e-5);
      const double an =
          penalty_hessian_apply(spec, x, u).values().cwiseProduct(u.values()).sum();
      CHECK(std::abs(fd - an) <= 1e-5);
    }
  }
}

TEST_CASE("hessian matrix agrees with the matrix-free action") {
  const int n = 6;
  GridFunction x = oracle::random_grid(n, 600u);
  GridFunction u = oracle::random_grid(n, 601u);
  for (const PenaltySpec& spec : all_penalties(n)) {
    Eigen::VectorXd via_matrix = penalty_hessian_matrix(spec, x) * u.vectorize();
    Eigen::VectorXd direct = penalty_hessian_apply(spec, x, u).vectorize();
    CHECK((via_matrix - direct).cwiseAbs().maxCoeff() <= 1e-13);
  }
}

TEST_CASE("gradients vanish at minimizers") {
  const int n = 8;
  GridFunction xbar = GridFunction::constant(n, 0.5);
  CHECK(penalty_gradient(PenaltySpec::norm_square(xbar), xbar).values().cwiseAbs().maxCoeff() ==
        0.0);
  GridFunction c = GridFunction::constant(n, -1.2);
  CHECK(penalty_gradient(PenaltySpec::gradient_square(), c).values().cwiseAbs().maxCoeff() == 0.0);
  CHECK(penalty_gradient(PenaltySpec::smoothed_tv(0.1), c).values().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("shift invariance: gradient-square and TV yes, norm-square no") {
  const int n = 7;
  GridFunction x = oracle::random_grid(n, 700u);
  GridFunction shifted(n, x.values().array() + 0.8);
  CHECK(penalty_value(PenaltySpec::gradient_square(), shifted) ==
        doctest::Approx(penalty_value(PenaltySpec::gradient_square(), x)).epsilon(1e-12));
  CHECK(penalty_value(PenaltySpec::smoothed_tv(0.1), shifted) ==
        doctest::Approx(penalty_value(PenaltySpec::smoothed_tv(0.1), x)).epsilon(1e-12));
  PenaltySpec r1 = PenaltySpec::norm_square(GridFunction::constant(n, 0.5));
  CHECK(std::abs(penalty_value(r1, shifted) - penalty_value(r1, x)) > 1e-6);
}

TEST_CASE("convexity probe along random segments") {
  const int n = 8;
  GridFunction x = oracle::random_grid(n, 800u);
  GridFunction u = oracle::random_grid(n, 801u);
  for (const PenaltySpec& spec : all_penalties(n)) {
    auto value_at = [&](double t) {
      return penalty_value(spec, GridFunction(n, x.values() + t * u.values()));
    };
    for (double t = -1.0; t <= 1.0; t += 0.25) {
      const double mid = value_at(t);
      const double avg = 0.5 * (value_at(t - 0.25) + value_at(t + 0.25));
      CHECK(mid <= avg + 1e-12);
    }
  }
}

TEST_CASE("gradient field: forward differences with 1/h weight, zero on constants") {
  const int n = 5;
  GradientField gc = gradient_field(GridFunction::constant(n, 3.0));
  CHECK(gc.d1.cwiseAbs().maxCoeff() == 0.0);
  CHECK(gc.d2.cwiseAbs().maxCoeff() == 0.0);

  GridFunction x = oracle::random_grid(n, 900u);
  GradientField g = gradient_field(x);
  CHECK(g.d1(1, 2) == doctest::Approx((x(2, 2) - x(1, 2)) * n));
  CHECK(g.d2(3, 1) == doctest::Approx((x(3, 2) - x(3, 1)) * n));
  CHECK(g.d1.row(n - 1).cwiseAbs().maxCoeff() == 0.0);
  CHECK(g.d2.col(n - 1).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("grad_div_apply is the derivative pairing of the gradient-square value") {
  // <D^T D x, x> equals the gradient-square value
  const int n = 9;
  GridFunction x = oracle::random_grid(n, 950u);
  const double quad = grad_div_apply(x).vectorize().dot(x.vectorize());
  CHECK(quad == doctest::Approx(penalty_value(PenaltySpec::gradient_square(), x)).epsilon(1e-12));
}
