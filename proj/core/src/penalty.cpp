#include "deconv2d/penalty.hpp"

#include <cmath>
#include <stdexcept>

namespace deconv2d {

std::string to_string(PenaltyKind k) {
  switch (k) {
    case PenaltyKind::NormSquare: return "r1";
    case PenaltyKind::GradientSquare: return "r2";
    case PenaltyKind::SmoothedTv: return "r3";
  }
  return "?";
}

PenaltySpec PenaltySpec::norm_square(GridFunction reference) {
  PenaltySpec s;
  s.kind = PenaltyKind::NormSquare;
  s.xbar = std::move(reference);
  return s;
}

PenaltySpec PenaltySpec::gradient_square() {
  PenaltySpec s;
  s.kind = PenaltyKind::GradientSquare;
  return s;
}

PenaltySpec PenaltySpec::smoothed_tv(double beta) {
  if (!(beta > 0.0 && beta < 1.0))
    throw std::invalid_argument("smoothed_tv: beta must lie in (0,1)");
  PenaltySpec s;
  s.kind = PenaltyKind::SmoothedTv;
  s.beta = beta;
  return s;
}

GradientField gradient_field(const GridFunction& x) {
  const int n = x.n();
  const double invh = double(n);
  GradientField g{Eigen::MatrixXd::Zero(n, n), Eigen::MatrixXd::Zero(n, n)};
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j < n; ++j) g.d1(i, j) = (x(i + 1, j) - x(i, j)) * invh;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j + 1 < n; ++j) g.d2(i, j) = (x(i, j + 1) - x(i, j)) * invh;
  return g;
}

namespace {

void check_spec(const PenaltySpec& spec, const GridFunction& x) {
  if (spec.kind == PenaltyKind::NormSquare) {
    if (!spec.xbar) throw std::invalid_argument("norm-square penalty needs a reference element");
    if (spec.xbar->n() != x.n())
      throw std::invalid_argument("penalty: reference element size mismatch");
  }
}

// Smoothed-TV terms: interior sqrt(d1^2 + d2^2 + h^2 b^2) over i,j = 1..n-1,
// plus single-difference edge strips on the last row/column, all times h.
template <typename Interior, typename EdgeRow, typename EdgeCol>
void for_each_tv_term(const GridFunction& x, Interior interior, EdgeCol edge_col, EdgeRow edge_row) {
  const int n = x.n();
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j + 1 < n; ++j)
      interior(i, j, x(i + 1, j) - x(i, j), x(i, j + 1) - x(i, j));
  for (int i = 0; i + 1 < n; ++i) edge_col(i, x(i + 1, n - 1) - x(i, n - 1));
  for (int j = 0; j + 1 < n; ++j) edge_row(j, x(n - 1, j + 1) - x(n - 1, j));
}

double value_r1(const PenaltySpec& spec, const GridFunction& x) {
  const double d = discrete_l2_norm(x - *spec.xbar);
  return d * d;
}

double value_r2(const GridFunction& x) {
  // h^2 sum (diff/h)^2: the h factors cancel.
  const int n = x.n();
  double s = 0.0;
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d = x(i + 1, j) - x(i, j);
      s += d * d;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j + 1 < n; ++j) {
      const double d = x(i, j + 1) - x(i, j);
      s += d * d;
    }
  return s;
}

double value_r3(const PenaltySpec& spec, const GridFunction& x) {
  const double h = x.h();
  const double c = h * h * spec.beta * spec.beta;
  double s = 0.0;
  for_each_tv_term(
      x, [&](int, int, double d1, double d2) { s += std::sqrt(d1 * d1 + d2 * d2 + c); },
      [&](int, double d1) { s += std::sqrt(d1 * d1 + c); },
      [&](int, double d2) { s += std::sqrt(d2 * d2 + c); });
  return h * s;
}

}  // namespace

double penalty_value(const PenaltySpec& spec, const GridFunction& x) {
  check_spec(spec, x);
  switch (spec.kind) {
    case PenaltyKind::NormSquare: return value_r1(spec, x);
    case PenaltyKind::GradientSquare: return value_r2(x);
    case PenaltyKind::SmoothedTv: return value_r3(spec, x);
  }
  throw std::logic_error("unreachable");
}

GridFunction grad_div_apply(const GridFunction& u) {
  const int n = u.n();
  GridFunction out(n);
  for (int i = 0; i + 1 < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double d = u(i + 1, j) - u(i, j);
      out(i, j) -= d;
      out(i + 1, j) += d;
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j + 1 < n; ++j) {
      const double d = u(i, j + 1) - u(i, j);
      out(i, j) -= d;
      out(i, j + 1) += d;
    }
  return out;
}

GridFunction penalty_gradient(const PenaltySpec& spec, const GridFunction& x) {
  check_spec(spec, x);
  const int n = x.n();
  switch (spec.kind) {
    case PenaltyKind::NormSquare: {
      const double h2 = x.h() * x.h();
      return GridFunction(n, 2.0 * h2 * (x.values() - spec.xbar->values()));
    }
    case PenaltyKind::GradientSquare: {
      GridFunction g = grad_div_apply(x);
      return GridFunction(n, 2.0 * g.values());
    }
    case PenaltyKind::SmoothedTv: {
      const double h = x.h();
      const double c = h * h * spec.beta * spec.beta;
      GridFunction g(n);
      for_each_tv_term(
          x,
          [&](int i, int j, double d1, double d2) {
            const double s = std::sqrt(d1 * d1 + d2 * d2 + c);
            g(i, j) += h * (-d1 - d2) / s;
            g(i + 1, j) += h * d1 / s;
            g(i, j + 1) += h * d2 / s;
          },
          [&](int i, double d1) {
            const double s = std::sqrt(d1 * d1 + c);
            g(i, n - 1) -= h * d1 / s;
            g(i + 1, n - 1) += h * d1 / s;
          },
          [&](int j, double d2) {
            const double s = std::sqrt(d2 * d2 + c);
            g(n - 1, j) -= h * d2 / s;
            g(n - 1, j + 1) += h * d2 / s;
          });
      return g;
    }
  }
  throw std::logic_error("unreachable");
}

GridFunction penalty_hessian_apply(const PenaltySpec& spec, const GridFunction& x,
                                   const GridFunction& u) {
  check_spec(spec, x);
  if (u.n() != x.n()) throw std::invalid_argument("penalty: direction size mismatch");
  const int n = x.n();
  switch (spec.kind) {
    case PenaltyKind::NormSquare: {
      const double h2 = x.h() * x.h();
      return GridFunction(n, 2.0 * h2 * u.values());
    }
    case PenaltyKind::GradientSquare: {
      GridFunction g = grad_div_apply(u);
      return GridFunction(n, 2.0 * g.values());
    }
    case PenaltyKind::SmoothedTv: {
      const double h = x.h();
      const double c = h * h * spec.beta * spec.beta;
      GridFunction out(n);
      for_each_tv_term(
          x,
          [&](int i, int j, double d1, double d2) {
            const double s2 = d1 * d1 + d2 * d2 + c;
            const double s = std::sqrt(s2);
            const double ud1 = u(i + 1, j) - u(i, j);
            const double ud2 = u(i, j + 1) - u(i, j);
            const double common = (d1 * ud1 + d2 * ud2) / s2;
            const double c1 = h * (ud1 - d1 * common) / s;
            const double c2 = h * (ud2 - d2 * common) / s;
            out(i, j) += -c1 - c2;
            out(i + 1, j) += c1;
            out(i, j + 1) += c2;
          },
          [&](int i, double d1) {
            const double s2 = d1 * d1 + c;
            const double s = std::sqrt(s2);
            const double ud1 = u(i + 1, n - 1) - u(i, n - 1);
            const double c1 = h * (ud1 - d1 * d1 * ud1 / s2) / s;
            out(i, n - 1) -= c1;
            out(i + 1, n - 1) += c1;
          },
          [&](int j, double d2) {
            const double s2 = d2 * d2 + c;
            const double s = std::sqrt(s2);
            const double ud2 = u(n - 1, j + 1) - u(n - 1, j);
            const double c2 = h * (ud2 - d2 * d2 * ud2 / s2) / s;
            out(n - 1, j) -= c2;
            out(n - 1, j + 1) += c2;
          });
      return out;
    }
  }
  throw std::logic_error("unreachable");
}

Eigen::MatrixXd penalty_hessian_matrix(const PenaltySpec& spec, const GridFunction& x) {
  check_spec(spec, x);
  const int n = x.n();
  const int nn = n * n;
  const auto idx = [n](int i, int j) { return i * n + j; };
  Eigen::MatrixXd H = Eigen::MatrixXd::Zero(nn, nn);
  switch (spec.kind) {
    case PenaltyKind::NormSquare: {
      const double h2 = x.h() * x.h();
      H.diagonal().setConstant(2.0 * h2);
      return H;
    }
    case PenaltyKind::GradientSquare: {
      // 2 D^T D: each difference d = x_q - x_p contributes [[2,-2],[-2,2]].
      auto add_diff = [&](int p, int q) {
        H(p, p) += 2.0;
        H(q, q) += 2.0;
        H(p, q) -= 2.0;
        H(q, p) -= 2.0;
      };
      for (int i = 0; i + 1 < n; ++i)
        for (int j = 0; j < n; ++j) add_diff(idx(i, j), idx(i + 1, j));
      for (int i = 0; i < n; ++i)
        for (int j = 0; j + 1 < n; ++j) add_diff(idx(i, j), idx(i, j + 1));
      return H;
    }
    case PenaltyKind::SmoothedTv: {
      const double h = x.h();
      const double c = h * h * spec.beta * spec.beta;
      // Per term with stencil differences e1, e2:
      // H += k11 e1 e1^T + k12 (e1 e2^T + e2 e1^T) + k22 e2 e2^T.
      auto add_pair = [&](int pa, int pb, int qa, int qb, double k) {
        // k * (delta_pb - delta_pa)(delta_qb - delta_qa)^T, symmetrized by caller
        H(pb, qb) += k;
        H(pb, qa) -= k;
        H(pa, qb) -= k;
        H(pa, qa) += k;
      };
      for_each_tv_term(
          x,
          [&](int i, int j, double d1, double d2) {
            const double s2 = d1 * d1 + d2 * d2 + c;
            const double s = std::sqrt(s2);
            const double k11 = h * (s2 - d1 * d1) / (s2 * s);
            const double k22 = h * (s2 - d2 * d2) / (s2 * s);
            const double k12 = -h * d1 * d2 / (s2 * s);
            const int p = idx(i, j), p1 = idx(i + 1, j), p2 = idx(i, j + 1);
            add_pair(p, p1, p, p1, k11);
            add_pair(p, p2, p, p2, k22);
            add_pair(p, p1, p, p2, k12);
            add_pair(p, p2, p, p1, k12);
          },
          [&](int i, double d1) {
            const double s2 = d1 * d1 + c;
            const double s = std::sqrt(s2);
            const double k11 = h * (s2 - d1 * d1) / (s2 * s);
            const int p = idx(i, n - 1), p1 = idx(i + 1, n - 1);
            add_pair(p, p1, p, p1, k11);
          },
          [&](int j, double d2) {
            const double s2 = d2 * d2 + c;
            const double s = std::sqrt(s2);
            const double k22 = h * (s2 - d2 * d2) / (s2 * s);
            const int p = idx(n - 1, j), p2 = idx(n - 1, j + 1);
            add_pair(p, p2, p, p2, k22);
          });
      return H;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace deconv2d
