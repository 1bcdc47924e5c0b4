#include "deconv2d/examples.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "deconv2d/midpoint.hpp"

namespace deconv2d {

ExampleId example_from_int(int id) {
  if (id == 1) return ExampleId::SmoothFactored;
  if (id == 2) return ExampleId::PiecewiseSinusoid;
  throw std::invalid_argument("example id must be 1 or 2");
}

int example_to_int(ExampleId id) { return static_cast<int>(id); }

double example_value(ExampleId id, double t1, double t2) {
  constexpr double pi = std::numbers::pi;
  switch (id) {
    case ExampleId::SmoothFactored:
      return (-3.0 * t1 * t1 + 3.0 * t1 + 0.25) * (std::sin(1.5 * pi * t2) + 1.0);
    case ExampleId::PiecewiseSinusoid:
      if (t1 <= 0.5) return std::sin(1.5 * pi * (t1 + t2)) + 1.0;
      return 1.0;
  }
  throw std::logic_error("unreachable");
}

GridFunction sample_example(ExampleId id, int n) {
  GridFunction g(n);
  const double h = g.h();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) g(i, j) = example_value(id, (i + 0.5) * h, (j + 0.5) * h);
  return g;
}

double GaussianSampler::next_uniform() {
  return (double(eng_() >> 11) + 1.0) * 0x1p-53;  // (0, 1]
}

double GaussianSampler::next() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  const double u1 = next_uniform();
  const double u2 = next_uniform();
  const double m = std::sqrt(-2.0 * std::log(u1));
  const double a = 2.0 * std::numbers::pi * u2;
  spare_ = m * std::sin(a);
  have_spare_ = true;
  return m * std::cos(a);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag) {
  // splitmix64 finalizer over the combined word
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (tag + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

Observation synthesize_data(ExampleId id, int n, DataCase data_case, const NoiseModel& noise) {
  if (noise.relative_level < 0.0)
    throw std::invalid_argument("synthesize_data: noise level must be nonnegative");
  const MidpointOperator op(n, data_case);
  Observation obs;
  obs.clean = op.forward(sample_example(id, n));

  obs.noisy = obs.clean;
  if (noise.relative_level == 0.0) {
    obs.delta = 0.0;
    return obs;
  }

  const int m = obs.clean.extent();
  const int interior = data_case == DataCase::Limited ? m : m - 1;
  Eigen::MatrixXd e = Eigen::MatrixXd::Zero(m, m);
  GaussianSampler gauss(noise.seed);
  for (int k = 0; k < interior; ++k)  // row-major draw order is part of the contract
    for (int l = 0; l < interior; ++l) e(k, l) = gauss.next();

  const double ynorm = discrete_l2_norm(obs.clean);
  obs.delta = noise.relative_level * ynorm;
  const double enorm = (1.0 / n) * e.norm();
  e *= obs.delta / enorm;

  obs.noisy.values() += e;
  return obs;
}

}  // namespace deconv2d
