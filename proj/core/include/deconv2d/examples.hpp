#ifndef DECONV2D_EXAMPLES_HPP
#define DECONV2D_EXAMPLES_HPP

#include <cstdint>
#include <random>

#include "deconv2d/grid.hpp"

namespace deconv2d {

/// The two benchmark solutions on the unit square.
enum class ExampleId {
  SmoothFactored = 1,    // (-3 t1^2 + 3 t1 + 1/4)(sin(1.5 pi t2) + 1)
  PiecewiseSinusoid = 2  // sin(1.5 pi (t1+t2)) + 1 for t1 <= 0.5, else 1
};

ExampleId example_from_int(int id);
int example_to_int(ExampleId id);

double example_value(ExampleId id, double t1, double t2);

/// Midpoint samples of the chosen example.
GridFunction sample_example(ExampleId id, int n);

/// Standard normal deviates from a fixed Box-Muller transform over
/// mt19937_64, so streams are identical across standard libraries.
class GaussianSampler {
public:
  explicit GaussianSampler(std::uint64_t seed) : eng_(seed) {}
  double next();

private:
  double next_uniform();  // (0, 1]
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Deterministic seed mixing for derived streams.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t tag);

struct NoiseModel {
  double relative_level = 0.0;  // rho; delta = rho * ||y||
  std::uint64_t seed = 0;
};

struct Observation {
  DataGrid clean;   // y = F(x_dagger)
  DataGrid noisy;   // y^delta with ||y^delta - y|| = delta exactly
  double delta = 0.0;
};

/// Forward data for the example plus an i.i.d. normal perturbation on the
/// interior nodes, rescaled so that ||y^delta - y|| = rho ||y|| exactly.
/// The forced-zero boundary of the full case stays unperturbed.
Observation synthesize_data(ExampleId id, int n, DataCase data_case, const NoiseModel& noise);

}  // namespace deconv2d

#endif
