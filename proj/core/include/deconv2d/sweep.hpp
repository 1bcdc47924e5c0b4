#ifndef DECONV2D_SWEEP_HPP
#define DECONV2D_SWEEP_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "deconv2d/examples.hpp"
#include "deconv2d/grid.hpp"
#include "deconv2d/irgnm.hpp"
#include "deconv2d/midpoint.hpp"
#include "deconv2d/param_select.hpp"
#include "deconv2d/penalty.hpp"
#include "deconv2d/tikhonov.hpp"

namespace deconv2d {

inline constexpr std::uint64_t kDefaultSeed = 987654321;

enum class Method { Tikhonov, Irgnm, LeastSquares };
std::string to_string(Method m);

struct LadderConfig {
  RegGrid grid{};
  double tau = 1.2;
  int max_down = 60;     // ladder steps below alpha0
  int max_up = 40;       // ladder extension above alpha0
  int lookahead = 2;     // extra steps past the best error before stopping
  bool want_sdp = true;  // keep extending until the discrepancy bracket closes
  bool full_sweep = false;  // validation: ignore the early exit, run max_down steps
  NewtonConfig newton{};
};

/// Warm-started Tikhonov sweep over the geometric ladder for one data set.
/// Walks l = 0, 1, 2, ... reusing the previous solution as the Newton start;
/// extends upward to l < 0 when the residual at alpha0 already sits below
/// tau*delta, so the discrepancy bracket always closes inside the trace.
/// Records are ordered by decreasing alpha with stop_index = l.
std::vector<SolveRecord> tikhonov_ladder_sweep(const MidpointOperator& op, const DataGrid& ydelta,
                                               const PenaltySpec& penalty,
                                               const GridFunction& x_start, double delta,
                                               const LadderConfig& cfg,
                                               const GridFunction* xref = nullptr);

struct SweepColumn {
  ExampleId example = ExampleId::SmoothFactored;
  DataCase data_case = DataCase::Limited;
  Method method = Method::Tikhonov;
  PenaltyKind penalty = PenaltyKind::NormSquare;
  std::vector<Rule> rules{Rule::Opt};
};

struct SweepPlan {
  int n = 20;
  std::uint64_t seed = kDefaultSeed;
  std::vector<double> noise_levels{0.10, 0.05, 0.02, 0.01, 0.005, 0.002, 0.001, 0.0005};
  RegGrid ladder{};
  double tau = 1.2;
  double beta = 0.1;
  double xbar_value = 0.5;
  double x0_value = 1.0;
  bool mirrored = false;  // compare against -x_dagger (sign-flipped branch)
  NewtonConfig newton{};
  IrgnmConfig irgnm{};
  std::vector<SweepColumn> columns;
  bool keep_traces = false;
  int jobs = 1;
};

struct SweepRow {
  ExampleId example;
  DataCase data_case;
  Method method;
  PenaltyKind penalty;
  Rule rule = Rule::Opt;
  bool rule_applies = true;  // least-squares rows carry no selection rule
  double rho = 0.0;
  double rel_input_error = 0.0;
  double rel_output_error = 0.0;
  double chosen_param = 0.0;  // alpha for variational runs, stop index for iterative
  int iterations = 0;
  std::uint64_t data_seed = 0;
  bool ok = true;
  std::string note;
};

struct KappaRow {
  ExampleId example;
  DataCase data_case;
  Method method;
  PenaltyKind penalty;
  Rule rule = Rule::Opt;
  double kappa = 0.0;
  int points = 0;
  bool ok = false;
  std::string note;
};

struct ColumnTrace {
  SweepColumn column;
  double rho = 0.0;
  double delta = 0.0;
  double tau_delta = 0.0;
  std::vector<SolveRecord> records;
};

struct SweepReport {
  std::vector<SweepRow> rows;
  std::vector<KappaRow> kappas;
  std::vector<ColumnTrace> traces;
};

/// Runs every column of the plan over its noise ladder.  One noise
/// realization per (example, case, rho) is shared by all methods; rows of a
/// column are produced sequentially along the warm-start chain, independent
/// columns run in parallel when plan.jobs > 1 (output order is fixed by the
/// plan regardless of scheduling).
SweepReport run_sweep(const SweepPlan& plan);

/// Seed for the noise realization shared by all methods at one data point.
std::uint64_t data_seed_for(std::uint64_t seed, ExampleId id, DataCase c, double rho);

/// Least-squares slope of log(error) against log(delta). Inputs must be
/// positive, at least four points.
double holder_fit(const std::vector<double>& deltas, const std::vector<double>& errors);

struct IllposednessReport {
  int n = 20;
  double rho = 0.008;
  std::uint64_t seed = 0;
  SolveRecord limited;
  SolveRecord full;
  double limited_error = 0.0;
  double full_error = 0.0;
};

/// Unregularized least squares from x0 == 1 for both data cases.
IllposednessReport illposedness_demo(int n = 20, double rho = 0.008,
                                     std::uint64_t seed = kDefaultSeed);

struct TwofoldnessReport {
  double forward_mismatch = 0.0;  // max |F(x) - F(-x)|, exactly zero
  double err_plus = 0.0;          // + branch error against x_dagger
  double err_minus = 0.0;         // mirrored branch error against -x_dagger
  double err_zero_start = 0.0;    // observational: x0 == 0 run against x_dagger
};

/// Sign twofoldness of the variational solver: the mirrored run (xbar = -0.5,
/// x0 == -1) must land at the mirrored error.
TwofoldnessReport twofoldness_check(ExampleId id, int n = 20, double rho = 0.01,
                                    std::uint64_t seed = kDefaultSeed);

void write_sweep_rows_csv(std::ostream& os, const SweepReport& report);
void write_kappa_csv(std::ostream& os, const SweepReport& report);
std::string sweep_manifest_json(const SweepPlan& plan);

}  // namespace deconv2d

#endif
