#include "deconv2d/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <limits>
#include <mutex>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "deconv2d/spectral.hpp"
#include "deconv2d/version.hpp"

namespace deconv2d {

std::string to_string(Method m) {
  switch (m) {
    case Method::Tikhonov: return "tikhonov";
    case Method::Irgnm: return "irgnm";
    case Method::LeastSquares: return "lsq";
  }
  return "?";
}

std::vector<SolveRecord> tikhonov_ladder_sweep(const MidpointOperator& op, const DataGrid& ydelta,
                                               const PenaltySpec& penalty,
                                               const GridFunction& x_start, double delta,
                                               const LadderConfig& cfg, const GridFunction* xref) {
  const double tau_delta = cfg.tau * delta;
  const double ynorm = discrete_l2_norm(ydelta);

  std::vector<SolveRecord> records;
  GridFunction warm = x_start;
  double best_err = std::numeric_limits<double>::infinity();
  int best_l = 0;
  bool reached_bound = false;

  for (int l = 0; l <= cfg.max_down; ++l) {
    SolveRecord rec =
        tikhonov_solve(op, ydelta, cfg.grid.alpha(l), penalty, warm, cfg.newton, xref);
    rec.stop_index = l;
    warm = rec.x;
    if (rec.residual <= tau_delta) reached_bound = true;
    if (xref && *rec.rel_error < best_err) {
      best_err = *rec.rel_error;
      best_l = l;
    }
    const double last_res = rec.residual;
    records.push_back(std::move(rec));

    if (cfg.full_sweep) continue;
    if (delta > 0.0) {
      const bool bracket_ok = !cfg.want_sdp || reached_bound;
      const bool error_ok = xref ? (l - best_l >= cfg.lookahead) : reached_bound;
      if (bracket_ok && error_ok) break;
    } else {
      const bool error_ok = xref && (l - best_l >= cfg.lookahead);
      if (error_ok || last_res <= 1e-10 * ynorm) break;
    }
  }

  // The ladder is defined for l in Z: when alpha0 already satisfies the
  // discrepancy bound, extend upward until the bracket closes.
  if (delta > 0.0 && cfg.want_sdp) {
    int ups = 0;
    while (records.front().residual <= tau_delta && ups < cfg.max_up) {
      const int l = records.front().stop_index - 1;
      SolveRecord rec = tikhonov_solve(op, ydelta, cfg.grid.alpha(l), penalty,
                                       records.front().x, cfg.newton, xref);
      rec.stop_index = l;
      records.insert(records.begin(), std::move(rec));
      ++ups;
    }
  }
  return records;
}

std::uint64_t data_seed_for(std::uint64_t seed, ExampleId id, DataCase c, double rho) {
  const std::uint64_t tag = (std::uint64_t(example_to_int(id)) << 40) ^
                            (std::uint64_t(c == DataCase::Full ? 1 : 0) << 32) ^
                            std::uint64_t(std::llround(rho * 1e9));
  return mix_seed(seed, tag);
}

namespace {

PenaltySpec make_penalty(PenaltyKind kind, int n, const SweepPlan& plan) {
  switch (kind) {
    case PenaltyKind::NormSquare:
      return PenaltySpec::norm_square(GridFunction::constant(n, plan.xbar_value));
    case PenaltyKind::GradientSquare: return PenaltySpec::gradient_square();
    case PenaltyKind::SmoothedTv: return PenaltySpec::smoothed_tv(plan.beta);
  }
  throw std::logic_error("unreachable");
}

struct ColumnOutput {
  std::vector<SweepRow> rows;
  std::vector<KappaRow> kappas;
  std::vector<ColumnTrace> traces;
};

bool has_rule(const SweepColumn& col, Rule r) {
  return std::find(col.rules.begin(), col.rules.end(), r) != col.rules.end();
}

ColumnOutput run_column(const SweepPlan& plan, const SweepColumn& col) {
  const int n = plan.n;
  const GridFunction xdagger = sample_example(col.example, n);
  const GridFunction xref = plan.mirrored ? -xdagger : xdagger;
  const PenaltySpec penalty = make_penalty(col.penalty, n, plan);
  const MidpointOperator mid(n, col.data_case);
  const SpectralOperator spec(n, col.data_case);

  GridFunction chain = GridFunction::constant(n, plan.x0_value);
  std::vector<double> opt_deltas, opt_errors;
  ColumnOutput out;

  for (double rho : plan.noise_levels) {
    const std::uint64_t dseed = data_seed_for(plan.seed, col.example, col.data_case, rho);
    const Observation obs = synthesize_data(col.example, n, col.data_case, {rho, dseed});
    const double rel_in = rho > 0.0 ? relative_error(obs.noisy, obs.clean) : 0.0;

    auto failed_rows = [&](const std::string& why) {
      for (Rule rule : col.rules) {
        SweepRow row;
        row.example = col.example;
        row.data_case = col.data_case;
        row.method = col.method;
        row.penalty = col.penalty;
        row.rule = rule;
        row.rho = rho;
        row.rel_input_error = rel_in;
        row.rel_output_error = std::numeric_limits<double>::quiet_NaN();
        row.chosen_param = std::numeric_limits<double>::quiet_NaN();
        row.data_seed = dseed;
        row.ok = false;
        row.note = why;
        out.rows.push_back(std::move(row));
      }
    };

    std::vector<SolveRecord> records;
    try {
      switch (col.method) {
        case Method::Tikhonov: {
          LadderConfig lc;
          lc.grid = plan.ladder;
          lc.tau = plan.tau;
          lc.newton = plan.newton;
          lc.want_sdp = has_rule(col, Rule::Sdp);
          records = tikhonov_ladder_sweep(mid, obs.noisy, penalty, chain, obs.delta, lc, &xref);
          chain = records[choose_opt(records, xref).index].x;  // next noise level reuses it
          break;
        }
        case Method::Irgnm: {
          records = irgnm_run(spec, obs.noisy, penalty, GridFunction::constant(n, plan.x0_value),
                              plan.tau * obs.delta, plan.irgnm, &xref);
          break;
        }
        case Method::LeastSquares: {
          NewtonConfig cfg = plan.newton;
          cfg.max_iters = std::max(cfg.max_iters, 200);
          records.push_back(least_squares_solve(mid, obs.noisy,
                                                GridFunction::constant(n, plan.x0_value), cfg,
                                                &xref));
          break;
        }
      }
    } catch (const SolverError& e) {
      failed_rows(e.what());
      continue;
    }

    if (plan.keep_traces)
      out.traces.push_back({col, rho, obs.delta, plan.tau * obs.delta, records});

    for (Rule rule : col.rules) {
      SweepRow row;
      row.example = col.example;
      row.data_case = col.data_case;
      row.method = col.method;
      row.penalty = col.penalty;
      row.rule = rule;
      row.rule_applies = col.method != Method::LeastSquares;
      row.rho = rho;
      row.rel_input_error = rel_in;
      row.data_seed = dseed;

      int idx = -1;
      if (col.method == Method::LeastSquares) {
        idx = 0;
      } else
        switch (rule) {
          case Rule::Opt: idx = choose_opt(records, xref).index; break;
          case Rule::Sdp: {
            SdpResult r = choose_sdp(records, obs.delta, plan.tau);
            if (r.status == SdpStatus::Bracketed) {
              idx = r.result.index;
            } else {
              row.ok = false;
              row.note = r.status == SdpStatus::NeedLargerAlpha ? "sdp: need larger alpha"
                                                                : "sdp: need smaller alpha";
            }
            break;
          }
          case Rule::Qo: {
            if (records.size() < 2) {
              row.ok = false;
              row.note = "qo: fewer than two records";
            } else {
              idx = choose_qo(records).index;
            }
            break;
          }
        }

      if (idx >= 0) {
        const SolveRecord& rec = records[idx];
        row.rel_output_error = rec.rel_error.value_or(std::numeric_limits<double>::quiet_NaN());
        row.chosen_param = col.method == Method::Irgnm ? double(rec.stop_index) : rec.alpha;
        row.iterations = rec.iterations;
        if (rule == Rule::Opt && row.rel_output_error < 1.0) {
          opt_deltas.push_back(obs.delta);
          opt_errors.push_back(row.rel_output_error);
        }
      } else {
        row.rel_output_error = std::numeric_limits<double>::quiet_NaN();
        row.chosen_param = std::numeric_limits<double>::quiet_NaN();
      }
      out.rows.push_back(std::move(row));
    }
  }

  if (col.method != Method::LeastSquares && has_rule(col, Rule::Opt)) {
    KappaRow kr;
    kr.example = col.example;
    kr.data_case = col.data_case;
    kr.method = col.method;
    kr.penalty = col.penalty;
    kr.points = static_cast<int>(opt_deltas.size());
    if (opt_deltas.size() >= 4) {
      kr.kappa = holder_fit(opt_deltas, opt_errors);
      kr.ok = true;
    } else {
      kr.note = "fewer than four usable noise levels";
    }
    out.kappas.push_back(std::move(kr));
  }
  return out;
}

}  // namespace

SweepReport run_sweep(const SweepPlan& plan) {
  if (plan.columns.empty()) throw std::invalid_argument("run_sweep: empty plan");
  std::vector<ColumnOutput> outputs(plan.columns.size());

  const int jobs = std::max(1, plan.jobs);
  if (jobs == 1 || plan.columns.size() == 1) {
    for (size_t i = 0; i < plan.columns.size(); ++i) outputs[i] = run_column(plan, plan.columns[i]);
  } else {
    std::atomic<size_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        const size_t i = next.fetch_add(1);
        if (i >= plan.columns.size()) return;
        try {
          outputs[i] = run_column(plan, plan.columns[i]);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
        }
      }
    };
    std::vector<std::thread> pool;
    const size_t count = std::min<size_t>(jobs, plan.columns.size());
    pool.reserve(count);
    for (size_t t = 0; t < count; ++t) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  SweepReport report;
  for (auto& o : outputs) {
    report.rows.insert(report.rows.end(), o.rows.begin(), o.rows.end());
    report.kappas.insert(report.kappas.end(), o.kappas.begin(), o.kappas.end());
    report.traces.insert(report.traces.end(), o.traces.begin(), o.traces.end());
  }
  return report;
}

double holder_fit(const std::vector<double>& deltas, const std::vector<double>& errors) {
  if (deltas.size() != errors.size()) throw std::invalid_argument("holder_fit: size mismatch");
  if (deltas.size() < 4) throw std::invalid_argument("holder_fit: need at least four points");
  const size_t m = deltas.size();
  double sx = 0, sy = 0;
  for (size_t i = 0; i < m; ++i) {
    if (!(deltas[i] > 0.0) || !(errors[i] > 0.0))
      throw std::invalid_argument("holder_fit: inputs must be positive");
    sx += std::log(deltas[i]);
    sy += std::log(errors[i]);
  }
  const double mx = sx / m, my = sy / m;
  double sxx = 0, sxy = 0;
  for (size_t i = 0; i < m; ++i) {
    const double dx = std::log(deltas[i]) - mx;
    sxx += dx * dx;
    sxy += dx * (std::log(errors[i]) - my);
  }
  if (sxx == 0.0) throw std::invalid_argument("holder_fit: degenerate abscissae");
  return sxy / sxx;
}

IllposednessReport illposedness_demo(int n, double rho, std::uint64_t seed) {
  IllposednessReport rep;
  rep.n = n;
  rep.rho = rho;
  rep.seed = seed;
  const GridFunction xdagger = sample_example(ExampleId::SmoothFactored, n);
  const GridFunction x0 = GridFunction::constant(n, 1.0);
  NewtonConfig cfg;
  cfg.max_iters = 200;

  for (DataCase c : {DataCase::Limited, DataCase::Full}) {
    const std::uint64_t dseed = data_seed_for(seed, ExampleId::SmoothFactored, c, rho);
    const Observation obs = synthesize_data(ExampleId::SmoothFactored, n, c, {rho, dseed});
    const MidpointOperator op(n, c);
    SolveRecord rec = least_squares_solve(op, obs.noisy, x0, cfg, &xdagger);
    if (c == DataCase::Limited) {
      rep.limited_error = rec.rel_error.value();
      rep.limited = std::move(rec);
    } else {
      rep.full_error = rec.rel_error.value();
      rep.full = std::move(rec);
    }
  }
  return rep;
}

TwofoldnessReport twofoldness_check(ExampleId id, int n, double rho, std::uint64_t seed) {
  TwofoldnessReport rep;
  const GridFunction xdagger = sample_example(id, n);

  for (DataCase c : {DataCase::Limited, DataCase::Full}) {
    const MidpointOperator op(n, c);
    const DataGrid a = op.forward(xdagger);
    const DataGrid b = op.forward(-xdagger);
    rep.forward_mismatch =
        std::max(rep.forward_mismatch, (a.values() - b.values()).cwiseAbs().maxCoeff());
  }

  const DataCase c = DataCase::Limited;
  const std::uint64_t dseed = data_seed_for(seed, id, c, rho);
  const Observation obs = synthesize_data(id, n, c, {rho, dseed});
  const MidpointOperator op(n, c);
  LadderConfig lc;
  lc.want_sdp = false;

  auto branch = [&](double sign, const GridFunction& start) {
    const PenaltySpec penalty = PenaltySpec::norm_square(GridFunction::constant(n, sign * 0.5));
    const GridFunction ref = sign < 0 ? -xdagger : xdagger;
    auto records = tikhonov_ladder_sweep(op, obs.noisy, penalty, start, obs.delta, lc, &ref);
    return records[choose_opt(records, ref).index].rel_error.value();
  };

  rep.err_plus = branch(+1.0, GridFunction::constant(n, 1.0));
  rep.err_minus = branch(-1.0, GridFunction::constant(n, -1.0));
  rep.err_zero_start = [&] {
    const PenaltySpec penalty = PenaltySpec::norm_square(GridFunction::constant(n, 0.5));
    auto records =
        tikhonov_ladder_sweep(op, obs.noisy, penalty, GridFunction::constant(n, 0.0), obs.delta,
                              lc, &xdagger);
    return records[choose_opt(records, xdagger).index].rel_error.value();
  }();
  return rep;
}

namespace {

std::string example_str(ExampleId id) { return std::to_string(example_to_int(id)); }

}  // namespace

void write_sweep_rows_csv(std::ostream& os, const SweepReport& report) {
  os << "example,case,method,penalty,rule,rel_input_error,rel_output_error,chosen_param,"
        "iterations,seed\n";
  for (const SweepRow& r : report.rows) {
    os << example_str(r.example) << ',' << to_string(r.data_case) << ',' << to_string(r.method)
       << ',' << (r.method == Method::LeastSquares ? "-" : to_string(r.penalty)) << ','
       << (r.rule_applies ? to_string(r.rule) : "-") << ',' << format_double(r.rel_input_error)
       << ',' << format_double(r.rel_output_error) << ',' << format_double(r.chosen_param) << ','
       << r.iterations << ',' << r.data_seed << '\n';
  }
}

void write_kappa_csv(std::ostream& os, const SweepReport& report) {
  os << "example,case,method,penalty,rule,kappa,points\n";
  for (const KappaRow& r : report.kappas) {
    os << example_str(r.example) << ',' << to_string(r.data_case) << ',' << to_string(r.method)
       << ',' << to_string(r.penalty) << ',' << to_string(r.rule) << ','
       << (r.ok ? format_double(r.kappa) : "-") << ',' << r.points << '\n';
  }
}

std::string sweep_manifest_json(const SweepPlan& plan) {
  nlohmann::json j;
  j["tool"] = "deconv2d";
  j["version"] = kVersion;
  j["n"] = plan.n;
  j["seed"] = plan.seed;
  j["noise_levels"] = plan.noise_levels;
  j["ladder"] = {{"alpha0", plan.ladder.alpha0}, {"q", plan.ladder.q}};
  j["tau"] = plan.tau;
  j["beta"] = plan.beta;
  j["xbar"] = plan.xbar_value;
  j["x0"] = plan.x0_value;
  j["mirrored"] = plan.mirrored;
  j["newton"] = {{"max_iters", plan.newton.max_iters},
                 {"grad_tol", plan.newton.grad_tol},
                 {"contraction", plan.newton.contraction},
                 {"sufficient_decrease", plan.newton.sufficient_decrease},
                 {"min_step", plan.newton.min_step}};
  j["irgnm"] = {{"alpha0", plan.irgnm.alpha0},
                {"q", plan.irgnm.q},
                {"max_outer", plan.irgnm.max_outer},
                {"cg_tol", plan.irgnm.cg_tol},
                {"cg_max", plan.irgnm.cg_max}};
  j["jobs"] = plan.jobs;
  nlohmann::json cols = nlohmann::json::array();
  for (const SweepColumn& c : plan.columns) {
    nlohmann::json jc;
    jc["example"] = example_to_int(c.example);
    jc["case"] = to_string(c.data_case);
    jc["method"] = to_string(c.method);
    jc["penalty"] = to_string(c.penalty);
    std::vector<std::string> rules;
    for (Rule r : c.rules) rules.push_back(to_string(r));
    jc["rules"] = rules;
    cols.push_back(jc);
  }
  j["columns"] = cols;
  return j.dump(2);
}

}  // namespace deconv2d
