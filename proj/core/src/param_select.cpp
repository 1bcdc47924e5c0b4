#include "deconv2d/param_select.hpp"

#include <cmath>
#include <stdexcept>

namespace deconv2d {

double RegGrid::alpha(int l) const {
  if (!(alpha0 > 0.0) || !(q > 0.0 && q < 1.0))
    throw std::invalid_argument("RegGrid: need alpha0 > 0 and q in (0,1)");
  return alpha0 * std::pow(q, l);
}

std::string to_string(Rule r) {
  switch (r) {
    case Rule::Opt: return "opt";
    case Rule::Sdp: return "sdp";
    case Rule::Qo: return "qo";
  }
  return "?";
}

RuleResult choose_opt(const std::vector<SolveRecord>& records, const GridFunction& xdagger) {
  if (records.empty()) throw std::invalid_argument("choose_opt: empty record sequence");
  int best = 0;
  double best_err = discrete_l2_norm(records[0].x - xdagger);
  for (size_t i = 1; i < records.size(); ++i) {
    const double e = discrete_l2_norm(records[i].x - xdagger);
    if (e < best_err) {
      best_err = e;
      best = static_cast<int>(i);
    }
  }
  return {Rule::Opt, best, records[best].alpha};
}

SdpResult choose_sdp(const std::vector<SolveRecord>& records, double delta, double tau) {
  if (records.empty()) throw std::invalid_argument("choose_sdp: empty record sequence");
  if (!(tau > 1.0)) throw std::invalid_argument("choose_sdp: tau must exceed 1");
  const double bound = tau * delta;
  for (size_t i = 0; i < records.size(); ++i) {
    if (records[i].residual <= bound) {
      if (i == 0) return {SdpStatus::NeedLargerAlpha, {}};
      return {SdpStatus::Bracketed, {Rule::Sdp, static_cast<int>(i), records[i].alpha}};
    }
  }
  return {SdpStatus::NeedSmallerAlpha, {}};
}

RuleResult choose_qo(const std::vector<SolveRecord>& records) {
  if (records.size() < 2) throw std::invalid_argument("choose_qo: need at least two records");
  int best = 0;
  double best_diff = discrete_l2_norm(records[0].x - records[1].x);
  for (size_t i = 1; i + 1 < records.size(); ++i) {
    const double d = discrete_l2_norm(records[i].x - records[i + 1].x);
    if (d < best_diff) {
      best_diff = d;
      best = static_cast<int>(i);
    }
  }
  return {Rule::Qo, best, records[best].alpha};
}

}  // namespace deconv2d
