#ifndef DECONV2D_PARAM_SELECT_HPP
#define DECONV2D_PARAM_SELECT_HPP

#include <string>
#include <vector>

#include "deconv2d/solve_record.hpp"

namespace deconv2d {

/// Geometric regularization-parameter ladder alpha_l = q^l alpha0, l in Z.
struct RegGrid {
  double alpha0 = 1.0;
  double q = 0.5;
  double alpha(int l) const;
};

enum class Rule { Opt, Sdp, Qo };

std::string to_string(Rule r);

struct RuleResult {
  Rule rule = Rule::Opt;
  int index = -1;    // position in the record sequence
  double chosen = 0; // alpha value, or the stop index for iterative traces
};

/// Oracle rule: the record minimizing ||x - xdagger|| over the evaluated
/// ladder; ties break toward larger alpha (earlier record). Records must be
/// ordered by decreasing alpha. Throws on an empty sequence.
RuleResult choose_opt(const std::vector<SolveRecord>& records, const GridFunction& xdagger);

enum class SdpStatus {
  Bracketed,
  NeedLargerAlpha,   // already below tau*delta at the head of the ladder
  NeedSmallerAlpha,  // never reached tau*delta within the evaluated range
};

struct SdpResult {
  SdpStatus status = SdpStatus::NeedSmallerAlpha;
  RuleResult result;  // valid only when status == Bracketed
};

/// Sequential discrepancy principle: scanning from the largest alpha, the
/// first record with residual <= tau*delta, provided its predecessor exceeds
/// tau*delta. Requires tau > 1.
SdpResult choose_sdp(const std::vector<SolveRecord>& records, double delta, double tau);

/// Quasi-optimality: alpha_l minimizing ||x_{alpha_l} - x_{alpha_{l+1}}||
/// over consecutive pairs. Needs at least two records.
RuleResult choose_qo(const std::vector<SolveRecord>& records);

}  // namespace deconv2d

#endif
