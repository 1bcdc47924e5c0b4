#ifndef DECONV2D_REPRODUCE_HPP
#define DECONV2D_REPRODUCE_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "deconv2d/sweep.hpp"

namespace deconv2d {

/// Canned case-study runs checked against published reference results:
/// relative output errors at 1% input error (table2/table4), fitted decay
/// exponents over the noise ladder (table1/table3), and the unregularized
/// baseline (fig3).
enum class ReproTarget { Table1, Table2, Table3, Table4, Fig3 };

ReproTarget repro_target_from_string(const std::string& s);
std::string to_string(ReproTarget t);

struct ReproCell {
  std::string label;
  double reference = 0.0;  // published value (percent, or exponent)
  double computed = 0.0;
  double lo = 0.0;  // accepted band
  double hi = 0.0;
  bool pass = false;
};

struct ReproReport {
  ReproTarget target;
  std::uint64_t seed = 0;
  std::vector<ReproCell> cells;
  bool all_pass = false;
  SweepReport sweep;  // underlying rows (empty for fig3)
  SweepPlan plan;
};

/// Error cells: within max(40% relative, 2 percentage points) of the
/// reference. Exponent cells: within +/-0.15. fig3: fixed bands
/// [17,70]% (limited), [7,28]% (full) plus ratio > 1.5.
ReproReport run_reproduction(ReproTarget target, std::uint64_t seed = kDefaultSeed, int jobs = 1,
                             bool keep_traces = false);

/// The CSV emitted by the reproduce command; byte-stable for a fixed seed.
std::string repro_report_csv(const ReproReport& report);

}  // namespace deconv2d

#endif
