#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "frobcount/bounds.hpp"
#include "frobcount/coarse.hpp"
#include "frobcount/counting.hpp"

namespace frobcount::cli {

struct Verdict {
  /// Absent for formulas that take no c (Cafure–Matera).
  std::optional<double> c;
  BoundVerdict verdict;
};

/// One counted field together with the bound verdicts evaluated on it.
struct CountArtifact {
  CountReport report;
  DegreeBound degree;
  std::vector<Verdict> verdicts;
};

/// Shortest round-trip decimal; "inf" / "-inf" / "nan" for the rest.
std::string format_double(double v);

inline constexpr const char* kCountCsvHeader =
    "p,t,m,q,n,count,evaluated,smooth_found,elapsed_ms,c,formula_id,lower,upper,satisfied";
inline constexpr const char* kSweepCsvHeader = "p,n,m,count,delta_ratio";

/// One row per verdict; a report without verdicts still gets one row with empty bound columns.
void write_count_csv(std::ostream& out, const std::vector<CountArtifact>& artifacts, bool timing);
void write_count_json(std::ostream& out, const std::vector<CountArtifact>& artifacts, bool timing);

void write_sweep_csv(std::ostream& out, const CoarseEstimate& est);
void write_sweep_json(std::ostream& out, const CoarseEstimate& est, double tolerance);

/// Fixed-width table for humans.
void write_verdict_table(std::ostream& out, const std::vector<CountArtifact>& artifacts);

}  // namespace frobcount::cli
