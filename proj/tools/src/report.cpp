#include "frobcount/cli/report.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <iomanip>

#include <json.hpp>

namespace frobcount::cli {

namespace {

using nlohmann::ordered_json;

std::uint64_t elapsed_ms(const CountReport& r, bool timing) {
  if (!timing) return 0;
  return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(r.elapsed).count());
}

ordered_json bound_number(double v) {
  if (std::isfinite(v)) return v;
  return format_double(v);
}

ordered_json verdict_json(const Verdict& v) {
  ordered_json j;
  j["formula_id"] = std::string(to_string(v.verdict.formula));
  if (v.c) {
    j["c"] = *v.c;
  } else {
    j["c"] = nullptr;
  }
  j["lower"] = bound_number(v.verdict.lower);
  j["upper"] = bound_number(v.verdict.upper);
  j["satisfied"] = v.verdict.satisfied;
  j["applicable"] = v.verdict.applicable;
  j["exact"] = v.verdict.exact;
  if (v.verdict.inputs.d) j["d"] = *v.verdict.inputs.d;
  if (v.verdict.inputs.r) j["r"] = *v.verdict.inputs.r;
  if (v.verdict.inputs.ell) j["ell"] = *v.verdict.inputs.ell;
  j["q"] = to_string(v.verdict.inputs.q);
  return j;
}

}  // namespace

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void write_count_csv(std::ostream& out, const std::vector<CountArtifact>& artifacts, bool timing) {
  out << kCountCsvHeader << '\n';
  for (const auto& a : artifacts) {
    const CountReport& r = a.report;
    const std::string prefix = std::to_string(r.p) + ',' + std::to_string(r.t) + ',' + std::to_string(r.m) + ',' +
                               std::to_string(r.q) + ',' + std::to_string(r.n) + ',' + std::to_string(r.count) +
                               ',' + std::to_string(r.evaluated) + ',' + std::to_string(r.smooth_witnesses.size()) +
                               ',' + std::to_string(elapsed_ms(r, timing));
    if (a.verdicts.empty()) {
      out << prefix << ",,,,,\n";
      continue;
    }
    for (const auto& v : a.verdicts) {
      out << prefix << ',' << (v.c ? format_double(*v.c) : std::string()) << ','
          << to_string(v.verdict.formula) << ',' << format_double(v.verdict.lower) << ','
          << format_double(v.verdict.upper) << ',' << (v.verdict.satisfied ? "true" : "false") << '\n';
    }
  }
}

void write_count_json(std::ostream& out, const std::vector<CountArtifact>& artifacts, bool timing) {
  ordered_json doc;
  doc["schema"] = 1;
  doc["kind"] = "count";
  ordered_json runs = ordered_json::array();
  for (const auto& a : artifacts) {
    const CountReport& r = a.report;
    ordered_json j;
    j["p"] = r.p;
    j["t"] = r.t;
    j["m"] = r.m;
    j["q"] = r.q;
    j["n"] = r.n;
    j["count"] = r.count;
    j["evaluated"] = r.evaluated;
    j["smooth_found"] = r.smooth_witnesses.size();
    j["jacobian_threshold"] = r.jacobian_threshold;
    j["elapsed_ms"] = elapsed_ms(r, timing);
    ordered_json deg;
    ordered_json degs = ordered_json::array();
    for (const auto& d : a.degree.degrees) degs.push_back(to_string(d));
    deg["degrees"] = degs;
    deg["product"] = to_string(a.degree.product);
    deg["c"] = a.degree.c;
    j["degree_bound"] = deg;
    ordered_json wit = ordered_json::array();
    for (const auto& w : r.smooth_witnesses) {
      ordered_json pt = ordered_json::array();
      for (const auto& e : w) pt.push_back(e.code);
      wit.push_back(pt);
    }
    j["smooth_witnesses"] = wit;
    ordered_json vs = ordered_json::array();
    for (const auto& v : a.verdicts) vs.push_back(verdict_json(v));
    j["verdicts"] = vs;
    runs.push_back(j);
  }
  doc["runs"] = runs;
  out << doc.dump(2) << '\n';
}

void write_sweep_csv(std::ostream& out, const CoarseEstimate& est) {
  out << kSweepCsvHeader << '\n';
  for (const auto& r : est.rows) {
    out << est.p << ',' << r.n << ',' << r.m << ',' << r.count << ',' << format_double(r.delta) << '\n';
  }
}

void write_sweep_json(std::ostream& out, const CoarseEstimate& est, double tolerance) {
  ordered_json doc;
  doc["schema"] = 1;
  doc["kind"] = "sweep";
  doc["p"] = est.p;
  ordered_json rows = ordered_json::array();
  for (const auto& r : est.rows) {
    ordered_json j;
    j["n"] = r.n;
    j["m"] = r.m;
    j["count"] = r.count;
    j["delta_ratio"] = bound_number(r.delta);
    rows.push_back(j);
  }
  doc["rows"] = rows;
  if (est.tail_estimate) {
    doc["tail_estimate"] = *est.tail_estimate;
  } else {
    doc["tail_estimate"] = nullptr;
  }
  if (est.declared) {
    doc["declared_d"] = *est.declared;
  } else {
    doc["declared_d"] = nullptr;
  }
  doc["tolerance"] = tolerance;
  doc["match"] = est.matches(tolerance);
  doc["budget_exceeded"] = est.budget_exceeded;
  doc["empty_fiber_in_tail"] = est.empty_fiber_in_tail;
  doc["warnings"] = est.warnings;
  out << doc.dump(2) << '\n';
}

void write_verdict_table(std::ostream& out, const std::vector<CountArtifact>& artifacts) {
  for (const auto& a : artifacts) {
    const CountReport& r = a.report;
    out << "field (" << r.p << ',' << r.t << ',' << r.m << ")  n=" << r.n << "  count=" << r.count
        << "  degree product=" << to_string(a.degree.product) << "  minimal c=" << a.degree.c << '\n';
    out << "  " << std::left << std::setw(16) << "formula" << std::setw(6) << "c" << std::setw(24) << "lower"
        << std::setw(24) << "upper" << "verdict\n";
    for (const auto& v : a.verdicts) {
      std::string verdict = v.verdict.satisfied ? "holds" : "violated";
      if (!v.verdict.applicable) verdict += " (not applicable)";
      if (v.verdict.exact) verdict += " [exact]";
      out << "  " << std::setw(16) << to_string(v.verdict.formula) << std::setw(6)
          << (v.c ? format_double(*v.c) : "-") << std::setw(24) << format_double(v.verdict.lower)
          << std::setw(24) << format_double(v.verdict.upper) << verdict << '\n';
    }
  }
  out << std::right;
}

}  // namespace frobcount::cli
