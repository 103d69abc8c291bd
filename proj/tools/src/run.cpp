#include "frobcount/cli/run.hpp"

#include <fstream>
#include <memory>
#include <sstream>

#include "frobcount/bounds.hpp"
#include "frobcount/cli/checks.hpp"
#include "frobcount/cli/report.hpp"
#include "frobcount/coarse.hpp"
#include "frobcount/error.hpp"
#include "frobcount/presets.hpp"
#include "frobcount/reduction.hpp"

namespace frobcount::cli {

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string source_label(const RunConfig& cfg) {
  return cfg.preset.empty() ? cfg.input : "preset:" + cfg.preset;
}

SystemFile load_input(const RunConfig& cfg) {
  if (!cfg.preset.empty()) {
    if (!preset_text(cfg.preset)) throw UsageError("unknown preset '" + cfg.preset + "'");
    return load_preset(cfg.preset);
  }
  if (cfg.input.empty()) throw UsageError("an --input file or a --preset is required");
  std::ifstream in(cfg.input, std::ios::binary);
  if (!in) throw IoError("cannot read " + cfg.input);
  std::ostringstream text;
  text << in.rdbuf();
  return parse_system(text.str());
}

std::vector<DiffField> resolve_fields(const RunConfig& cfg, const SystemFile& file) {
  std::vector<FieldSpec> specs = cfg.fields;
  if (specs.empty() && file.field) specs.push_back(*file.field);
  if (specs.empty()) throw UsageError("no field: add a 'field:' line or pass --field p,t,m");
  std::vector<DiffField> out;
  for (auto spec : specs) {
    if (cfg.seed) spec.seed = cfg.seed;
    out.push_back(spec.make());
  }
  return out;
}

std::vector<Verdict> verdicts_for(const DiffSystem& sys, const DiffField& field, std::uint64_t count,
                                  const DegreeBound& degree, const std::vector<double>& c_values) {
  std::vector<double> cs = c_values;
  if (cs.empty()) cs.push_back(static_cast<double>(degree.c));
  const BigInt q = field.reduction_q();
  std::vector<Verdict> out;
  const unsigned d = sys.declared_trf_dim.value_or(static_cast<unsigned>(sys.arity));
  for (const double c : cs) {
    if (sys.declared_trf_dim && d >= 1) {
      for (auto& v : theorem_b_verdicts(count, d, c, field.p(), field.t(), q)) out.push_back({c, std::move(v)});
    } else {
      out.push_back({c, trivial_verdict(count, d, c, field.p(), field.t(), q)});
    }
  }
  // A single σ-free plane curve also gets the refined Lang-Weil check.
  if (sys.arity == 2 && sys.params.empty() && sys.polys.size() == 1 && sys.polys[0].sigma_order() == 0 &&
      !sys.polys[0].is_constant()) {
    const std::uint64_t ell = sys.polys[0].total_degree().constant_part();
    out.push_back({std::nullopt, cafure_matera_verdict(count, 1, ell, field.order())});
  }
  return out;
}

std::vector<CountArtifact> count_all(const RunConfig& cfg, const SystemFile& file) {
  const DiffSystem sys = file.to_system();
  CountOptions opts;
  opts.budget = cfg.budget;
  opts.shards = cfg.shards;
  opts.threads = cfg.threads;
  opts.max_witnesses = cfg.witnesses;
  std::vector<CountArtifact> out;
  for (const auto& field : resolve_fields(cfg, file)) {
    CountArtifact a;
    a.report = count_sharded(sys, field, cfg.shards, opts);
    a.degree = degree_bound(sys, field.reduction_q());
    a.verdicts = verdicts_for(sys, field, a.report.count, a.degree, cfg.c_values);
    out.push_back(std::move(a));
  }
  return out;
}

int do_count(const RunConfig& cfg, std::ostream& out) {
  const auto artifacts = count_all(cfg, load_input(cfg));
  if (cfg.format == Format::Json) {
    write_count_json(out, artifacts, cfg.timing);
  } else {
    write_count_csv(out, artifacts, cfg.timing);
  }
  return exit_code::kOk;
}

int do_bounds(const RunConfig& cfg, std::ostream& out) {
  const auto artifacts = count_all(cfg, load_input(cfg));
  if (cfg.format == Format::Json) {
    write_count_json(out, artifacts, cfg.timing);
  } else {
    write_verdict_table(out, artifacts);
  }
  return exit_code::kOk;
}

int do_sweep(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const SystemFile file = load_input(cfg);
  if (!file.schedule) throw UsageError(source_label(cfg) + " has no 'schedule:' line");
  SweepSchedule s;
  s.p = file.schedule->p;
  s.pairs = file.schedule->pairs;
  s.system = file.to_system();
  s.budget = cfg.budget;
  s.seed = cfg.seed.value_or(0);
  s.shards = cfg.shards;
  s.threads = cfg.threads;
  const CoarseEstimate est = sweep(s);
  if (cfg.format == Format::Json) {
    write_sweep_json(out, est, cfg.tolerance);
  } else {
    write_sweep_csv(out, est);
  }
  for (const auto& w : est.warnings) err << "warning: " << w << '\n';
  return est.budget_exceeded ? exit_code::kBudget : exit_code::kOk;
}

std::vector<std::string> unknown_names(const SystemFile& file) {
  return std::vector<std::string>(file.vars.begin(), file.vars.end());
}

int do_reduce(const RunConfig& cfg, std::ostream& out) {
  const SystemFile file = load_input(cfg);
  if (cfg.fields.empty() && !file.field) {
    if (!cfg.q) throw UsageError("reduce over Q needs --q");
    const auto names = file.symbol_names();
    for (const auto& poly : file.system) {
      out << frobenius_reduce(poly, *cfg.q).to_string(names) << '\n';
    }
    return exit_code::kOk;
  }
  const auto names = unknown_names(file);
  for (const auto& field : resolve_fields(cfg, file)) {
    const BigInt q = cfg.q ? BigInt(*cfg.q) : BigInt(field.reduction_q());
    out << "# " << field.describe() << " q=" << q << '\n';
    for (const auto& poly : file.to_system().specialize(field)) {
      out << frobenius_reduce(poly, q).to_string(names) << '\n';
    }
  }
  return exit_code::kOk;
}

void print_twist(std::ostream& out, const SystemTwist& tw, const std::vector<std::string>& names,
                 const DiffField* field) {
  for (const auto& r : tw.results) {
    out << r.reduced.to_string(names) << "  # ell=" << r.ell << " shift=" << r.m_shift << " witness="
        << (r.witness_var ? names.at(*r.witness_var) : std::string("none"));
    if (field) out << " field=" << twisted_field(*field, r.ell).describe();
    out << '\n';
  }
  if (tw.mixed_ell) out << "# mixed ell: each polynomial lives over its own twisted field\n";
}

int do_twist(const RunConfig& cfg, std::ostream& out) {
  const SystemFile file = load_input(cfg);
  if (cfg.fields.empty() && !file.field) {
    print_twist(out, twist_reduce_system(file.system), file.symbol_names(), nullptr);
    return exit_code::kOk;
  }
  for (const auto& field : resolve_fields(cfg, file)) {
    out << "# " << field.describe() << '\n';
    const auto polys = file.to_system().specialize(field);
    print_twist(out, twist_reduce_system(polys), unknown_names(file), &field);
  }
  return exit_code::kOk;
}

int do_examples(const RunConfig& cfg, std::ostream& out) {
  std::vector<std::string> names;
  if (cfg.preset.empty()) {
    names = preset_names();
  } else {
    if (!preset_text(cfg.preset)) throw UsageError("unknown preset '" + cfg.preset + "'");
    names.push_back(cfg.preset);
  }
  CheckOptions opts;
  opts.shards = cfg.shards;
  opts.threads = cfg.threads;
  opts.seed = cfg.seed.value_or(0);
  std::vector<CheckRow> rows;
  for (const auto& n : names) {
    for (auto& r : run_preset_checks(n, opts)) rows.push_back(std::move(r));
  }
  write_check_table(out, rows);
  for (const auto& r : rows) {
    if (!r.passed()) return exit_code::kCheckFailed;
  }
  return exit_code::kOk;
}

int dispatch(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.budget < 1) throw UsageError("--budget must be at least 1");
  if (cfg.shards < 1) throw UsageError("--shards must be at least 1");
  switch (cfg.subcommand) {
    case Subcommand::Count: return do_count(cfg, out);
    case Subcommand::Bounds: return do_bounds(cfg, out);
    case Subcommand::Sweep: return do_sweep(cfg, out, err);
    case Subcommand::Reduce: return do_reduce(cfg, out);
    case Subcommand::Twist: return do_twist(cfg, out);
    case Subcommand::Examples: return do_examples(cfg, out);
  }
  return exit_code::kUsage;
}

int exit_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::Syntax:
    case ErrorKind::UndeclaredSymbol:
    case ErrorKind::SigmaDepthExceeded: return exit_code::kParse;
    case ErrorKind::BudgetExceeded: return exit_code::kBudget;
    case ErrorKind::InvalidArgument:
    case ErrorKind::UnassignedParameter:
    case ErrorKind::NotPrime:
    case ErrorKind::TooLarge: return exit_code::kUsage;
    default: return exit_code::kMath;
  }
}

}  // namespace

FieldSpec parse_field_spec(const std::string& text) {
  std::vector<std::uint64_t> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stoull(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorKind::InvalidArgument, "bad field '" + text + "', expected p,t,m");
    }
  }
  if (parts.size() < 2 || parts.size() > 3) {
    throw Error(ErrorKind::InvalidArgument, "bad field '" + text + "', expected p,t,m");
  }
  FieldSpec spec;
  spec.p = parts[0];
  spec.t = static_cast<unsigned>(parts[1]);
  spec.m = parts.size() == 3 ? parts[2] : 0;
  return spec;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    if (config.out.empty()) return dispatch(config, out, err);
    std::ostringstream buffer;
    const int rc = dispatch(config, buffer, err);
    std::ofstream file(config.out, std::ios::binary | std::ios::trunc);
    if (!file || !(file << buffer.str())) throw IoError("cannot write " + config.out);
    return rc;
  } catch (const ParseError& e) {
    err << source_label(config) << ':' << e.line() << ':' << e.column() << ": " << to_string(e.kind()) << ": "
        << e.message();
    if (!e.expected().empty()) {
      err << " (expected ";
      for (std::size_t i = 0; i < e.expected().size(); ++i) err << (i ? ", " : "") << e.expected()[i];
      err << ')';
    }
    err << '\n';
    return exit_code::kParse;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_for(e.kind());
  } catch (const UsageError& e) {
    err << "usage: " << e.what() << '\n';
    return exit_code::kUsage;
  } catch (const IoError& e) {
    err << "io: " << e.what() << '\n';
    return exit_code::kIo;
  }
}

}  // namespace frobcount::cli
