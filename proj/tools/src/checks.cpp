#include "frobcount/cli/checks.hpp"

#include <iomanip>
#include <numeric>
#include <sstream>

#include "frobcount/bounds.hpp"
#include "frobcount/counting.hpp"
#include "frobcount/error.hpp"
#include "frobcount/presets.hpp"
#include "frobcount/reduction.hpp"

namespace frobcount::cli {

namespace {

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

std::string field_label(std::uint64_t p, unsigned t, unsigned m) {
  return "(" + std::to_string(p) + "," + std::to_string(t) + "," + std::to_string(m) + ")";
}

class Tally {
 public:
  Tally(std::string preset, std::string check) {
    row_.preset = std::move(preset);
    row_.check = std::move(check);
  }

  void expect(bool ok, const std::string& what) {
    ++row_.cases;
    if (!ok && row_.failures++ == 0) row_.detail = what;
  }

  CheckRow done(const std::string& summary) {
    if (row_.failures == 0) row_.detail = summary;
    return row_;
  }

 private:
  CheckRow row_;
};

std::uint64_t run_count(const SystemFile& file, const DiffField& field, const CheckOptions& opts) {
  CountOptions co;
  co.threads = opts.threads;
  co.max_witnesses = 0;
  return count_sharded(file.to_system(), field, opts.shards, co).count;
}

// Count through the materialized M_q polynomials, independent of the tower evaluator.
std::uint64_t reduced_count(const SystemFile& file, const DiffField& field) {
  const DiffSystem sys = file.to_system();
  std::vector<AlgPoly::Evaluator> evals;
  std::vector<AlgPoly> reduced;
  for (const auto& poly : sys.specialize(field)) reduced.push_back(frobenius_reduce(poly, field.reduction_q()));
  for (const auto& r : reduced) evals.emplace_back(r, field);
  const std::size_t n = sys.arity;
  std::vector<FElem> point(n, field.zero());
  std::uint64_t total = 0;
  const std::uint64_t order = field.order();
  const std::uint64_t tuples = ipow(order, static_cast<unsigned>(n));
  for (std::uint64_t idx = 0; idx < tuples; ++idx) {
    std::uint64_t rest = idx;
    for (std::size_t i = n; i-- > 0;) {
      point[i] = FElem{rest % order};
      rest /= order;
    }
    bool zero = true;
    for (const auto& e : evals) {
      if (e(point) != field.zero()) {
        zero = false;
        break;
      }
    }
    if (zero) ++total;
  }
  return total;
}

CheckRow cube_root(const CheckOptions& opts) {
  const SystemFile file = load_preset("cube-root");
  Tally tally("cube-root", "count = 2*2^t iff t, m even");
  for (unsigned t = 1; t <= 8; ++t) {
    for (unsigned m = 0; m < t; ++m) {
      const DiffField f = DiffField::make(2, t, m, opts.seed);
      const std::uint64_t expected = (t % 2 == 0 && m % 2 == 0) ? 2 * ipow(2, t) : 0;
      const std::uint64_t got = run_count(file, f, opts);
      tally.expect(got == expected, field_label(2, t, m) + ": expected " + std::to_string(expected) + ", got " +
                                        std::to_string(got));
    }
  }
  return tally.done("p=2, 1<=t<=8, 0<=m<t");
}

CheckRow fixed_field(const CheckOptions& opts) {
  const SystemFile file = load_preset("fixed-field");
  Tally tally("fixed-field", "count = p^gcd(t,m)");
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned t = 1; ipow(p, t) <= 4096; ++t) {
      for (unsigned m = 0; m < t; ++m) {
        const DiffField f = DiffField::make(p, t, m, opts.seed);
        const std::uint64_t expected = ipow(p, std::gcd(t, m));
        const std::uint64_t got = run_count(file, f, opts);
        tally.expect(got == expected, field_label(p, t, m) + ": expected " + std::to_string(expected) +
                                          ", got " + std::to_string(got));
      }
    }
  }
  return tally.done("p in {2,3,5}, p^t <= 4096");
}

std::vector<CheckRow> twist_factor(const CheckOptions& opts) {
  const SystemFile file = load_preset("twist-factor");
  Tally reduce("twist-factor", "M_p(x*s(x) - y^2) = x^(p+1) - y^2");
  Tally counts("twist-factor", "count matches y^2 = x^(p+1)");
  for (std::uint64_t p : {3, 5, 7}) {
    const Domain q = Domain::rationals();
    AlgPoly expected(q, 2);
    expected.add_term({BigInt(p + 1), BigInt(0)}, q.one());
    expected.add_term({BigInt(0), BigInt(2)}, q.from_int(-1));
    const AlgPoly got = frobenius_reduce(file.system.at(0), p);
    reduce.expect(got == expected, "p=" + std::to_string(p) + ": got " + got.to_string(file.vars));

    for (unsigned t = 1; ipow(p, 2 * t) <= 1'000'000; ++t) {
      const DiffField f = DiffField::make(p, t, 1, opts.seed);
      std::uint64_t brute = 0;
      for (const FElem x : f.elements()) {
        const FElem rhs = f.pow(x, p + 1);
        for (const FElem y : f.elements()) {
          if (f.mul(y, y) == rhs) ++brute;
        }
      }
      const std::uint64_t n = run_count(file, f, opts);
      counts.expect(n == brute, field_label(p, t, f.m()) + ": count " + std::to_string(n) + ", brute force " +
                                    std::to_string(brute));
    }
  }
  return {reduce.done("p in {3,5,7}"), counts.done("p in {3,5,7}, p^(2t) <= 10^6")};
}

CheckRow bijective(const CheckOptions& opts) {
  const SystemFile file = load_preset("bijective");
  Tally tally("bijective", "count = p^t");
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned t = 1; ipow(p, 2 * t) <= 1'000'000; ++t) {
      for (unsigned m = 0; m < t; ++m) {
        const DiffField f = DiffField::make(p, t, m, opts.seed);
        const std::uint64_t got = run_count(file, f, opts);
        tally.expect(got == ipow(p, t), field_label(p, t, m) + ": got " + std::to_string(got));
      }
    }
  }
  return tally.done("p in {2,3,5}, p^(2t) <= 10^6");
}

CheckRow elliptic(const CheckOptions& opts) {
  const SystemFile file = load_preset("elliptic");
  Tally tally("elliptic", "Cafure-Matera r=1, l=3");
  std::size_t applicable = 0;
  for (std::uint64_t p : {5, 7, 11, 13}) {
    for (unsigned t = 1; ipow(p, t) <= 4096; ++t) {
      const DiffField f = DiffField::make(p, t, 0, opts.seed);
      const std::uint64_t n = run_count(file, f, opts);
      const BoundVerdict v = cafure_matera_verdict(n, 1, 3, f.order());
      if (!v.applicable) continue;
      ++applicable;
      tally.expect(v.satisfied, field_label(p, t, 0) + ": count " + std::to_string(n));
    }
  }
  return tally.done(std::to_string(applicable) + " applicable fields");
}

CheckRow plane(const CheckOptions& opts) {
  const SystemFile file = load_preset("plane");
  Tally tally("plane", "count = p^(2t)");
  for (std::uint64_t p : {2, 3}) {
    for (unsigned t = 1; t <= 4; ++t) {
      const DiffField f = DiffField::make(p, t, t - 1, opts.seed);
      const std::uint64_t got = run_count(file, f, opts);
      tally.expect(got == ipow(p, 2 * t), field_label(p, t, t - 1) + ": got " + std::to_string(got));
    }
  }
  return tally.done("p in {2,3}, t <= 4");
}

CheckRow reduction_oracle(const std::string& name, const CheckOptions& opts) {
  const SystemFile file = load_preset(name);
  Tally tally(name, "count = count via M_q");
  if (!file.field) return tally.done("no field declared");
  const DiffField f = file.field->make();
  const std::uint64_t direct = run_count(file, f, opts);
  const std::uint64_t reduced = reduced_count(file, f);
  tally.expect(direct == reduced, f.describe() + ": direct " + std::to_string(direct) + ", via M_q " +
                                      std::to_string(reduced));
  return tally.done(f.describe() + " count " + std::to_string(direct));
}

}  // namespace

std::vector<CheckRow> run_preset_checks(std::string_view name, const CheckOptions& opts) {
  if (!preset_text(name)) throw Error(ErrorKind::InvalidArgument, "unknown preset '" + std::string(name) + "'");
  const std::string n(name);
  std::vector<CheckRow> rows;
  if (n == "cube-root") {
    rows.push_back(cube_root(opts));
  } else if (n == "fixed-field") {
    rows.push_back(fixed_field(opts));
  } else if (n == "twist-factor") {
    for (auto& r : twist_factor(opts)) rows.push_back(std::move(r));
  } else if (n == "bijective") {
    rows.push_back(bijective(opts));
  } else if (n == "elliptic") {
    rows.push_back(elliptic(opts));
  } else if (n == "plane") {
    rows.push_back(plane(opts));
  }
  rows.push_back(reduction_oracle(n, opts));
  return rows;
}

void write_check_table(std::ostream& out, const std::vector<CheckRow>& rows) {
  out << std::left << std::setw(14) << "preset" << std::setw(38) << "check" << std::setw(7) << "cases"
      << std::setw(6) << "" << "detail\n";
  for (const auto& r : rows) {
    out << std::setw(14) << r.preset << std::setw(38) << r.check << std::setw(7) << r.cases << std::setw(6)
        << (r.passed() ? "PASS" : "FAIL") << r.detail << '\n';
  }
  out << std::right;
}

}  // namespace frobcount::cli
