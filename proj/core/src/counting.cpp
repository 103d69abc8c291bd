#include "frobcount/counting.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <thread>

#include "frobcount/error.hpp"

namespace frobcount {

// ---------------------------------------------------------------- parameters

FElem ParamValue::evaluate(const DiffField& field) const {
  FElem acc = field.zero();
  const FElem g = field.generator();
  for (auto it = g_coeffs.rbegin(); it != g_coeffs.rend(); ++it) {
    acc = field.add(field.mul(acc, g), field.from_int(*it));
  }
  return acc;
}

std::string ParamValue::to_string() const {
  std::string out;
  for (std::size_t i = g_coeffs.size(); i-- > 0;) {
    const BigInt& c = g_coeffs[i];
    if (c == 0) continue;
    const bool negative = c < 0;
    const BigInt a = negative ? BigInt(-c) : c;
    if (out.empty()) {
      if (negative) out += '-';
    } else {
      out += negative ? '-' : '+';
    }
    if (i == 0) {
      out += a.str();
      continue;
    }
    if (a != 1) out += a.str() + "*";
    out += 'g';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out.empty() ? "0" : out;
}

bool operator==(const ParamValue& a, const ParamValue& b) {
  auto trimmed = [](std::vector<BigInt> v) {
    while (!v.empty() && v.back() == 0) v.pop_back();
    return v;
  };
  return trimmed(a.g_coeffs) == trimmed(b.g_coeffs);
}

std::vector<DiffPoly> DiffSystem::specialize(const DiffField& field) const {
  const std::size_t total = arity + params.size();
  std::vector<std::optional<FElem>> values(params.size());
  for (std::size_t j = 0; j < params.size(); ++j) {
    if (params[j].value) values[j] = params[j].value->evaluate(field);
  }
  std::vector<DiffPoly> out;
  out.reserve(polys.size());
  for (const auto& poly : polys) {
    if (poly.arity() != total) {
      throw Error(ErrorKind::DomainMismatch, "polynomial arity " + std::to_string(poly.arity()) +
                                                 " does not match system arity " +
                                                 std::to_string(total));
    }
    DiffPoly spec(Domain::field(field), arity);
    for (const auto& [m, c] : poly.terms()) {
      FElem coeff = poly.domain().to_field(c, field);
      for (std::size_t j = 0; j < params.size(); ++j) {
        const SigmaExp& e = m.exp(arity + j);
        if (e.is_zero()) continue;
        if (!values[j]) {
          throw Error(ErrorKind::UnassignedParameter, "parameter '" + params[j].name +
                                                          "' has no value");
        }
        FElem image = *values[j];
        for (std::size_t k = 0; k < e.coeffs().size(); ++k) {
          if (k > 0) image = field.frobenius(image);
          if (e.coeffs()[k] != 0) coeff = field.mul(coeff, field.pow(image, e.coeffs()[k]));
        }
      }
      DiffMonomial unknowns(std::vector<SigmaExp>(m.exps().begin(), m.exps().begin() + arity));
      spec.add_term(unknowns, coeff);
    }
    out.push_back(std::move(spec));
  }
  return out;
}

std::size_t DiffSystem::complexity() const {
  std::size_t n = 0;
  for (const auto& p : polys) n += p.size();
  return n;
}

// ---------------------------------------------------------------- rank

unsigned matrix_rank(const DiffField& field, std::vector<std::vector<FElem>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows.front().size();
  unsigned rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].code == 0) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    const FElem inv = field.inv(rows[rank][c]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].code == 0) continue;
      const FElem factor = field.mul(rows[r][c], inv);
      for (std::size_t k = c; k < cols; ++k) {
        rows[r][k] = field.sub(rows[r][k], field.mul(factor, rows[rank][k]));
      }
    }
    ++rank;
  }
  return rank;
}

// ---------------------------------------------------------------- engine

namespace {

// A polynomial flattened for the enumeration loop. Each factor reads a slot
// of the per-point Frobenius tower buffer: slot = var * (depth + 1) + k holds
// σ^k(x_var).
//
// Terms are grouped by their factors in the last (fastest) variable. The
// enumeration fixes the outer coordinates, folds every group into a single
// coefficient, and then only walks the last coordinate.
class CompiledPoly {
 public:
  CompiledPoly(const DiffPoly& poly, std::size_t depth, std::size_t n, const DiffField& field) {
    const std::size_t stride = depth + 1;
    const std::uint32_t inner_lo = n == 0 ? 0 : static_cast<std::uint32_t>((n - 1) * stride);
    const bool has_inner = n > 0;
    for (const auto& [m, c] : poly.terms()) {
      std::vector<Factor> inner;
      std::vector<Factor> outer;
      for (std::size_t i = 0; i < m.arity(); ++i) {
        const auto& coeffs = m.exp(i).coeffs();
        for (std::size_t k = 0; k < coeffs.size(); ++k) {
          if (coeffs[k] == 0) continue;
          const Factor f{static_cast<std::uint32_t>(i * stride + k), coeffs[k]};
          (has_inner && f.slot >= inner_lo ? inner : outer).push_back(f);
        }
      }
      auto it = std::find_if(groups_.begin(), groups_.end(),
                             [&](const Group& g) { return g.inner == inner; });
      if (it == groups_.end()) {
        groups_.push_back(Group{std::move(inner), {}, {}});
        it = std::prev(groups_.end());
      }
      it->terms.push_back(Term{std::get<FElem>(c), static_cast<std::uint32_t>(outer_.size()),
                               static_cast<std::uint32_t>(outer.size())});
      outer_.insert(outer_.end(), outer.begin(), outer.end());
    }
    // Tabulate the inner monomial over every value of the last coordinate.
    if (has_inner && field.order() <= kTableLimit) {
      std::vector<FElem> tower(stride);
      for (auto& g : groups_) {
        if (g.inner.empty()) continue;
        g.table.resize(field.order());
        for (std::uint64_t code = 0; code < field.order(); ++code) {
          tower[0] = FElem{code};
          for (std::size_t k = 1; k < stride; ++k) tower[k] = field.frobenius(tower[k - 1]);
          FElem v = field.one();
          for (const auto& f : g.inner) v = field.mul(v, power(field, tower[f.slot - inner_lo], f.exp));
          g.table[code] = v;
        }
      }
    }
  }

  std::size_t num_groups() const noexcept { return groups_.size(); }
  bool tabulated() const noexcept {
    return std::all_of(groups_.begin(), groups_.end(),
                       [](const Group& g) { return g.inner.empty() || !g.table.empty(); });
  }

  // coeffs[g] = Σ coeff · (outer factors) over the terms of group g.
  void prepare(const DiffField& field, const FElem* towers, FElem* coeffs) const {
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      FElem acc{0};
      for (const auto& term : groups_[g].terms) {
        FElem v = term.coeff;
        const Factor* f = outer_.data() + term.first_factor;
        for (std::uint32_t i = 0; i < term.num_factors && v.code != 0; ++i) {
          v = field.mul(v, power(field, towers[f[i].slot], f[i].exp));
        }
        acc = field.add(acc, v);
      }
      coeffs[g] = acc;
    }
  }

  FElem finish(const DiffField& field, const FElem* towers, std::uint64_t inner_code,
               const FElem* coeffs) const {
    FElem acc{0};
    for (std::size_t g = 0; g < groups_.size(); ++g) {
      const Group& grp = groups_[g];
      if (coeffs[g].code == 0) continue;
      FElem v;
      if (grp.inner.empty()) {
        v = coeffs[g];
      } else if (!grp.table.empty()) {
        v = coeffs[g].code == 1 ? grp.table[inner_code] : field.mul(coeffs[g], grp.table[inner_code]);
      } else {
        v = coeffs[g];
        for (const auto& f : grp.inner) v = field.mul(v, power(field, towers[f.slot], f.exp));
      }
      acc = acc.code == 0 ? v : field.add(acc, v);
    }
    return acc;
  }

  FElem eval(const DiffField& field, const FElem* towers, std::uint64_t inner_code) const {
    std::vector<FElem> coeffs(groups_.size());
    prepare(field, towers, coeffs.data());
    return finish(field, towers, inner_code, coeffs.data());
  }

 private:
  struct Term {
    FElem coeff;
    std::uint32_t first_factor;
    std::uint32_t num_factors;
  };
  struct Factor {
    std::uint32_t slot;
    std::uint64_t exp;
    bool operator==(const Factor&) const = default;
  };
  struct Group {
    std::vector<Factor> inner;
    std::vector<Term> terms;
    std::vector<FElem> table;
  };

  static FElem power(const DiffField& field, FElem base, std::uint64_t e) {
    return e == 1 ? base : field.pow(base, e);
  }

  std::vector<Group> groups_;
  std::vector<Factor> outer_;
};

struct CompiledSystem {
  std::size_t n = 0;
  std::size_t depth = 0;
  std::vector<CompiledPoly> polys;
  // jacobian[i * n + j] = ∂P_i/∂x_j
  std::vector<CompiledPoly> jacobian;
  bool tabulated = true;
};

CompiledSystem compile(const std::vector<DiffPoly>& polys, std::size_t n, const DiffField& field,
                       bool with_jacobian) {
  CompiledSystem cs;
  cs.n = n;
  for (const auto& p : polys) cs.depth = std::max(cs.depth, p.sigma_order());
  for (const auto& p : polys) cs.polys.emplace_back(p, cs.depth, n, field);
  if (with_jacobian) {
    for (const auto& p : polys) {
      for (std::size_t j = 0; j < n; ++j) {
        cs.jacobian.emplace_back(p.partial_derivative(j), cs.depth, n, field);
      }
    }
  }
  for (const auto& p : cs.polys) cs.tabulated = cs.tabulated && p.tabulated();
  return cs;
}

struct ShardResult {
  std::uint64_t count = 0;
  std::vector<std::vector<FElem>> witnesses;
};

void fill_tower(const DiffField& field, std::size_t depth, FElem x, FElem* slot) {
  slot[0] = x;
  for (std::size_t k = 1; k <= depth; ++k) slot[k] = field.frobenius(slot[k - 1]);
}

ShardResult run_shard(const CompiledSystem& cs, const DiffField& field, CodeRange first,
                      std::size_t max_witnesses, unsigned threshold) {
  ShardResult out;
  const std::size_t n = cs.n;
  const std::size_t stride = cs.depth + 1;
  const std::uint64_t order = field.order();
  std::vector<FElem> towers(std::max<std::size_t>(n, 1) * stride);
  std::vector<std::uint64_t> codes(n, 0);
  std::vector<std::vector<FElem>> jac(cs.polys.size(), std::vector<FElem>(n));
  std::vector<std::vector<FElem>> coeffs;
  for (const auto& p : cs.polys) coeffs.emplace_back(p.num_groups());

  auto record = [&](std::uint64_t inner_code) {
    ++out.count;
    if (out.witnesses.size() >= max_witnesses) return;
    if (cs.tabulated && n > 0) fill_tower(field, cs.depth, FElem{inner_code}, &towers[(n - 1) * stride]);
    for (std::size_t i = 0; i < cs.polys.size(); ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        jac[i][j] = cs.jacobian[i * n + j].eval(field, towers.data(), inner_code);
      }
    }
    if (matrix_rank(field, jac) >= threshold) {
      std::vector<FElem> point(n);
      for (std::size_t j = 0; j < n; ++j) point[j] = FElem{codes[j]};
      out.witnesses.push_back(std::move(point));
    }
  };
  auto prepare = [&]() {
    for (std::size_t i = 0; i < cs.polys.size(); ++i) cs.polys[i].prepare(field, towers.data(), coeffs[i].data());
  };
  auto zero_at = [&](std::uint64_t inner_code) {
    for (std::size_t i = 0; i < cs.polys.size(); ++i) {
      if (cs.polys[i].finish(field, towers.data(), inner_code, coeffs[i].data()).code != 0) return false;
    }
    return true;
  };

  if (n == 0) {
    if (first.begin == 0 && first.size() > 0) {
      prepare();
      if (zero_at(0)) record(0);
    }
    return out;
  }
  if (first.size() == 0) return out;

  // The shard range applies to coordinate 0; the last coordinate is walked
  // in full inside each outer point (or over the shard when n == 1).
  const std::size_t last = n - 1;
  const std::uint64_t inner_begin = n == 1 ? first.begin : 0;
  const std::uint64_t inner_end = n == 1 ? first.end : order;
  if (n > 1) codes[0] = first.begin;
  for (std::size_t j = 0; j < last; ++j) fill_tower(field, cs.depth, FElem{codes[j]}, &towers[j * stride]);
  while (true) {
    prepare();
    for (std::uint64_t y = inner_begin; y < inner_end; ++y) {
      codes[last] = y;
      if (!cs.tabulated) fill_tower(field, cs.depth, FElem{y}, &towers[last * stride]);
      if (zero_at(y)) record(y);
    }
    if (last == 0) return out;
    // Odometer over the outer coordinates.
    std::size_t j = last;
    while (j-- > 0) {
      const std::uint64_t limit = j == 0 ? first.end : order;
      if (++codes[j] < limit) {
        fill_tower(field, cs.depth, FElem{codes[j]}, &towers[j * stride]);
        break;
      }
      if (j == 0) return out;
      codes[j] = 0;
      fill_tower(field, cs.depth, FElem{0}, &towers[j * stride]);
    }
  }
}

unsigned resolve_threshold(const DiffSystem& sys, const CountOptions& opts) {
  if (opts.rank_threshold) return *opts.rank_threshold;
  if (sys.declared_trf_dim) {
    return *sys.declared_trf_dim >= sys.arity ? 0 : static_cast<unsigned>(sys.arity - *sys.declared_trf_dim);
  }
  return 1;
}

}  // namespace

CountReport count_sharded(const DiffSystem& sys, const DiffField& field, unsigned shards,
                          CountOptions opts) {
  if (shards == 0) throw Error(ErrorKind::InvalidArgument, "shard count must be >= 1");
  const auto start = std::chrono::steady_clock::now();
  const std::size_t n = sys.arity;

  const BigInt tuples = boost::multiprecision::pow(BigInt(field.order()), static_cast<unsigned>(n));
  if (tuples > opts.budget) {
    throw Error(ErrorKind::BudgetExceeded, "enumerating " + tuples.str() + " tuples over " +
                                               field.describe() + " exceeds the budget of " +
                                               std::to_string(opts.budget));
  }
  const std::vector<DiffPoly> polys = sys.specialize(field);

  CountReport report;
  report.p = field.p();
  report.t = field.t();
  report.m = field.m();
  report.q = field.q();
  report.n = n;
  report.evaluated = static_cast<std::uint64_t>(tuples);
  report.jacobian_threshold = resolve_threshold(sys, opts);

  if (polys.empty() && report.jacobian_threshold > 0) {
    // Every tuple is a solution and the empty Jacobian has rank 0.
    report.count = report.evaluated;
    report.elapsed = std::chrono::steady_clock::now() - start;
    return report;
  }

  const CompiledSystem cs = compile(polys, n, field, opts.max_witnesses > 0);
  const std::vector<CodeRange> ranges =
      n == 0 ? split_range(1, shards) : split_range(field.order(), shards);

  std::vector<ShardResult> results(ranges.size());
  unsigned workers = opts.threads == 0 ? std::max(1u, std::thread::hardware_concurrency()) : opts.threads;
  workers = std::min<unsigned>(workers, static_cast<unsigned>(ranges.size()));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto worker = [&]() {
    try {
      for (std::size_t i = next++; i < ranges.size(); i = next++) {
        results[i] = run_shard(cs, field, ranges[i], opts.max_witnesses, report.jacobian_threshold);
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(failure_mu);
      if (!failure) failure = std::current_exception();
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }
  if (failure) std::rethrow_exception(failure);

  for (auto& r : results) {
    report.count += r.count;
    for (auto& w : r.witnesses) {
      if (report.smooth_witnesses.size() >= opts.max_witnesses) break;
      report.smooth_witnesses.push_back(std::move(w));
    }
  }
  report.elapsed = std::chrono::steady_clock::now() - start;
  return report;
}

CountReport count(const DiffSystem& sys, const DiffField& field, const CountOptions& opts) {
  return count_sharded(sys, field, opts.shards, opts);
}

unsigned jacobian_rank(const DiffSystem& sys, std::span<const FElem> point, const DiffField& field) {
  if (point.size() != sys.arity) throw Error(ErrorKind::DomainMismatch, "point arity mismatch");
  const std::vector<DiffPoly> polys = sys.specialize(field);
  for (const auto& p : polys) {
    if (p.evaluate(field, point).code != 0) {
      throw Error(ErrorKind::NotOnVariety, "point does not satisfy the system");
    }
  }
  std::vector<std::vector<FElem>> rows;
  for (const auto& p : polys) {
    std::vector<FElem> row(sys.arity);
    for (std::size_t j = 0; j < sys.arity; ++j) row[j] = p.partial_derivative(j).evaluate(field, point);
    rows.push_back(std::move(row));
  }
  return matrix_rank(field, std::move(rows));
}

}  // namespace frobcount
