#include "frobcount/coarse.hpp"

#include <cmath>
#include <limits>

#include "frobcount/error.hpp"

namespace frobcount {

bool CoarseEstimate::matches(double tol) const {
  if (!tail_estimate || !declared) return false;
  return std::fabs(*tail_estimate - static_cast<double>(*declared)) <= tol;
}

double delta_ratio(std::uint64_t count, unsigned n, std::uint64_t p) {
  if (count == 0) return -std::numeric_limits<double>::infinity();
  unsigned k = 0;
  std::uint64_t rest = count;
  while (rest % p == 0) {
    rest /= p;
    ++k;
  }
  if (rest == 1) return static_cast<double>(k) / n;
  return std::log(static_cast<double>(count)) / (n * std::log(static_cast<double>(p)));
}

CoarseEstimate sweep(const SweepSchedule& schedule) {
  if (!is_prime(schedule.p)) throw Error(ErrorKind::NotPrime, std::to_string(schedule.p) + " is not prime");
  if (schedule.tail_k == 0) throw Error(ErrorKind::InvalidArgument, "tail length must be positive");
  CoarseEstimate est;
  est.p = schedule.p;
  est.declared = schedule.system.declared_trf_dim;

  double prev_ratio = std::numeric_limits<double>::infinity();
  for (const auto& [n, m] : schedule.pairs) {
    if (n < 1 || m >= n) {
      throw Error(ErrorKind::InvalidArgument,
                  "schedule pair (" + std::to_string(n) + "," + std::to_string(m) + ") needs m < n");
    }
    const double ratio = static_cast<double>(m) / n;
    if (ratio > prev_ratio) {
      est.warnings.push_back("m/n increases at (" + std::to_string(n) + "," + std::to_string(m) + ")");
    }
    prev_ratio = ratio;
  }

  CountOptions opts;
  opts.budget = schedule.budget;
  opts.threads = schedule.threads;
  opts.shards = schedule.shards;
  for (const auto& [n, m] : schedule.pairs) {
    const DiffField field = DiffField::make(schedule.p, n, m, schedule.seed);
    CountReport rep;
    try {
      rep = count_sharded(schedule.system, field, schedule.shards, opts);
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::BudgetExceeded) throw;
      est.budget_exceeded = true;
      est.warnings.push_back("budget exceeded at (" + std::to_string(n) + "," + std::to_string(m) + ")");
      break;
    }
    est.rows.push_back({n, m, rep.count, delta_ratio(rep.count, n, schedule.p)});
  }

  const std::size_t k = std::min(schedule.tail_k, est.rows.size());
  double sum = 0;
  std::size_t used = 0;
  for (std::size_t i = est.rows.size() - k; i < est.rows.size(); ++i) {
    if (std::isinf(est.rows[i].delta)) {
      est.empty_fiber_in_tail = true;
      continue;
    }
    sum += est.rows[i].delta;
    ++used;
  }
  if (used > 0) est.tail_estimate = sum / static_cast<double>(used);
  if (est.empty_fiber_in_tail) est.warnings.push_back("empty fibers excluded from the tail mean");
  return est;
}

}  // namespace frobcount
