#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "frobcount/counting.hpp"

namespace frobcount {

struct SweepSchedule {
  std::uint64_t p = 2;
  /// (n_i, m_i) with m_i < n_i; step i counts over DF(p, n_i, m_i).
  std::vector<std::pair<unsigned, unsigned>> pairs;
  DiffSystem system;
  std::uint64_t budget = 100'000'000;
  std::size_t tail_k = 3;
  std::uint64_t seed = 0;
  unsigned shards = 1;
  unsigned threads = 0;
};

struct SweepRow {
  unsigned n = 0;
  unsigned m = 0;
  std::uint64_t count = 0;
  /// log(count) / (n log p); -inf when count = 0.
  double delta = 0;
};

struct CoarseEstimate {
  std::uint64_t p = 0;
  std::vector<SweepRow> rows;
  /// Mean of the finite deltas among the last tail_k rows; nullopt if none.
  std::optional<double> tail_estimate;
  std::optional<unsigned> declared;
  /// A step was skipped for exceeding the budget; rows holds the prefix that ran.
  bool budget_exceeded = false;
  /// Some tail row had count 0 and was left out of the mean.
  bool empty_fiber_in_tail = false;
  std::vector<std::string> warnings;

  /// |tail - declared| <= tol. False when either side is missing.
  bool matches(double tol = 0.1) const;
};

double delta_ratio(std::uint64_t count, unsigned n, std::uint64_t p);

/// Throws InvalidArgument for malformed pairs; BudgetExceeded is caught and flagged.
CoarseEstimate sweep(const SweepSchedule& schedule);

}  // namespace frobcount
