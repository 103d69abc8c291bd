#include <cmath>

#include <gtest/gtest.h>

#include "frobcount/coarse.hpp"
#include "frobcount/dsl.hpp"
#include "frobcount/error.hpp"

namespace frobcount {
namespace {

SweepSchedule schedule(std::string_view text, std::vector<std::pair<unsigned, unsigned>> pairs,
                       std::uint64_t p = 2) {
  SweepSchedule s;
  s.p = p;
  s.pairs = std::move(pairs);
  s.system = parse_system(text).to_system();
  return s;
}

TEST(Sweep, AffinePlane) {
  const CoarseEstimate e = sweep(schedule("vars: x, y\ndim: 2\nsystem:\n", {{3, 1}, {5, 1}, {7, 2}}));
  ASSERT_EQ(e.rows.size(), 3u);
  for (const auto& r : e.rows) EXPECT_EQ(r.delta, 2.0);
  EXPECT_EQ(e.tail_estimate, 2.0);
  EXPECT_TRUE(e.matches());
}

TEST(Sweep, FixedFieldRatios) {
  const CoarseEstimate e = sweep(schedule("vars: x\ndim: 0\nsystem:\n s(x) - x\n", {{4, 2}, {6, 2}, {8, 2}}));
  ASSERT_EQ(e.rows.size(), 3u);
  EXPECT_DOUBLE_EQ(e.rows[0].delta, 0.5);
  EXPECT_DOUBLE_EQ(e.rows[1].delta, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(e.rows[2].delta, 0.25);
  EXPECT_EQ(e.rows[1].count, 4u);
  EXPECT_FALSE(e.matches());
  EXPECT_TRUE(e.matches(0.4));
}

TEST(Sweep, BijectiveShapeIsExactlyOne) {
  const CoarseEstimate e =
      sweep(schedule("vars: x, y\ndim: 1\nsystem:\n s(y) - x^2 - 1\n", {{2, 1}, {3, 1}, {4, 1}, {5, 1}}, 3));
  for (const auto& r : e.rows) EXPECT_EQ(r.delta, 1.0);
  EXPECT_EQ(e.declared, 1u);
  EXPECT_TRUE(e.matches());
}

TEST(Sweep, EmptyFibersAreFlaggedAndSkipped) {
  const CoarseEstimate e = sweep(schedule("vars: x1, x2\nsystem:\n s(x1) - x1\n x1^2 + x1 + 1\n",
                                          {{4, 2}, {6, 2}, {5, 1}, {7, 1}}));
  ASSERT_EQ(e.rows.size(), 4u);
  EXPECT_TRUE(std::isinf(e.rows[2].delta) && e.rows[2].delta < 0);
  EXPECT_TRUE(e.empty_fiber_in_tail);
  ASSERT_TRUE(e.tail_estimate.has_value());
  EXPECT_DOUBLE_EQ(*e.tail_estimate, std::log(2.0 * 64) / (6 * std::log(2.0)));
}

TEST(Sweep, AllEmptyTailHasNoEstimate) {
  const CoarseEstimate e =
      sweep(schedule("vars: x1\nsystem:\n s(x1) - x1\n x1^2 + x1 + 1\n", {{3, 1}, {5, 1}, {7, 1}}));
  EXPECT_FALSE(e.tail_estimate.has_value());
  EXPECT_FALSE(e.matches());
}

TEST(Sweep, BudgetStopsWithPartialRows) {
  SweepSchedule s = schedule("vars: x, y\nsystem:\n x - y\n", {{2, 1}, {4, 1}, {8, 1}});
  s.budget = 300;
  const CoarseEstimate e = sweep(s);
  EXPECT_TRUE(e.budget_exceeded);
  EXPECT_EQ(e.rows.size(), 2u);
}

TEST(Sweep, WarnsWhenRatioIncreases) {
  const CoarseEstimate e = sweep(schedule("vars: x\nsystem:\n x\n", {{4, 1}, {4, 3}}));
  EXPECT_FALSE(e.warnings.empty());
  const CoarseEstimate ok = sweep(schedule("vars: x\nsystem:\n x\n", {{4, 2}, {8, 2}}));
  EXPECT_TRUE(ok.warnings.empty());
}

TEST(Sweep, RejectsBadPairs) {
  EXPECT_THROW((void)sweep(schedule("vars: x\nsystem:\n x\n", {{3, 3}})), Error);
  EXPECT_THROW((void)sweep(schedule("vars: x\nsystem:\n x\n", {{3, 1}}, 4)), Error);
}

TEST(Sweep, ConfigurableTail) {
  SweepSchedule s = schedule("vars: x\nsystem:\n s(x) - x\n", {{4, 2}, {6, 2}, {8, 2}});
  s.tail_k = 1;
  EXPECT_DOUBLE_EQ(*sweep(s).tail_estimate, 0.25);
}

TEST(Sweep, DeltaNeverExceedsArity) {
  const CoarseEstimate e = sweep(schedule("vars: x, y\nsystem:\n x*s(y) - y^2\n", {{2, 1}, {3, 1}, {4, 1}}, 3));
  for (const auto& r : e.rows) EXPECT_LE(r.delta, 2.0);
}

TEST(DeltaRatio, PowersAreExact) {
  EXPECT_EQ(delta_ratio(1024, 10, 2), 1.0);
  EXPECT_EQ(delta_ratio(2, 10, 2), 0.1);
  EXPECT_NEAR(delta_ratio(31, 2, 5), std::log(31.0) / (2 * std::log(5.0)), 1e-15);
}

}  // namespace
}  // namespace frobcount
