#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "frobcount/counting.hpp"
#include "frobcount/dsl.hpp"
#include "frobcount/error.hpp"
#include "frobcount/reduction.hpp"
#include "support/corpus.hpp"
#include "support/naive_field.hpp"
#include "support/printers.hpp"

namespace frobcount {
namespace {

using testing::ipow;

DiffSystem system_of(std::string_view text) { return parse_system(text).to_system(); }

DiffSystem xy_system(std::initializer_list<const char*> polys) {
  DiffSystem sys;
  sys.arity = 2;
  for (const char* p : polys) sys.polys.push_back(parse_expression(p, {"x", "y"}));
  return sys;
}

// Count by evaluating the materialized algebraic polynomials.
std::uint64_t reduced_count(const DiffSystem& sys, const DiffField& f) {
  std::vector<AlgPoly> reduced;
  for (const auto& p : sys.specialize(f)) reduced.push_back(frobenius_reduce(p, f.reduction_q()));
  std::uint64_t n = 0;
  testing::for_each_point(f, sys.arity, [&](const std::vector<FElem>& pt) {
    bool all = true;
    for (const auto& r : reduced) all = all && r.evaluate(f, pt) == f.zero();
    n += all;
  });
  return n;
}

TEST(Count, FixedFieldExample) {
  const DiffSystem sys = system_of("vars: x\nsystem:\n s(x) - x\n");
  const CountReport r = count(sys, DiffField::make(2, 4, 2));
  EXPECT_EQ(r.count, 4u);
  EXPECT_EQ(r.evaluated, 16u);
  EXPECT_EQ(r.q, 4u);
  EXPECT_EQ(r.n, 1u);
}

TEST(Count, CubeRootOddCase) {
  const DiffSystem sys = system_of("vars: x1, x2\nsystem:\n s(x1) - x1\n x1^2 + x1 + 1\n");
  for (auto [t, m] : {std::pair{3u, 1u}, {4u, 1u}, {4u, 3u}, {5u, 2u}, {6u, 3u}}) {
    EXPECT_EQ(count(sys, DiffField::make(2, t, m)).count, 0u) << t << "," << m;
  }
  EXPECT_EQ(count(sys, DiffField::make(2, 4, 2)).count, 32u);
}

TEST(Count, BijectiveFrobenius) {
  const DiffSystem sys = xy_system({"s(y) - x^2 - 1"});
  EXPECT_EQ(count(sys, DiffField::make(3, 2, 1)).count, 9u);
  EXPECT_EQ(count(sys, DiffField::make(2, 5, 3)).count, 32u);
}

TEST(Count, EmptySystemIsAffineSpace) {
  DiffSystem sys;
  sys.arity = 3;
  EXPECT_EQ(count(sys, DiffField::make(3, 2, 1)).count, 729u);
}

TEST(Count, ArityZero) {
  DiffSystem empty;
  EXPECT_EQ(count(empty, DiffField::make(5, 1)).count, 1u);
  DiffSystem nonzero_constant;
  nonzero_constant.polys.push_back(DiffPoly::from_int(Domain::rationals(), 0, 3));
  EXPECT_EQ(count(nonzero_constant, DiffField::make(5, 1)).count, 0u);
  EXPECT_EQ(count(nonzero_constant, DiffField::make(3, 1)).count, 1u);
}

TEST(Count, BudgetExceeded) {
  const DiffSystem sys = xy_system({"x - y"});
  CountOptions opts;
  opts.budget = 100;
  try {
    (void)count(sys, DiffField::make(2, 4), opts);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::BudgetExceeded);
  }
  opts.budget = 256;
  EXPECT_EQ(count(sys, DiffField::make(2, 4), opts).count, 16u);
}

TEST(Count, UnassignedParameter) {
  const DiffSystem sys = system_of("vars: x\nparams: a\nsystem:\n x - a\n");
  try {
    (void)count(sys, DiffField::make(2, 3, 1));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::UnassignedParameter);
  }
}

TEST(Count, ParameterValuesFollowTheField) {
  // σ(x) = a x with a = g + 1: solutions are 0 and the (q-1)-th roots of a.
  const DiffSystem sys = system_of("vars: x\nparams: a=g+1\nsystem:\n s(x) - a*x\n");
  for (auto [p, t, m] : {std::tuple{2u, 6u, 2u}, {3u, 4u, 1u}, {5u, 2u, 1u}}) {
    const DiffField f = DiffField::make(p, t, m);
    const FElem a = f.add(f.generator(), f.one());
    std::uint64_t expected = 0;
    for (const FElem x : f.elements()) expected += f.frobenius(x) == f.mul(a, x);
    EXPECT_EQ(count(sys, f).count, expected) << f.describe();
  }
}

TEST(Count, AgreesWithMaterializedReduction) {
  std::mt19937_64 rng(41);
  for (auto [p, t, m] : {std::tuple{2u, 3u, 1u}, {2u, 4u, 2u}, {3u, 2u, 1u}, {3u, 3u, 1u}, {5u, 2u, 1u}, {7u, 1u, 0u}}) {
    const DiffField f = DiffField::make(p, t, m);
    for (int k = 0; k < 8; ++k) {
      DiffSystem sys;
      sys.arity = 2;
      const int n = 1 + static_cast<int>(rng() % 2);
      for (int i = 0; i < n; ++i) sys.polys.push_back(testing::random_diffpoly(rng, f, {}));
      ASSERT_EQ(count(sys, f).count, reduced_count(sys, f)) << f.describe();
    }
  }
}

TEST(Count, AddingAnEquationNeverIncreasesTheCount) {
  std::mt19937_64 rng(43);
  const DiffField f = DiffField::make(3, 2, 1);
  DiffSystem sys;
  sys.arity = 2;
  std::uint64_t prev = count(sys, f).count;
  for (int i = 0; i < 4; ++i) {
    sys.polys.push_back(testing::random_diffpoly(rng, f, {2, 1, 3}));
    const std::uint64_t now = count(sys, f).count;
    ASSERT_LE(now, prev);
    prev = now;
  }
}

TEST(CountSharded, IdenticalAcrossShardCounts) {
  const DiffSystem sys = xy_system({"x*s(x) - y^2"});
  const DiffField f = DiffField::make(3, 3, 1);
  CountOptions opts;
  opts.threads = 4;
  const CountReport base = count_sharded(sys, f, 1, opts);
  for (unsigned k : {2u, 3u, 8u, 64u}) {
    const CountReport r = count_sharded(sys, f, k, opts);
    EXPECT_EQ(r.count, base.count);
    EXPECT_EQ(r.evaluated, base.evaluated);
    EXPECT_EQ(r.smooth_witnesses, base.smooth_witnesses);
    EXPECT_EQ(r.jacobian_threshold, base.jacobian_threshold);
  }
}

TEST(CountSharded, MoreShardsThanElements) {
  const DiffSystem sys = system_of("vars: x\nsystem:\n s(x) - x\n");
  EXPECT_EQ(count_sharded(sys, DiffField::make(2, 2, 1), 9).count, 2u);
}

TEST(Witnesses, AreSmoothSolutionsInEnumerationOrder) {
  const DiffSystem sys = xy_system({"s(y) - x^2 - 1"});
  const DiffField f = DiffField::make(5, 2, 1);
  CountOptions opts;
  opts.max_witnesses = 5;
  const CountReport r = count(sys, f, opts);
  ASSERT_EQ(r.smooth_witnesses.size(), 5u);
  EXPECT_EQ(r.jacobian_threshold, 1u);
  for (std::size_t i = 0; i < r.smooth_witnesses.size(); ++i) {
    const auto& w = r.smooth_witnesses[i];
    EXPECT_EQ(sys.polys[0].evaluate(f, w), f.zero());
    EXPECT_GE(jacobian_rank(sys, w, f), 1u);
    if (i > 0) EXPECT_LT(r.smooth_witnesses[i - 1], w);
  }
}

TEST(Witnesses, ThresholdFromDeclaredDimension) {
  DiffSystem sys = xy_system({"s(y) - x^2 - 1"});
  sys.declared_trf_dim = 1;
  EXPECT_EQ(count(sys, DiffField::make(3, 2, 1)).jacobian_threshold, 1u);
  sys.declared_trf_dim = 0;
  EXPECT_EQ(count(sys, DiffField::make(3, 2, 1)).jacobian_threshold, 2u);
  EXPECT_TRUE(count(sys, DiffField::make(3, 2, 1)).smooth_witnesses.empty());
}

TEST(JacobianRank, Examples) {
  const DiffSystem sys = xy_system({"s(y) - x^2 - 1"});
  const DiffField f = DiffField::make(3, 2, 1);
  const FElem x = f.one();
  const FElem y = f.frobenius_inverse(f.add(f.mul(x, x), f.one()));
  const FElem pt[] = {x, y};
  EXPECT_EQ(jacobian_rank(sys, pt, f), 1u);

  DiffSystem empty;
  empty.arity = 2;
  EXPECT_EQ(jacobian_rank(empty, pt, f), 0u);

  DiffSystem line;
  line.arity = 1;
  line.polys.push_back(parse_expression("x", {"x"}));
  const FElem origin[] = {f.zero()};
  EXPECT_EQ(jacobian_rank(line, origin, f), 1u);
  const FElem off[] = {f.one()};
  try {
    (void)jacobian_rank(line, off, f);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotOnVariety);
  }
}

TEST(MatrixRank, SmallMatrices) {
  const DiffField f = DiffField::make(5, 1);
  auto e = [&](int v) { return f.from_int(v); };
  EXPECT_EQ(matrix_rank(f, {{e(1), e(2)}, {e(2), e(4)}}), 1u);
  EXPECT_EQ(matrix_rank(f, {{e(1), e(2)}, {e(3), e(4)}}), 2u);
  EXPECT_EQ(matrix_rank(f, {{e(0), e(0)}}), 0u);
  EXPECT_EQ(matrix_rank(f, {}), 0u);
}

TEST(Complexity, SumsTermCounts) {
  EXPECT_EQ(xy_system({"x*s(x) - y^2", "x + y + 1"}).complexity(), 5u);
}

}  // namespace
}  // namespace frobcount
