#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "frobcount/bounds.hpp"
#include "frobcount/dsl.hpp"
#include "frobcount/error.hpp"
#include "frobcount/reduction.hpp"
#include "support/corpus.hpp"
#include "support/printers.hpp"

namespace frobcount {
namespace {

std::vector<DiffPoly> polys(std::initializer_list<const char*> texts) {
  std::vector<DiffPoly> out;
  for (const char* t : texts) out.push_back(parse_expression(t, {"x", "y"}));
  return out;
}

TEST(DegreeBound, Examples) {
  for (int q : {2, 9, 125}) {
    const DegreeBound b = degree_bound(polys({"s(x) - x"}), q);
    EXPECT_EQ(b.product, q);
    EXPECT_EQ(b.c, 1u);
  }
  for (int p : {3, 5, 7}) {
    const DegreeBound b = degree_bound(polys({"x*s(x) - y^2"}), p);
    EXPECT_EQ(b.product, p + 1);
    EXPECT_EQ(b.c, 2u);
  }
  const DegreeBound lin = degree_bound(polys({"x - 1", "y - 1"}), 17);
  EXPECT_EQ(lin.product, 1);
  EXPECT_EQ(lin.c, 0u);
}

TEST(DegreeBound, Errors) {
  try {
    (void)degree_bound(std::vector<DiffPoly>{DiffPoly(Domain::rationals(), 2)}, 4);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroPolynomial);
  }
  EXPECT_THROW((void)degree_bound(polys({"x"}), 1), Error);
}

TEST(DegreeBound, ParametersDoNotCount) {
  const DiffSystem sys = parse_system("vars: x\nparams: a=g\nsystem:\n s(x) - a^5*x\n").to_system();
  EXPECT_EQ(degree_bound(sys, 4).product, 4);
}

TEST(DegreeBound, ProductOfEvaluatedTotalDegrees) {
  std::mt19937_64 rng(53);
  const DiffField f = DiffField::make(3, 2, 1);
  for (int k = 0; k < 100; ++k) {
    std::vector<DiffPoly> sys{testing::random_nonconstant(rng, f, {}), testing::random_nonconstant(rng, f, {})};
    // Above every coefficient of every exponent the ℕ[σ] order and evaluation agree.
    const std::uint64_t q = 243;
    BigInt expected = 1;
    for (const auto& p : sys) expected *= p.total_degree().eval_at(q);
    ASSERT_EQ(degree_bound(sys, q).product, expected);
  }
}

TEST(Bezout, Examples) {
  EXPECT_EQ(bezout_degree(3, 4), 12);
  EXPECT_EQ(bezout_degree(1, 99), 99);
  EXPECT_EQ(bezout_degree(0, 99), 0);
}

TEST(CafureMatera, SmallDegreesDropTheFirstTerm) {
  for (std::uint64_t ell : {1u, 2u}) {
    const CafureMateraBound b = cafure_matera(2, ell, 1000);
    EXPECT_NEAR(b.margin, 5 * std::pow(static_cast<double>(ell), 13.0 / 3.0) * 1000, 1e-6);
  }
}

TEST(CafureMatera, PlaneCubicAt101) {
  const CafureMateraBound b = cafure_matera(1, 3, 101);
  EXPECT_TRUE(b.applicable);
  const double expected = 2 * std::sqrt(101.0) + 5 * 81 * std::cbrt(3.0);
  EXPECT_NEAR(b.margin, expected, 1e-9 * expected);
}

TEST(CafureMatera, ThresholdIsStrict) {
  EXPECT_FALSE(cafure_matera(1, 3, 36).applicable);
  EXPECT_TRUE(cafure_matera(1, 3, 37).applicable);
  EXPECT_FALSE(cafure_matera(2, 2, 24).applicable);
}

TEST(CafureMatera, Verdict) {
  const BoundVerdict v = cafure_matera_verdict(100, 1, 3, 101);
  EXPECT_TRUE(v.satisfied);
  EXPECT_EQ(v.formula, FormulaId::CafureMatera);
  EXPECT_FALSE(cafure_matera_verdict(10000, 1, 3, 101).satisfied);
}

TEST(TheoremB, FullCountSatisfiesAtZeroC) {
  for (std::uint64_t p : {2, 3, 5}) {
    for (unsigned t = 2; t <= 6; ++t) {
      const std::uint64_t pt = static_cast<std::uint64_t>(std::pow(p, t));
      const BigInt q = p;
      const BoundVerdict v = theorem_b_verdict(pt, 1, 0, p, t, q);
      EXPECT_TRUE(v.satisfied) << p << "^" << t;
      EXPECT_DOUBLE_EQ(v.upper, static_cast<double>(pt));
      EXPECT_DOUBLE_EQ(v.lower, pt - std::sqrt(static_cast<double>(pt)));
    }
  }
}

TEST(TheoremB, EmptyFiberViolatesLowerBound) {
  const BoundVerdict v = theorem_b_verdict(0, 1, 1, 2, 8, 2);
  EXPECT_FALSE(v.satisfied);
  EXPECT_GT(v.lower, 0);
  const BoundVerdict branch2 = theorem_b_branch2_verdict(0, 1, 1, 2, 8, 2);
  EXPECT_TRUE(branch2.satisfied);
  EXPECT_DOUBLE_EQ(branch2.upper, 2.0);
}

TEST(TheoremB, AffineSpaceUnderTrivialBound) {
  for (unsigned d = 1; d <= 3; ++d) {
    const std::uint64_t count = static_cast<std::uint64_t>(std::pow(3, 2 * d));
    const BoundVerdict v = trivial_verdict(count, d, 0, 3, 2, 3);
    EXPECT_TRUE(v.satisfied);
    EXPECT_TRUE(v.exact);
  }
}

TEST(TheoremB, ExactComparisonAtTheEdges) {
  // p=2, t=2, d=1, c=0: lower = 4 - 2 = 2, upper = 4.
  EXPECT_TRUE(theorem_b_verdict(2, 1, 0, 2, 2, 2).satisfied);
  EXPECT_TRUE(theorem_b_verdict(2, 1, 0, 2, 2, 2).exact);
  EXPECT_FALSE(theorem_b_verdict(1, 1, 0, 2, 2, 2).satisfied);
  EXPECT_FALSE(theorem_b_verdict(5, 1, 0, 2, 2, 2).satisfied);
  // Odd t: lower = 8 - 2*sqrt(2) ~ 5.17 with c = 0, so 5 fails and 6 holds.
  EXPECT_FALSE(theorem_b_verdict(5, 1, 0, 2, 3, 2).satisfied);
  EXPECT_TRUE(theorem_b_verdict(5, 1, 0, 2, 3, 2).exact);
  EXPECT_TRUE(theorem_b_verdict(6, 1, 0, 2, 3, 2).satisfied);
}

TEST(TheoremB, VerdictsInOrder) {
  const auto vs = theorem_b_verdicts(9, 1, 1, 3, 2, 3);
  ASSERT_EQ(vs.size(), 3u);
  EXPECT_EQ(vs[0].formula, FormulaId::TheoremB);
  EXPECT_EQ(vs[1].formula, FormulaId::TheoremBBranch2);
  EXPECT_EQ(vs[2].formula, FormulaId::Trivial);
  EXPECT_EQ(to_string(FormulaId::TheoremBBranch2), "TheoremBBranch2");
}

TEST(TheoremB, RejectsZeroDimension) { EXPECT_THROW((void)theorem_b_verdict(1, 0, 0, 2, 2, 2), Error); }

TEST(TheoremB, GenerousCIsAlwaysSatisfied) {
  std::mt19937_64 rng(59);
  for (int k = 0; k < 300; ++k) {
    const std::uint64_t p = std::vector<std::uint64_t>{2, 3, 5}[rng() % 3];
    const unsigned t = 2 + static_cast<unsigned>(rng() % 4);
    const unsigned d = 1 + static_cast<unsigned>(rng() % 2);
    const BigInt q = p;
    const std::uint64_t full = static_cast<std::uint64_t>(std::pow(p, d * t));
    const std::uint64_t count = full - rng() % (full / 2);
    const double c = std::ceil(t * (d + 0.5)) + 1;
    const BoundVerdict v = theorem_b_verdict(count, d, c, p, t, q);
    ASSERT_TRUE(v.satisfied) << count << " " << d << " " << c;
  }
}

}  // namespace
}  // namespace frobcount
