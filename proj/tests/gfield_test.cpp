#include <numeric>
#include <set>

#include <gtest/gtest.h>

#include "frobcount/error.hpp"
#include "frobcount/gfield.hpp"
#include "support/naive_field.hpp"

namespace frobcount {
namespace {

using testing::ipow;
using testing::NaiveField;

struct Shape {
  std::uint64_t p;
  unsigned t;
};

// Fields up to 2^16 elements, covering table and tableless paths.
std::vector<Shape> small_shapes() {
  std::vector<Shape> out;
  for (std::uint64_t p : {2, 3, 5, 7, 13, 251}) {
    for (unsigned t = 1; ipow(p, t) <= 65536; ++t) out.push_back({p, t});
  }
  return out;
}

TEST(MakeField, PrimeField) {
  const DiffField f = DiffField::make(2, 1, 0);
  EXPECT_EQ(f.order(), 2u);
  EXPECT_EQ(f.m(), 0u);
  EXPECT_EQ(f.frobenius(f.one()), f.one());
}

TEST(MakeField, F4HasTheOnlyIrreducibleQuadratic) {
  const DiffField f = DiffField::make(2, 2, 1);
  EXPECT_EQ(f.modulus(), (std::vector<std::uint64_t>{1, 1, 1}));
  EXPECT_EQ(f.q(), 2u);
}

TEST(MakeField, Errors) {
  auto kind_of = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.kind();
    }
    return ErrorKind::InvalidArgument;
  };
  EXPECT_EQ(kind_of([] { DiffField::make(4, 1, 0); }), ErrorKind::NotPrime);
  EXPECT_EQ(kind_of([] { DiffField::make(2, 41, 0); }), ErrorKind::TooLarge);
  EXPECT_EQ(kind_of([] { DiffField::make(1'000'003, 3, 0); }), ErrorKind::TooLarge);
}

TEST(MakeField, MReducedModT) {
  EXPECT_EQ(DiffField::make(3, 4, 6).m(), 2u);
  EXPECT_EQ(DiffField::make(3, 4, 4).m(), 0u);
}

TEST(MakeField, DeterministicPerSeed) {
  for (std::uint64_t seed : {0, 1, 99}) {
    EXPECT_EQ(DiffField::make(3, 5, 1, seed).modulus(), DiffField::make(3, 5, 1, seed).modulus());
  }
}

TEST(MakeField, ModulusIsIrreducible) {
  for (const auto& s : small_shapes()) {
    if (s.t < 2 || ipow(s.p, s.t) > 4096) continue;
    for (std::uint64_t seed : {0, 5}) {
      const DiffField f = DiffField::make(s.p, s.t, 0, seed);
      EXPECT_TRUE(testing::naive_irreducible(s.p, f.modulus())) << f.describe();
    }
  }
}

TEST(FieldArithmetic, F4Examples) {
  const DiffField f = DiffField::make(2, 2, 1);
  const FElem a = f.generator();
  EXPECT_EQ(f.mul(a, a), f.add(a, f.one()));
  EXPECT_EQ(f.pow(a, std::uint64_t{0}), f.one());
  EXPECT_EQ(f.pow(f.zero(), std::uint64_t{0}), f.one());
  EXPECT_EQ(f.inv(f.one()), f.one());
  EXPECT_EQ(f.frobenius(a), f.add(a, f.one()));
  EXPECT_EQ(f.frobenius(a, 0), a);
}

TEST(FieldArithmetic, InverseOfZeroThrows) {
  const DiffField f = DiffField::make(5, 2);
  EXPECT_THROW((void)f.inv(f.zero()), Error);
}

TEST(FieldArithmetic, MatchesSchoolbookOracle) {
  for (const auto& s : small_shapes()) {
    const DiffField f = DiffField::make(s.p, s.t, 1);
    const NaiveField n(f);
    const std::uint64_t order = f.order();
    const std::uint64_t step = std::max<std::uint64_t>(1, order / 97);
    for (std::uint64_t a = 0; a < order; a += step) {
      for (std::uint64_t b = 0; b < order; b += step + 3) {
        const auto va = n.decode(a);
        const auto vb = n.decode(b);
        ASSERT_EQ(f.add(FElem{a}, FElem{b}).code, n.encode(n.add(va, vb))) << f.describe();
        ASSERT_EQ(f.mul(FElem{a}, FElem{b}).code, n.encode(n.mul(va, vb))) << f.describe();
      }
      ASSERT_EQ(f.pow(FElem{a}, std::uint64_t{1234567}).code, n.encode(n.pow(n.decode(a), 1234567)));
      if (a != 0) ASSERT_EQ(f.mul(FElem{a}, f.inv(FElem{a})), f.one());
    }
  }
}

TEST(FieldArithmetic, BigExponentPow) {
  const DiffField f = DiffField::make(3, 4);
  const NaiveField n(f);
  const BigInt e = boost::multiprecision::pow(BigInt(3), 40) + 5;
  const std::uint64_t folded = static_cast<std::uint64_t>(e % (f.order() - 1));
  for (std::uint64_t a = 1; a < f.order(); a += 7) {
    EXPECT_EQ(f.pow(FElem{a}, e).code, n.encode(n.pow(n.decode(a), folded)));
  }
  EXPECT_EQ(f.pow(f.zero(), e), f.zero());
}

TEST(FieldArithmetic, LargeFieldWithoutTables) {
  const DiffField f = DiffField::make(2, 24, 5);
  EXPECT_FALSE(f.has_tables());
  const NaiveField n(f);
  for (std::uint64_t a : {3ull, 77777ull, 12345678ull}) {
    const FElem x{a};
    EXPECT_EQ(f.mul(x, f.inv(x)), f.one());
    EXPECT_EQ(f.frobenius(x).code, n.encode(n.frob(n.decode(a), 5)));
  }
}

TEST(Frobenius, PrimeFieldIsFixed) {
  const DiffField f = DiffField::make(7, 3, 1);
  for (std::int64_t v = 0; v < 7; ++v) EXPECT_EQ(f.frobenius(f.from_int(v)), f.from_int(v));
}

TEST(Frobenius, IsAFieldAutomorphism) {
  for (const auto& s : small_shapes()) {
    for (unsigned m = 0; m < s.t; ++m) {
      const DiffField f = DiffField::make(s.p, s.t, m);
      const NaiveField n(f);
      const std::uint64_t order = f.order();
      const std::uint64_t step = std::max<std::uint64_t>(1, order / 61);
      std::set<std::uint64_t> image;
      for (std::uint64_t a = 0; a < order; ++a) {
        const FElem fa = f.frobenius(FElem{a});
        image.insert(fa.code);
        if (a % step != 0) continue;
        ASSERT_EQ(fa.code, n.encode(n.frob(n.decode(a), m))) << f.describe();
        const FElem b{(a * 31 + 7) % order};
        ASSERT_EQ(f.frobenius(f.mul(FElem{a}, b)), f.mul(fa, f.frobenius(b)));
        ASSERT_EQ(f.frobenius(f.add(FElem{a}, b)), f.add(fa, f.frobenius(b)));
        ASSERT_EQ(f.frobenius_inverse(fa), FElem{a});
      }
      ASSERT_EQ(image.size(), order) << f.describe();
    }
  }
}

TEST(Frobenius, CyclesAfterTOverGcd) {
  for (const auto& s : small_shapes()) {
    for (unsigned m = 1; m < s.t; ++m) {
      const DiffField f = DiffField::make(s.p, s.t, m);
      const unsigned period = s.t / std::gcd(s.t, m);
      for (std::uint64_t a = 0; a < f.order(); a += 1 + f.order() / 50) {
        ASSERT_EQ(f.frobenius(FElem{a}, period), FElem{a});
        if (period > 1 && a == f.generator().code) ASSERT_NE(f.frobenius(FElem{a}, 1), FElem{a});
      }
    }
  }
}

TEST(Frobenius, LinearMatrixAgreesWithTables) {
  const DiffField f = DiffField::make(3, 6, 2);
  for (std::uint64_t a = 0; a < f.order(); a += 11) {
    for (unsigned j = 0; j < 6; ++j) ASSERT_EQ(f.frobenius_linear(FElem{a}, j), f.frobenius_p(FElem{a}, j));
  }
}

TEST(FixedField, Examples) {
  EXPECT_EQ(DiffField::make(2, 4, 2).fixed_field_size(), 4u);
  EXPECT_EQ(DiffField::make(5, 3, 0).fixed_field_size(), 125u);
  EXPECT_EQ(DiffField::make(3, 3, 1).fixed_field_size(), 3u);
}

TEST(FixedField, MatchesExhaustiveCount) {
  for (const auto& s : small_shapes()) {
    for (unsigned m = 0; m < s.t; ++m) {
      const DiffField f = DiffField::make(s.p, s.t, m);
      std::uint64_t fixed = 0;
      for (std::uint64_t a = 0; a < f.order(); ++a) fixed += f.frobenius(FElem{a}) == FElem{a};
      ASSERT_EQ(fixed, f.fixed_field_size()) << f.describe();
    }
  }
}

TEST(Enumerate, Examples) {
  const auto f2 = DiffField::make(2, 1).elements();
  ASSERT_EQ(f2.size(), 2u);
  EXPECT_EQ(f2[0], FElem{0});
  EXPECT_EQ(f2[1], FElem{1});
  const auto f4 = DiffField::make(2, 2).elements();
  EXPECT_EQ(std::set<FElem>(f4.begin(), f4.end()).size(), 4u);
  const auto shards = DiffField::make(3, 2).shards(2);
  ASSERT_EQ(shards.size(), 2u);
  EXPECT_EQ(shards[0].size(), 5u);
  EXPECT_EQ(shards[1].size(), 4u);
}

TEST(Enumerate, ShardsCoverInOrder) {
  for (unsigned k : {1u, 3u, 8u, 40u}) {
    const auto ranges = split_range(27, k);
    std::uint64_t next = 0;
    for (const auto& r : ranges) {
      EXPECT_EQ(r.begin, next);
      next = r.end;
    }
    EXPECT_EQ(next, 27u);
  }
}

TEST(Render, PolynomialInG) {
  const DiffField f = DiffField::make(3, 3);
  EXPECT_EQ(f.render(f.zero()), "0");
  EXPECT_EQ(f.render(f.one()), "1");
  EXPECT_EQ(f.render(f.generator()), "g");
  const std::uint64_t c[] = {1, 2, 1};
  EXPECT_EQ(f.render(f.from_coords(c)), "g^2+2g+1");
  EXPECT_EQ(DiffField::make(7, 1).render(FElem{5}), "5");
}

TEST(TwistedFamily, SharesRepresentation) {
  const DiffField f = DiffField::make(3, 4, 2);
  const DiffField g = f.with_frobenius_exponent(1);
  EXPECT_TRUE(f.same_base(g));
  EXPECT_EQ(g.m(), 1u);
  EXPECT_EQ(f.with_frobenius_exponent(-1).m(), 3u);
  EXPECT_FALSE(f == g);
}

}  // namespace
}  // namespace frobcount
