#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "frobcount/bignum.hpp"
#include "frobcount/counting.hpp"
#include "frobcount/diffpoly.hpp"

namespace frobcount {

enum class FormulaId {
  /// p^(dt) - q^c p^(t(d-1/2)) <= N <= q^c p^(dt): the point-existence branch.
  TheoremB,
  /// N <= q^c p^(t(d-1)): the branch where every point lies on a lower-dimensional piece.
  TheoremBBranch2,
  /// N <= q^c p^(dt).
  Trivial,
  /// |N - q^r| <= (l-1)(l-2) q^(r-1/2) + 5 l^(13/3) q^(r-1).
  CafureMatera,
};

std::string_view to_string(FormulaId id);

struct BoundInputs {
  std::optional<unsigned> d;
  std::optional<double> c;
  std::uint64_t p = 0;
  unsigned t = 0;
  BigInt q = 0;
  std::optional<unsigned> r;
  std::optional<std::uint64_t> ell;
};

/// lower <= count <= upper, with -inf/+inf for one-sided bounds.
struct BoundVerdict {
  double lower = 0;
  double upper = 0;
  BigInt count = 0;
  bool satisfied = false;
  /// False when the formula's hypothesis does not hold (Cafure–Matera only).
  bool applicable = true;
  /// The decision was settled in exact integer arithmetic.
  bool exact = false;
  FormulaId formula = FormulaId::Trivial;
  BoundInputs inputs;
};

struct DegreeBound {
  /// deg M_q(P_i) per polynomial; a polynomial whose reduction vanishes
  /// identically imposes no condition and contributes 1.
  std::vector<BigInt> degrees;
  BigInt product = 1;
  /// Smallest c >= 0 with product <= q^c.
  unsigned c = 0;
};

/// Bézout-style bound Π_i deg M_q(P_i). Throws ZeroPolynomial.
DegreeBound degree_bound(std::span<const DiffPoly> polys, const BigInt& q);
/// Parameters are treated as constants: only the unknowns contribute degree.
DegreeBound degree_bound(const DiffSystem& sys, const BigInt& q);

BigInt bezout_degree(const BigInt& a, const BigInt& b);

struct CafureMateraBound {
  bool applicable = false;
  double margin = 0;
};

/// Applicable iff q > 2(r+1)l².
CafureMateraBound cafure_matera(unsigned r, std::uint64_t ell, const BigInt& q);
BoundVerdict cafure_matera_verdict(const BigInt& count, unsigned r, std::uint64_t ell,
                                   const BigInt& q);

BoundVerdict theorem_b_verdict(const BigInt& count, unsigned d, double c, std::uint64_t p,
                               unsigned t, const BigInt& q);
BoundVerdict theorem_b_branch2_verdict(const BigInt& count, unsigned d, double c,
                                       std::uint64_t p, unsigned t, const BigInt& q);
BoundVerdict trivial_verdict(const BigInt& count, unsigned d, double c, std::uint64_t p,
                             unsigned t, const BigInt& q);

/// TheoremB, TheoremBBranch2 and Trivial, in that order.
std::vector<BoundVerdict> theorem_b_verdicts(const BigInt& count, unsigned d, double c,
                                             std::uint64_t p, unsigned t, const BigInt& q);

}  // namespace frobcount
