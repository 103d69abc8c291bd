#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frobcount/diffpoly.hpp"

namespace frobcount {

/// Ordinary multivariate polynomial with arbitrary-precision exponents. This
/// is what a difference polynomial becomes once σ is read as x ↦ x^q.
class AlgPoly {
 public:
  using Exponents = std::vector<BigInt>;

  struct Order {
    bool operator()(const Exponents& a, const Exponents& b) const;
  };
  using TermMap = std::map<Exponents, Coeff, Order>;

  AlgPoly(Domain domain, std::size_t arity) : domain_(std::move(domain)), arity_(arity) {}

  std::size_t arity() const noexcept { return arity_; }
  const Domain& domain() const noexcept { return domain_; }
  const TermMap& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  void add_term(const Exponents& e, const Coeff& c);

  friend AlgPoly operator+(const AlgPoly& a, const AlgPoly& b);
  friend AlgPoly operator*(const AlgPoly& a, const AlgPoly& b);
  friend bool operator==(const AlgPoly& a, const AlgPoly& b);

  /// Total degree. Throws ZeroPolynomial.
  BigInt degree() const;

  /// Formal derivative in x_i.
  AlgPoly partial_derivative(std::size_t i) const;

  /// Direct evaluation with big-exponent powers.
  FElem evaluate(const DiffField& field, std::span<const FElem> point) const;

  std::string to_string(std::span<const std::string> names) const;
  std::string to_string() const;

  /// Evaluation bound to one field: exponents folded mod p^t - 1 once.
  class Evaluator {
   public:
    Evaluator(const AlgPoly& poly, const DiffField& field);
    FElem operator()(std::span<const FElem> point) const;

   private:
    struct Term {
      FElem coeff;
      std::vector<std::uint64_t> exps;  // 0 stays 0; positive folded into [1, p^t - 1]
    };
    DiffField field_;
    std::vector<Term> terms_;
  };

 private:
  Domain domain_;
  std::size_t arity_;
  TermMap terms_;
};

/// M_q(P): every exponent μ replaced by its value at σ = q.
/// Requires q >= 2 and, in characteristic p > 0, q a power of p.
AlgPoly frobenius_reduce(const DiffPoly& p, const BigInt& q);

/// Largest m with every exponent of p divisible by σ^m.
/// Throws ZeroPolynomial or ConstantPolynomial.
unsigned sigma_unshift_depth(const DiffPoly& p);

struct TwistResult {
  /// The reduction Q, a polynomial in the twist τ of σ. Over a finite field its
  /// domain is the twisted field, so evaluating it reads τ correctly.
  DiffPoly reduced;
  /// Frobenius twist amount: τ ∘ Frob_p^ell = σ.
  unsigned ell = 0;
  /// The σ^-m shift applied before twisting.
  unsigned m_shift = 0;
  /// A variable with ∂Q/∂x_i formally nonzero; always present for full reductions.
  std::optional<std::size_t> witness_var;
};

/// Twisting reduction. With full = true both the σ-shift m and the twist ell
/// are taken maximal, which guarantees a nonzero partial derivative.
/// Throws ConstantPolynomial.
TwistResult twist_reduce(const DiffPoly& p, bool full = true);

/// The same 𝔽_{p^t} with Frobenius exponent (m - ell) mod t.
DiffField twisted_field(const DiffField& field, std::int64_t ell);

struct SystemTwist {
  std::vector<TwistResult> results;
  /// Polynomials of the system were twisted by different amounts.
  bool mixed_ell = false;
};

/// Reduces each polynomial on its own and flags differing ell.
SystemTwist twist_reduce_system(std::span<const DiffPoly> polys, bool full = true);

}  // namespace frobcount
