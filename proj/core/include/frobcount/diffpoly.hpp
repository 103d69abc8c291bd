#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "frobcount/bignum.hpp"
#include "frobcount/gfield.hpp"
#include "frobcount/nsigma.hpp"

namespace frobcount {

/// A coefficient: an exact rational or an element of a finite field.
using Coeff = std::variant<Rational, FElem>;

/// The coefficient ring of a difference polynomial together with its σ-action:
/// either ℚ with σ = id, or a finite difference field (𝔽_{p^t}, Frob_{p^m}).
class Domain {
 public:
  static Domain rationals() { return Domain(); }
  static Domain field(DiffField f) { return Domain(std::move(f)); }

  bool is_rational() const noexcept { return !field_.has_value(); }
  bool is_field() const noexcept { return field_.has_value(); }
  /// Throws DomainMismatch for ℚ.
  const DiffField& field() const;
  std::uint64_t characteristic() const noexcept { return field_ ? field_->p() : 0; }

  Coeff zero() const;
  Coeff one() const;
  Coeff from_int(const BigInt& v) const;
  bool is_zero(const Coeff& c) const;
  bool is_one(const Coeff& c) const;
  Coeff add(const Coeff& a, const Coeff& b) const;
  Coeff mul(const Coeff& a, const Coeff& b) const;
  Coeff neg(const Coeff& a) const;
  /// σ^k(c); identity on ℚ.
  Coeff sigma(const Coeff& c, std::uint64_t k = 1) const;
  /// σ^-k(c); identity on ℚ.
  Coeff sigma_inverse(const Coeff& c, std::uint64_t k = 1) const;
  /// c^(1/p^ell); identity on ℚ (where only ell = 0 occurs).
  Coeff p_root(const Coeff& c, std::uint64_t ell) const;

  /// Image of c in `target`. Rationals reduce mod p (BadReduction when the
  /// denominator vanishes); field coefficients require the same base field.
  FElem to_field(const Coeff& c, const DiffField& target) const;

  std::string render(const Coeff& c) const;

  friend bool operator==(const Domain& a, const Domain& b) noexcept { return a.field_ == b.field_; }

 private:
  Domain() = default;
  explicit Domain(DiffField f) : field_(std::move(f)) {}

  std::optional<DiffField> field_;
};

/// Product of x_i^(μ_i) over all variables, μ_i ∈ ℕ[σ]. Stored densely, one
/// exponent per variable; a zero exponent means the variable is absent.
class DiffMonomial {
 public:
  DiffMonomial() = default;
  explicit DiffMonomial(std::size_t arity) : exps_(arity) {}
  explicit DiffMonomial(std::vector<SigmaExp> exps) : exps_(std::move(exps)) {}

  std::size_t arity() const noexcept { return exps_.size(); }
  const SigmaExp& exp(std::size_t i) const { return exps_.at(i); }
  void set_exp(std::size_t i, SigmaExp e) { exps_.at(i) = std::move(e); }
  const std::vector<SigmaExp>& exps() const noexcept { return exps_; }

  /// Σ_i μ_i in ℕ[σ].
  SigmaExp total() const;
  bool is_one() const noexcept;
  /// Every exponent multiplied by σ^k.
  DiffMonomial shift(unsigned k) const;

  friend DiffMonomial operator*(const DiffMonomial& a, const DiffMonomial& b);
  friend bool operator==(const DiffMonomial&, const DiffMonomial&) = default;

 private:
  std::vector<SigmaExp> exps_;
};

/// Canonical term order: larger total exponent first, ties broken
/// lexicographically by variable with the larger exponent first.
struct GradedOrder {
  bool operator()(const DiffMonomial& a, const DiffMonomial& b) const;
};

/// A difference polynomial Σ_j a_j Π_i x_i^(μ_ij) over a Domain.
///
/// Terms are kept in a map keyed by monomial in GradedOrder with no zero
/// coefficients, so equal polynomials have identical term maps.
class DiffPoly {
 public:
  using TermMap = std::map<DiffMonomial, Coeff, GradedOrder>;

  DiffPoly(Domain domain, std::size_t arity) : domain_(std::move(domain)), arity_(arity) {}

  static DiffPoly constant(Domain domain, std::size_t arity, const Coeff& c);
  static DiffPoly from_int(Domain domain, std::size_t arity, const BigInt& v);
  /// σ^k(x_i).
  static DiffPoly variable(Domain domain, std::size_t arity, std::size_t i, unsigned k = 0);
  static DiffPoly monomial(Domain domain, DiffMonomial m, const Coeff& c);

  std::size_t arity() const noexcept { return arity_; }
  const Domain& domain() const noexcept { return domain_; }
  const TermMap& terms() const noexcept { return terms_; }
  std::size_t size() const noexcept { return terms_.size(); }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  /// Highest power of σ appearing in any exponent.
  std::size_t sigma_order() const noexcept;

  /// Adds c·m, merging with an existing term.
  void add_term(const DiffMonomial& m, const Coeff& c);

  DiffPoly& operator+=(const DiffPoly& other);
  DiffPoly& operator-=(const DiffPoly& other);
  friend DiffPoly operator+(DiffPoly a, const DiffPoly& b) { return a += b; }
  friend DiffPoly operator-(DiffPoly a, const DiffPoly& b) { return a -= b; }
  friend DiffPoly operator*(const DiffPoly& a, const DiffPoly& b);
  DiffPoly operator-() const;
  DiffPoly pow(unsigned e) const;

  /// σ^k applied to the polynomial: exponents times σ^k, coefficients σ^k.
  DiffPoly sigma_shift(unsigned k = 1) const;

  /// ∂/∂x_i with every σ^k(x_j), k >= 1, treated as a constant.
  DiffPoly partial_derivative(std::size_t i) const;

  /// Maximum over terms of Σ_i μ_i. Throws ZeroPolynomial.
  SigmaExp total_degree() const;

  /// Value at `point` with σ read as the Frobenius of `field`. The coefficient
  /// domain must be ℚ or share the base field. Throws DomainMismatch.
  FElem evaluate(const DiffField& field, std::span<const FElem> point) const;

  /// The same polynomial with coefficients mapped into `field`.
  DiffPoly specialize(const DiffField& field) const;

  /// Canonical text such as "x*s(x) - y^2". Default names are x1..xn.
  std::string to_string(std::span<const std::string> names) const;
  std::string to_string() const;

  friend bool operator==(const DiffPoly& a, const DiffPoly& b);

 private:
  void check_compatible(const DiffPoly& other) const;

  Domain domain_;
  std::size_t arity_ = 0;
  TermMap terms_;
};

/// Names x1..xn (or x when n = 1).
std::vector<std::string> default_variable_names(std::size_t arity);

/// Textual factor list for one monomial, e.g. "x*s(x)^2"; empty for 1.
std::string render_monomial(const DiffMonomial& m, std::span<const std::string> names);

}  // namespace frobcount
