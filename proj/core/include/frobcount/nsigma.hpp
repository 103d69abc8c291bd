#pragma once

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <string>
#include <vector>

#include "frobcount/bignum.hpp"

namespace frobcount {

/// Largest σ-degree accepted from user input.
inline constexpr unsigned kMaxSigmaDegree = 16;

/// An element c_0 + c_1 σ + ... + c_k σ^k of the semiring ℕ[σ].
///
/// This is the exponent of a single variable in a difference monomial:
/// x^(c_0 + c_1 σ) stands for x^c_0 · σ(x)^c_1. Coefficients are stored low
/// index first with trailing zeros trimmed, so the zero element has no
/// coefficients at all.
///
/// The order is lexicographic from the highest power of σ down, which makes
/// σ larger than every natural number and agrees with comparing the values at
/// σ = q for every q exceeding all coefficients involved.
class SigmaExp {
 public:
  SigmaExp() = default;
  explicit SigmaExp(std::uint64_t constant);
  SigmaExp(std::initializer_list<std::uint64_t> coeffs);
  explicit SigmaExp(std::vector<std::uint64_t> coeffs);

  /// coeff · σ^k.
  static SigmaExp sigma_power(unsigned k, std::uint64_t coeff = 1);

  const std::vector<std::uint64_t>& coeffs() const noexcept { return coeffs_; }
  std::uint64_t coeff(std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : 0;
  }
  std::uint64_t constant_part() const noexcept { return coeff(0); }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  /// Highest power of σ with a nonzero coefficient; 0 for constants and zero.
  std::size_t degree() const noexcept { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  /// Lowest power of σ with a nonzero coefficient. Undefined (returns 0) for zero.
  std::size_t valuation() const noexcept;
  std::uint64_t max_coeff() const noexcept;

  /// Exact value Σ c_i q^i.
  BigInt eval_at(const BigInt& q) const;
  BigInt eval_at(std::uint64_t q) const { return eval_at(BigInt(q)); }

  /// e / n when n divides every coefficient.
  std::optional<SigmaExp> try_divide(std::uint64_t n) const;
  /// As try_divide, but throws NotDivisible.
  SigmaExp divide_exact(std::uint64_t n) const;

  /// Image under σ ↦ scale·σ: coefficient c_i becomes c_i · scale^i.
  SigmaExp substitute_sigma(std::uint64_t scale) const;

  /// Multiply by σ^k.
  SigmaExp shift(unsigned k) const;
  /// Divide by σ^k; requires valuation() >= k (or zero).
  SigmaExp unshift(unsigned k) const;

  /// Render as "2s^2+3"; s stands for σ.
  std::string to_string() const;

  SigmaExp& operator+=(const SigmaExp& other);
  friend SigmaExp operator+(SigmaExp a, const SigmaExp& b) { return a += b; }
  /// Throws ExponentOverflow if a coefficient leaves the 64-bit range.
  friend SigmaExp operator*(const SigmaExp& a, const SigmaExp& b);

  friend bool operator==(const SigmaExp&, const SigmaExp&) = default;
  friend std::strong_ordering operator<=>(const SigmaExp& a, const SigmaExp& b);

 private:
  void trim();

  std::vector<std::uint64_t> coeffs_;
};

inline std::strong_ordering compare(const SigmaExp& a, const SigmaExp& b) { return a <=> b; }

}  // namespace frobcount
