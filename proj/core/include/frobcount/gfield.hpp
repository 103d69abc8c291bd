#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "frobcount/bignum.hpp"

namespace frobcount {

/// Element of a finite field 𝔽_{p^t}.
///
/// The code is the coordinate vector (c_0, ..., c_{t-1}) with respect to the
/// polynomial basis 1, g, ..., g^{t-1} packed as Σ c_i p^i. Codes therefore
/// enumerate the field lexicographically, most significant coordinate last.
struct FElem {
  std::uint64_t code = 0;

  friend auto operator<=>(const FElem&, const FElem&) = default;
};

/// Half-open range of element codes.
struct CodeRange {
  std::uint64_t begin = 0;
  std::uint64_t end = 0;

  std::uint64_t size() const noexcept { return end - begin; }
  friend bool operator==(const CodeRange&, const CodeRange&) = default;
};

/// Split [0, total) into `shards` contiguous ranges whose sizes differ by at
/// most one; the larger ranges come first. Shards may be empty.
std::vector<CodeRange> split_range(std::uint64_t total, unsigned shards);

bool is_prime(std::uint64_t n);

inline constexpr unsigned kMaxExtensionDegree = 24;
inline constexpr std::uint64_t kMaxFieldOrder = std::uint64_t{1} << 40;
/// Fields up to this order get log/antilog/Zech tables.
inline constexpr std::uint64_t kTableLimit = std::uint64_t{1} << 20;

namespace detail {
class FieldCore;
}

/// The finite difference field (𝔽_{p^t}, Frob_{p^m}).
///
/// The underlying field (prime, degree, modulus and lookup tables) is shared
/// and immutable; a DiffField is a cheap handle to it plus the Frobenius
/// exponent m, kept reduced mod t. Twisting changes only m, so twisted fields
/// share their representation with the original and element codes carry over.
class DiffField {
 public:
  /// Throws NotPrime if p is not prime, TooLarge if t is outside [1, 24] or
  /// p^t exceeds 2^40. The modulus is the first monic irreducible polynomial
  /// of degree t met by a scan over the lower coefficients; the scan starts at
  /// 0 for seed 0 and at a seed-derived offset otherwise.
  static DiffField make(std::uint64_t p, unsigned t, std::uint64_t m = 0, std::uint64_t seed = 0);

  std::uint64_t p() const noexcept;
  unsigned t() const noexcept;
  /// Frobenius exponent, reduced mod t.
  unsigned m() const noexcept { return m_; }
  /// p^t.
  std::uint64_t order() const noexcept;
  /// q = p^m; 1 when m = 0.
  std::uint64_t q() const noexcept;
  /// A q' >= 2 with σ = Frob_{q'} on this field: p^m for m >= 1, p^t for m = 0.
  std::uint64_t reduction_q() const noexcept;
  std::uint64_t seed() const noexcept;
  /// Monic modulus, low coefficient first (size t + 1).
  const std::vector<std::uint64_t>& modulus() const noexcept;
  bool has_tables() const noexcept;

  /// Same underlying field with σ = Frob_{p^m'}, m' = m mod t (m may be negative).
  DiffField with_frobenius_exponent(std::int64_t m) const;
  /// True when both handles use the same representation of 𝔽_{p^t}.
  bool same_base(const DiffField& other) const noexcept { return core_ == other.core_; }
  friend bool operator==(const DiffField& a, const DiffField& b) noexcept {
    return a.core_ == b.core_ && a.m_ == b.m_;
  }

  FElem zero() const noexcept { return FElem{0}; }
  FElem one() const noexcept { return FElem{1}; }
  /// Class of x modulo the defining polynomial; rendered as "g".
  FElem generator() const noexcept;
  FElem from_int(std::int64_t v) const noexcept;
  FElem from_int(const BigInt& v) const;
  FElem from_coords(std::span<const std::uint64_t> coords) const;
  std::vector<std::uint64_t> coords(FElem x) const;

  FElem add(FElem a, FElem b) const noexcept;
  FElem sub(FElem a, FElem b) const noexcept { return add(a, neg(b)); }
  FElem neg(FElem a) const noexcept;
  FElem mul(FElem a, FElem b) const noexcept;
  /// Throws DivisionByZero.
  FElem inv(FElem a) const;
  FElem pow(FElem a, std::uint64_t e) const noexcept;
  FElem pow(FElem a, const BigInt& e) const;

  /// σ^k(x) = x^(q^k).
  FElem frobenius(FElem x, std::uint64_t k = 1) const noexcept;
  /// σ^-k(x).
  FElem frobenius_inverse(FElem x, std::uint64_t k = 1) const noexcept;
  /// x^(p^j).
  FElem frobenius_p(FElem x, std::uint64_t j) const noexcept;
  /// The p^j-th root of x.
  FElem frobenius_p_inverse(FElem x, std::uint64_t j) const noexcept;
  /// x^(p^j) through the precomputed 𝔽_p-linear matrix, never the tables.
  FElem frobenius_linear(FElem x, std::uint64_t j) const;

  /// Size of the fixed field {x : σ(x) = x}: p^gcd(t, m), or p^t when m = 0.
  std::uint64_t fixed_field_size() const noexcept;

  /// Contiguous code ranges for enumerating the field in k shards.
  std::vector<CodeRange> shards(unsigned k) const { return split_range(order(), k); }
  /// All elements in enumeration order. Throws TooLarge above 2^26 elements.
  std::vector<FElem> elements() const;

  /// Polynomial in the generator, e.g. "g^2+1"; plain integers when t = 1.
  std::string render(FElem x) const;

  /// "(p,t,m)".
  std::string describe() const;

 private:
  DiffField(std::shared_ptr<const detail::FieldCore> core, unsigned m)
      : core_(std::move(core)), m_(m) {}

  std::shared_ptr<const detail::FieldCore> core_;
  unsigned m_ = 0;
};

}  // namespace frobcount
