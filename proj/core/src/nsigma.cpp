#include "frobcount/nsigma.hpp"

#include <algorithm>
#include <limits>

#include "frobcount/error.hpp"

namespace frobcount {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_add_overflow(a, b, &r)) {
    throw Error(ErrorKind::ExponentOverflow, "coefficient sum exceeds 64 bits");
  }
  return r;
}

std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t r;
  if (__builtin_mul_overflow(a, b, &r)) {
    throw Error(ErrorKind::ExponentOverflow, "coefficient product exceeds 64 bits");
  }
  return r;
}

}  // namespace

SigmaExp::SigmaExp(std::uint64_t constant) {
  if (constant != 0) coeffs_.push_back(constant);
}

SigmaExp::SigmaExp(std::initializer_list<std::uint64_t> coeffs) : coeffs_(coeffs) { trim(); }

SigmaExp::SigmaExp(std::vector<std::uint64_t> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

SigmaExp SigmaExp::sigma_power(unsigned k, std::uint64_t coeff) {
  if (coeff == 0) return {};
  std::vector<std::uint64_t> c(k + 1, 0);
  c[k] = coeff;
  return SigmaExp(std::move(c));
}

void SigmaExp::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

std::size_t SigmaExp::valuation() const noexcept {
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] != 0) return i;
  }
  return 0;
}

std::uint64_t SigmaExp::max_coeff() const noexcept {
  return coeffs_.empty() ? 0 : *std::max_element(coeffs_.begin(), coeffs_.end());
}

BigInt SigmaExp::eval_at(const BigInt& q) const {
  BigInt acc = 0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) {
    acc = acc * q + *it;
  }
  return acc;
}

std::optional<SigmaExp> SigmaExp::try_divide(std::uint64_t n) const {
  if (n == 0) throw Error(ErrorKind::InvalidArgument, "division of an exponent by zero");
  std::vector<std::uint64_t> out(coeffs_.size());
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (coeffs_[i] % n != 0) return std::nullopt;
    out[i] = coeffs_[i] / n;
  }
  return SigmaExp(std::move(out));
}

SigmaExp SigmaExp::divide_exact(std::uint64_t n) const {
  auto r = try_divide(n);
  if (!r) {
    throw Error(ErrorKind::NotDivisible, to_string() + " is not divisible by " + std::to_string(n));
  }
  return *std::move(r);
}

SigmaExp SigmaExp::substitute_sigma(std::uint64_t scale) const {
  if (scale == 0) throw Error(ErrorKind::InvalidArgument, "sigma substitution scale must be >= 1");
  std::vector<std::uint64_t> out(coeffs_.size());
  std::uint64_t power = 1;
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i > 0) power = checked_mul(power, scale);
    out[i] = checked_mul(coeffs_[i], power);
  }
  return SigmaExp(std::move(out));
}

SigmaExp SigmaExp::shift(unsigned k) const {
  if (is_zero() || k == 0) return *this;
  std::vector<std::uint64_t> out(k, 0);
  out.insert(out.end(), coeffs_.begin(), coeffs_.end());
  return SigmaExp(std::move(out));
}

SigmaExp SigmaExp::unshift(unsigned k) const {
  if (is_zero() || k == 0) return *this;
  if (valuation() < k) {
    throw Error(ErrorKind::NotDivisible, to_string() + " is not divisible by s^" + std::to_string(k));
  }
  return SigmaExp(std::vector<std::uint64_t>(coeffs_.begin() + k, coeffs_.end()));
}

std::string SigmaExp::to_string() const {
  if (coeffs_.empty()) return "0";
  std::string out;
  for (std::size_t i = coeffs_.size(); i-- > 0;) {
    const std::uint64_t c = coeffs_[i];
    if (c == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(c);
      continue;
    }
    if (c != 1) out += std::to_string(c);
    out += 's';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out;
}

SigmaExp& SigmaExp::operator+=(const SigmaExp& other) {
  if (other.coeffs_.size() > coeffs_.size()) coeffs_.resize(other.coeffs_.size(), 0);
  for (std::size_t i = 0; i < other.coeffs_.size(); ++i) {
    coeffs_[i] = checked_add(coeffs_[i], other.coeffs_[i]);
  }
  trim();
  return *this;
}

SigmaExp operator*(const SigmaExp& a, const SigmaExp& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<std::uint64_t> out(a.coeffs_.size() + b.coeffs_.size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) {
      out[i + j] = checked_add(out[i + j], checked_mul(a.coeffs_[i], b.coeffs_[j]));
    }
  }
  return SigmaExp(std::move(out));
}

std::strong_ordering operator<=>(const SigmaExp& a, const SigmaExp& b) {
  if (a.coeffs_.size() != b.coeffs_.size()) return a.coeffs_.size() <=> b.coeffs_.size();
  for (std::size_t i = a.coeffs_.size(); i-- > 0;) {
    if (a.coeffs_[i] != b.coeffs_[i]) return a.coeffs_[i] <=> b.coeffs_[i];
  }
  return std::strong_ordering::equal;
}

}  // namespace frobcount
