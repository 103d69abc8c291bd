#include "frobcount/reduction.hpp"

#include <algorithm>
#include <limits>

#include "frobcount/error.hpp"

namespace frobcount {

// ---------------------------------------------------------------- AlgPoly

bool AlgPoly::Order::operator()(const Exponents& a, const Exponents& b) const {
  BigInt ta = 0;
  BigInt tb = 0;
  for (const auto& e : a) ta += e;
  for (const auto& e : b) tb += e;
  if (ta != tb) return ta > tb;
  return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
}

void AlgPoly::add_term(const Exponents& e, const Coeff& c) {
  if (e.size() != arity_) throw Error(ErrorKind::DomainMismatch, "exponent vector arity mismatch");
  if (domain_.is_zero(c)) return;
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
    return;
  }
  it->second = domain_.add(it->second, c);
  if (domain_.is_zero(it->second)) terms_.erase(it);
}

AlgPoly operator+(const AlgPoly& a, const AlgPoly& b) {
  if (a.arity_ != b.arity_ || !(a.domain_ == b.domain_)) {
    throw Error(ErrorKind::DomainMismatch, "incompatible algebraic polynomials");
  }
  AlgPoly out = a;
  for (const auto& [e, c] : b.terms_) out.add_term(e, c);
  return out;
}

AlgPoly operator*(const AlgPoly& a, const AlgPoly& b) {
  if (a.arity_ != b.arity_ || !(a.domain_ == b.domain_)) {
    throw Error(ErrorKind::DomainMismatch, "incompatible algebraic polynomials");
  }
  AlgPoly out(a.domain_, a.arity_);
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      AlgPoly::Exponents e(a.arity_);
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      out.add_term(e, a.domain_.mul(ca, cb));
    }
  }
  return out;
}

bool operator==(const AlgPoly& a, const AlgPoly& b) {
  return a.arity_ == b.arity_ && a.domain_ == b.domain_ && a.terms_ == b.terms_;
}

BigInt AlgPoly::degree() const {
  if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, "degree of the zero polynomial");
  BigInt total = 0;
  for (const auto& e : terms_.begin()->first) total += e;
  return total;
}

AlgPoly AlgPoly::partial_derivative(std::size_t i) const {
  if (i >= arity_) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
  AlgPoly out(domain_, arity_);
  for (const auto& [e, c] : terms_) {
    if (e[i] == 0) continue;
    Exponents lowered = e;
    lowered[i] -= 1;
    out.add_term(lowered, domain_.mul(c, domain_.from_int(e[i])));
  }
  return out;
}

FElem AlgPoly::evaluate(const DiffField& field, std::span<const FElem> point) const {
  if (point.size() != arity_) throw Error(ErrorKind::DomainMismatch, "point arity mismatch");
  FElem acc = field.zero();
  for (const auto& [e, c] : terms_) {
    FElem term = domain_.to_field(c, field);
    for (std::size_t i = 0; i < arity_ && term.code != 0; ++i) {
      if (e[i] != 0) term = field.mul(term, field.pow(point[i], e[i]));
    }
    acc = field.add(acc, term);
  }
  return acc;
}

AlgPoly::Evaluator::Evaluator(const AlgPoly& poly, const DiffField& field) : field_(field) {
  const BigInt group = field.order() - 1;
  for (const auto& [e, c] : poly.terms_) {
    Term term{poly.domain_.to_field(c, field), std::vector<std::uint64_t>(e.size(), 0)};
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] != 0) term.exps[i] = static_cast<std::uint64_t>(BigInt((e[i] - 1) % group)) + 1;
    }
    terms_.push_back(std::move(term));
  }
}

FElem AlgPoly::Evaluator::operator()(std::span<const FElem> point) const {
  FElem acc = field_.zero();
  for (const auto& term : terms_) {
    FElem v = term.coeff;
    for (std::size_t i = 0; i < term.exps.size() && v.code != 0; ++i) {
      if (term.exps[i] != 0) v = field_.mul(v, field_.pow(point[i], term.exps[i]));
    }
    acc = field_.add(acc, v);
  }
  return acc;
}

std::string AlgPoly::to_string(std::span<const std::string> names) const {
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [e, c] : terms_) {
    std::string mono;
    for (std::size_t i = 0; i < arity_; ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += '*';
      mono += names[i];
      if (e[i] != 1) mono += '^' + e[i].str();
    }
    bool negative = false;
    std::string coeff;
    if (const auto* r = std::get_if<Rational>(&c)) {
      negative = *r < 0;
      const Rational a = negative ? Rational(-*r) : *r;
      if (a != 1 || mono.empty()) coeff = a.str();
    } else if (!domain_.is_one(c) || mono.empty()) {
      coeff = domain_.render(c);
      if (!mono.empty() && coeff.find('+') != std::string::npos) coeff = "(" + coeff + ")";
    }
    if (first) {
      if (negative) out += '-';
    } else {
      out += negative ? " - " : " + ";
    }
    first = false;
    out += coeff;
    if (!coeff.empty() && !mono.empty()) out += '*';
    out += mono;
  }
  return out;
}

std::string AlgPoly::to_string() const { return to_string(default_variable_names(arity_)); }

// ---------------------------------------------------------------- reductions

namespace {

bool is_power_of(const BigInt& q, std::uint64_t p) {
  BigInt v = q;
  while (v > 1 && v % p == 0) v /= p;
  return v == 1;
}

unsigned p_adic_valuation(std::uint64_t v, std::uint64_t p) {
  unsigned k = 0;
  while (v % p == 0) {
    v /= p;
    ++k;
  }
  return k;
}

}  // namespace

AlgPoly frobenius_reduce(const DiffPoly& p, const BigInt& q) {
  if (q < 2) throw Error(ErrorKind::InvalidArgument, "Frobenius reduction needs q >= 2");
  const std::uint64_t ch = p.domain().characteristic();
  if (ch != 0 && !is_power_of(q, ch)) {
    throw Error(ErrorKind::InvalidArgument,
                "q = " + q.str() + " is not a power of the characteristic " + std::to_string(ch));
  }
  AlgPoly out(p.domain(), p.arity());
  for (const auto& [m, c] : p.terms()) {
    AlgPoly::Exponents e(p.arity());
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = m.exp(i).eval_at(q);
    out.add_term(e, c);
  }
  return out;
}

unsigned sigma_unshift_depth(const DiffPoly& p) {
  if (p.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "shift depth of the zero polynomial");
  if (p.is_constant()) throw Error(ErrorKind::ConstantPolynomial, "shift depth of a constant");
  std::size_t depth = std::numeric_limits<std::size_t>::max();
  for (const auto& [m, c] : p.terms()) {
    for (const auto& e : m.exps()) {
      if (!e.is_zero()) depth = std::min(depth, e.valuation());
    }
  }
  return static_cast<unsigned>(depth);
}

DiffField twisted_field(const DiffField& field, std::int64_t ell) {
  return field.with_frobenius_exponent(static_cast<std::int64_t>(field.m()) - ell);
}

TwistResult twist_reduce(const DiffPoly& p, bool full) {
  if (p.is_constant()) {
    throw Error(ErrorKind::ConstantPolynomial, "twisting reduction of a constant polynomial");
  }
  const Domain& domain = p.domain();
  TwistResult result{DiffPoly(domain, p.arity()), 0, 0, std::nullopt};
  result.m_shift = full ? sigma_unshift_depth(p) : 0;

  // Step 1: σ^-m, which lowers exponents and pulls coefficients back.
  DiffPoly shifted(domain, p.arity());
  for (const auto& [m, c] : p.terms()) {
    DiffMonomial lowered(p.arity());
    for (std::size_t i = 0; i < p.arity(); ++i) lowered.set_exp(i, m.exp(i).unshift(result.m_shift));
    shifted.add_term(lowered, domain.sigma_inverse(c, result.m_shift));
  }

  // Step 2: the largest p^ell dividing every nonzero constant part.
  const std::uint64_t ch = domain.characteristic();
  std::optional<unsigned> ell;
  if (ch != 0) {
    for (const auto& [m, c] : shifted.terms()) {
      for (const auto& e : m.exps()) {
        const std::uint64_t s = e.constant_part();
        if (s == 0) continue;
        const unsigned v = p_adic_valuation(s, ch);
        ell = ell ? std::min(*ell, v) : v;
      }
    }
  }
  result.ell = ell.value_or(0);

  std::uint64_t scale = 1;
  for (unsigned i = 0; i < result.ell; ++i) scale *= ch;

  Domain target = domain.is_field() ? Domain::field(twisted_field(domain.field(), result.ell))
                                    : domain;
  DiffPoly reduced(target, p.arity());
  for (const auto& [m, c] : shifted.terms()) {
    DiffMonomial twisted(p.arity());
    for (std::size_t i = 0; i < p.arity(); ++i) {
      twisted.set_exp(i, m.exp(i).substitute_sigma(scale).divide_exact(scale));
    }
    // Coefficient codes are shared between a field and its twists.
    reduced.add_term(twisted, domain.p_root(c, result.ell));
  }
  result.reduced = std::move(reduced);

  for (std::size_t i = 0; i < p.arity(); ++i) {
    if (!result.reduced.partial_derivative(i).is_zero()) {
      result.witness_var = i;
      break;
    }
  }
  if (full && !result.witness_var) {
    throw Error(ErrorKind::InvalidArgument,
                "full twisting reduction without a nonzero partial derivative: " + p.to_string());
  }
  return result;
}

SystemTwist twist_reduce_system(std::span<const DiffPoly> polys, bool full) {
  SystemTwist out;
  for (const auto& p : polys) {
    out.results.push_back(twist_reduce(p, full));
    if (out.results.front().ell != out.results.back().ell) out.mixed_ell = true;
  }
  return out;
}

}  // namespace frobcount
