#include "frobcount/diffpoly.hpp"

#include <algorithm>

#include "frobcount/error.hpp"

namespace frobcount {

// ---------------------------------------------------------------- Domain

const DiffField& Domain::field() const {
  if (!field_) throw Error(ErrorKind::DomainMismatch, "rational domain has no finite field");
  return *field_;
}

Coeff Domain::zero() const {
  if (field_) return field_->zero();
  return Rational(0);
}

Coeff Domain::one() const {
  if (field_) return field_->one();
  return Rational(1);
}

Coeff Domain::from_int(const BigInt& v) const {
  if (field_) return field_->from_int(v);
  return Rational(v);
}

bool Domain::is_zero(const Coeff& c) const {
  if (const auto* r = std::get_if<Rational>(&c)) return *r == 0;
  return std::get<FElem>(c).code == 0;
}

bool Domain::is_one(const Coeff& c) const {
  if (const auto* r = std::get_if<Rational>(&c)) return *r == 1;
  return std::get<FElem>(c).code == 1;
}

Coeff Domain::add(const Coeff& a, const Coeff& b) const {
  if (field_) return field_->add(std::get<FElem>(a), std::get<FElem>(b));
  return Rational(std::get<Rational>(a) + std::get<Rational>(b));
}

Coeff Domain::mul(const Coeff& a, const Coeff& b) const {
  if (field_) return field_->mul(std::get<FElem>(a), std::get<FElem>(b));
  return Rational(std::get<Rational>(a) * std::get<Rational>(b));
}

Coeff Domain::neg(const Coeff& a) const {
  if (field_) return field_->neg(std::get<FElem>(a));
  return Rational(-std::get<Rational>(a));
}

Coeff Domain::sigma(const Coeff& c, std::uint64_t k) const {
  if (field_) return field_->frobenius(std::get<FElem>(c), k);
  return c;
}

Coeff Domain::sigma_inverse(const Coeff& c, std::uint64_t k) const {
  if (field_) return field_->frobenius_inverse(std::get<FElem>(c), k);
  return c;
}

Coeff Domain::p_root(const Coeff& c, std::uint64_t ell) const {
  if (field_) return field_->frobenius_p_inverse(std::get<FElem>(c), ell);
  return c;
}

FElem Domain::to_field(const Coeff& c, const DiffField& target) const {
  if (const auto* e = std::get_if<FElem>(&c)) {
    if (!field_ || !field_->same_base(target)) {
      throw Error(ErrorKind::DomainMismatch, "coefficient field differs from target field");
    }
    return *e;
  }
  const Rational& r = std::get<Rational>(c);
  const BigInt den = boost::multiprecision::denominator(r);
  if (den % target.p() == 0) {
    throw Error(ErrorKind::BadReduction,
                "denominator of " + r.str() + " vanishes mod " + std::to_string(target.p()));
  }
  return target.mul(target.from_int(boost::multiprecision::numerator(r)),
                    target.inv(target.from_int(den)));
}

std::string Domain::render(const Coeff& c) const {
  if (const auto* r = std::get_if<Rational>(&c)) return r->str();
  return field_->render(std::get<FElem>(c));
}

// ---------------------------------------------------------------- DiffMonomial

SigmaExp DiffMonomial::total() const {
  SigmaExp acc;
  for (const auto& e : exps_) acc += e;
  return acc;
}

bool DiffMonomial::is_one() const noexcept {
  return std::all_of(exps_.begin(), exps_.end(), [](const SigmaExp& e) { return e.is_zero(); });
}

DiffMonomial DiffMonomial::shift(unsigned k) const {
  DiffMonomial out(exps_.size());
  for (std::size_t i = 0; i < exps_.size(); ++i) out.exps_[i] = exps_[i].shift(k);
  return out;
}

DiffMonomial operator*(const DiffMonomial& a, const DiffMonomial& b) {
  DiffMonomial out(a.exps_.size());
  for (std::size_t i = 0; i < a.exps_.size(); ++i) out.exps_[i] = a.exps_[i] + b.exps_[i];
  return out;
}

bool GradedOrder::operator()(const DiffMonomial& a, const DiffMonomial& b) const {
  const auto c = a.total() <=> b.total();
  if (c != 0) return c > 0;
  const auto& ea = a.exps();
  const auto& eb = b.exps();
  for (std::size_t i = 0; i < ea.size() && i < eb.size(); ++i) {
    const auto ci = ea[i] <=> eb[i];
    if (ci != 0) return ci > 0;
  }
  return ea.size() > eb.size();
}

// ---------------------------------------------------------------- DiffPoly

DiffPoly DiffPoly::constant(Domain domain, std::size_t arity, const Coeff& c) {
  DiffPoly out(std::move(domain), arity);
  out.add_term(DiffMonomial(arity), c);
  return out;
}

DiffPoly DiffPoly::from_int(Domain domain, std::size_t arity, const BigInt& v) {
  Coeff c = domain.from_int(v);
  return constant(std::move(domain), arity, c);
}

DiffPoly DiffPoly::variable(Domain domain, std::size_t arity, std::size_t i, unsigned k) {
  if (i >= arity) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
  DiffMonomial m(arity);
  m.set_exp(i, SigmaExp::sigma_power(k));
  Coeff one = domain.one();
  return monomial(std::move(domain), std::move(m), one);
}

DiffPoly DiffPoly::monomial(Domain domain, DiffMonomial m, const Coeff& c) {
  DiffPoly out(std::move(domain), m.arity());
  out.add_term(m, c);
  return out;
}

bool DiffPoly::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_one());
}

std::size_t DiffPoly::sigma_order() const noexcept {
  std::size_t order = 0;
  for (const auto& [m, c] : terms_) {
    for (const auto& e : m.exps()) order = std::max(order, e.degree());
  }
  return order;
}

void DiffPoly::add_term(const DiffMonomial& m, const Coeff& c) {
  if (m.arity() != arity_) throw Error(ErrorKind::DomainMismatch, "monomial arity mismatch");
  if (domain_.is_zero(c)) return;
  auto it = terms_.find(m);
  if (it == terms_.end()) {
    terms_.emplace(m, c);
    return;
  }
  it->second = domain_.add(it->second, c);
  if (domain_.is_zero(it->second)) terms_.erase(it);
}

void DiffPoly::check_compatible(const DiffPoly& other) const {
  if (arity_ != other.arity_) {
    throw Error(ErrorKind::DomainMismatch, "arity " + std::to_string(arity_) + " vs " +
                                               std::to_string(other.arity_));
  }
  if (!(domain_ == other.domain_)) {
    throw Error(ErrorKind::DomainMismatch, "polynomials over different coefficient domains");
  }
}

DiffPoly& DiffPoly::operator+=(const DiffPoly& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

DiffPoly& DiffPoly::operator-=(const DiffPoly& other) {
  check_compatible(other);
  for (const auto& [m, c] : other.terms_) add_term(m, domain_.neg(c));
  return *this;
}

DiffPoly operator*(const DiffPoly& a, const DiffPoly& b) {
  a.check_compatible(b);
  DiffPoly out(a.domain_, a.arity_);
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) out.add_term(ma * mb, a.domain_.mul(ca, cb));
  }
  return out;
}

DiffPoly DiffPoly::operator-() const {
  DiffPoly out(domain_, arity_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m, domain_.neg(c));
  return out;
}

DiffPoly DiffPoly::pow(unsigned e) const {
  DiffPoly result = from_int(domain_, arity_, 1);
  DiffPoly base = *this;
  while (e > 0) {
    if (e & 1) result = result * base;
    e >>= 1;
    if (e > 0) base = base * base;
  }
  return result;
}

DiffPoly DiffPoly::sigma_shift(unsigned k) const {
  DiffPoly out(domain_, arity_);
  for (const auto& [m, c] : terms_) out.terms_.emplace(m.shift(k), domain_.sigma(c, k));
  return out;
}

DiffPoly DiffPoly::partial_derivative(std::size_t i) const {
  if (i >= arity_) throw Error(ErrorKind::InvalidArgument, "variable index out of range");
  DiffPoly out(domain_, arity_);
  for (const auto& [m, c] : terms_) {
    const SigmaExp& e = m.exp(i);
    const std::uint64_t c0 = e.constant_part();
    if (c0 == 0) continue;
    Coeff factor = domain_.mul(c, domain_.from_int(BigInt(c0)));
    if (domain_.is_zero(factor)) continue;
    std::vector<std::uint64_t> lowered = e.coeffs();
    lowered[0] -= 1;
    DiffMonomial dm = m;
    dm.set_exp(i, SigmaExp(std::move(lowered)));
    out.add_term(dm, factor);
  }
  return out;
}

SigmaExp DiffPoly::total_degree() const {
  if (terms_.empty()) throw Error(ErrorKind::ZeroPolynomial, "total degree of the zero polynomial");
  // GradedOrder puts the largest total first.
  return terms_.begin()->first.total();
}

FElem DiffPoly::evaluate(const DiffField& field, std::span<const FElem> point) const {
  if (point.size() != arity_) {
    throw Error(ErrorKind::DomainMismatch, "point has " + std::to_string(point.size()) +
                                               " coordinates, polynomial arity is " +
                                               std::to_string(arity_));
  }
  if (domain_.is_field() && !domain_.field().same_base(field)) {
    throw Error(ErrorKind::DomainMismatch, "evaluation field differs from coefficient field");
  }
  // towers[i][k] = σ^k(a_i), filled on demand.
  std::vector<std::vector<FElem>> towers(arity_);
  auto tower = [&](std::size_t i, std::size_t k) {
    auto& tw = towers[i];
    if (tw.empty()) tw.push_back(point[i]);
    while (tw.size() <= k) tw.push_back(field.frobenius(tw.back()));
    return tw[k];
  };
  FElem acc = field.zero();
  for (const auto& [m, c] : terms_) {
    FElem term = domain_.to_field(c, field);
    for (std::size_t i = 0; i < arity_ && term.code != 0; ++i) {
      const auto& coeffs = m.exp(i).coeffs();
      for (std::size_t k = 0; k < coeffs.size(); ++k) {
        if (coeffs[k] == 0) continue;
        term = field.mul(term, field.pow(tower(i, k), coeffs[k]));
      }
    }
    acc = field.add(acc, term);
  }
  return acc;
}

DiffPoly DiffPoly::specialize(const DiffField& field) const {
  DiffPoly out(Domain::field(field), arity_);
  for (const auto& [m, c] : terms_) out.add_term(m, domain_.to_field(c, field));
  return out;
}

bool operator==(const DiffPoly& a, const DiffPoly& b) {
  if (a.arity_ != b.arity_ || !(a.domain_ == b.domain_) || a.terms_.size() != b.terms_.size()) {
    return false;
  }
  auto ib = b.terms_.begin();
  for (auto ia = a.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib) {
    if (!(ia->first == ib->first) || !(ia->second == ib->second)) return false;
  }
  return true;
}

std::vector<std::string> default_variable_names(std::size_t arity) {
  if (arity == 1) return {"x"};
  std::vector<std::string> names;
  for (std::size_t i = 0; i < arity; ++i) names.push_back("x" + std::to_string(i + 1));
  return names;
}

std::string render_monomial(const DiffMonomial& m, std::span<const std::string> names) {
  std::string out;
  for (std::size_t i = 0; i < m.arity(); ++i) {
    const auto& coeffs = m.exp(i).coeffs();
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      if (coeffs[k] == 0) continue;
      if (!out.empty()) out += '*';
      if (k == 0) {
        out += names[i];
      } else {
        out += (k == 1 ? std::string("s") : "s" + std::to_string(k)) + "(" + names[i] + ")";
      }
      if (coeffs[k] != 1) out += '^' + std::to_string(coeffs[k]);
    }
  }
  return out;
}

std::string DiffPoly::to_string(std::span<const std::string> names) const {
  if (names.size() < arity_) throw Error(ErrorKind::InvalidArgument, "not enough variable names");
  if (terms_.empty()) return "0";
  std::string out;
  bool first = true;
  for (const auto& [m, c] : terms_) {
    const std::string mono = render_monomial(m, names);
    bool negative = false;
    std::string coeff;
    if (const auto* r = std::get_if<Rational>(&c)) {
      negative = *r < 0;
      const Rational a = negative ? Rational(-*r) : *r;
      if (a != 1 || mono.empty()) {
        coeff = boost::multiprecision::denominator(a) == 1 ? a.str() : "(" + a.str() + ")";
      }
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

std::string DiffPoly::to_string() const { return to_string(default_variable_names(arity_)); }

}  // namespace frobcount
