#include "frobcount/bounds.hpp"

#include <cmath>
#include <limits>

#include "frobcount/error.hpp"
#include "frobcount/reduction.hpp"

namespace frobcount {

std::string_view to_string(FormulaId id) {
  switch (id) {
    case FormulaId::TheoremB: return "TheoremB";
    case FormulaId::TheoremBBranch2: return "TheoremBBranch2";
    case FormulaId::Trivial: return "Trivial";
    case FormulaId::CafureMatera: return "CafureMatera";
  }
  return "Unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double to_double(const BigInt& v) { return v.convert_to<double>(); }

std::optional<unsigned> integral(double c) {
  if (c < 0 || c > 1e6) return std::nullopt;
  const double r = std::round(c);
  if (std::fabs(c - r) > 1e-12) return std::nullopt;
  return static_cast<unsigned>(r);
}

bool near(double a, double b) {
  return std::fabs(a - b) <= std::max(1.0, 1e-9 * std::max(std::fabs(a), std::fabs(b)));
}

BigInt pow_big(const BigInt& base, unsigned e) { return boost::multiprecision::pow(base, e); }

BoundInputs theorem_inputs(unsigned d, double c, std::uint64_t p, unsigned t, const BigInt& q) {
  BoundInputs in;
  in.d = d;
  in.c = c;
  in.p = p;
  in.t = t;
  in.q = q;
  return in;
}

// q^c p^e as a double, e possibly half-integral. Integral c goes through exact integers.
double qc_times_p(const BigInt& q, double c, std::uint64_t p, double e) {
  const auto ci = integral(c);
  const double whole = std::floor(e);
  if (ci && whole >= 0) {
    const BigInt exact = pow_big(q, *ci) * pow_big(BigInt(p), static_cast<unsigned>(whole));
    const double base = to_double(exact);
    return e == whole ? base : base * std::sqrt(static_cast<double>(p));
  }
  return std::exp(c * std::log(to_double(q)) + e * std::log(static_cast<double>(p)));
}

}  // namespace

BigInt bezout_degree(const BigInt& a, const BigInt& b) { return a * b; }

DegreeBound degree_bound(std::span<const DiffPoly> polys, const BigInt& q) {
  if (q < 2) throw Error(ErrorKind::InvalidArgument, "degree bound needs q >= 2");
  DegreeBound out;
  for (const auto& poly : polys) {
    if (poly.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial in system");
    const AlgPoly reduced = frobenius_reduce(poly, q);
    const BigInt deg = reduced.is_zero() ? BigInt(1) : reduced.degree();
    out.degrees.push_back(deg);
    out.product = bezout_degree(out.product, deg);
  }
  BigInt power = 1;
  while (power < out.product) {
    power *= q;
    ++out.c;
  }
  return out;
}

DegreeBound degree_bound(const DiffSystem& sys, const BigInt& q) {
  std::vector<DiffPoly> unknowns_only;
  for (const auto& poly : sys.polys) {
    if (poly.is_zero()) throw Error(ErrorKind::ZeroPolynomial, "zero polynomial in system");
    DiffPoly restricted(poly.domain(), sys.arity);
    for (const auto& [m, c] : poly.terms()) {
      restricted.add_term(
          DiffMonomial(std::vector<SigmaExp>(m.exps().begin(), m.exps().begin() + sys.arity)), c);
    }
    // Distinct parameter monomials can collapse; keep the unknown part nonzero.
    if (restricted.is_zero()) restricted = DiffPoly::from_int(poly.domain(), sys.arity, 1);
    unknowns_only.push_back(std::move(restricted));
  }
  return degree_bound(unknowns_only, q);
}

CafureMateraBound cafure_matera(unsigned r, std::uint64_t ell, const BigInt& q) {
  if (r < 1 || ell < 1) throw Error(ErrorKind::InvalidArgument, "Cafure–Matera needs r, l >= 1");
  CafureMateraBound out;
  out.applicable = q > BigInt(2) * (r + 1) * BigInt(ell) * ell;
  const long double qd = q.convert_to<long double>();
  const long double l = static_cast<long double>(ell);
  const long double first = (l - 1) * (l - 2) * std::pow(qd, static_cast<long double>(r) - 0.5L);
  const long double second = 5 * std::exp(13.0L / 3.0L * std::log(l)) *
                             std::pow(qd, static_cast<long double>(r) - 1);
  out.margin = static_cast<double>(first + second);
  return out;
}

BoundVerdict cafure_matera_verdict(const BigInt& count, unsigned r, std::uint64_t ell,
                                   const BigInt& q) {
  const CafureMateraBound cm = cafure_matera(r, ell, q);
  BoundVerdict v;
  v.formula = FormulaId::CafureMatera;
  v.count = count;
  v.applicable = cm.applicable;
  v.inputs.q = q;
  v.inputs.r = r;
  v.inputs.ell = ell;
  const double center = to_double(pow_big(q, r));
  v.lower = center - cm.margin;
  v.upper = center + cm.margin;
  v.satisfied = std::fabs(to_double(count) - center) <= cm.margin;
  return v;
}

BoundVerdict theorem_b_verdict(const BigInt& count, unsigned d, double c, std::uint64_t p,
                               unsigned t, const BigInt& q) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "Theorem B bounds need d >= 1");
  BoundVerdict v;
  v.formula = FormulaId::TheoremB;
  v.count = count;
  v.inputs = theorem_inputs(d, c, p, t, q);
  const double n = to_double(count);
  const double main = std::pow(static_cast<double>(p), static_cast<double>(d) * t);
  const double raw_lower = main - qc_times_p(q, c, p, t * (d - 0.5));
  v.lower = std::max(0.0, raw_lower);
  v.upper = qc_times_p(q, c, p, static_cast<double>(d) * t);
  bool lower_ok = v.lower <= n;
  bool upper_ok = n <= v.upper;

  const auto ci = integral(c);
  if (ci && (near(n, raw_lower) || near(n, v.upper))) {
    v.exact = true;
    const BigInt pt = pow_big(BigInt(p), t);
    const BigInt pdt = pow_big(pt, d);
    const BigInt qc = pow_big(q, *ci);
    upper_ok = count <= qc * pdt;
    const BigInt deficit = pdt - count;
    // deficit <= q^c p^(td) / p^(t/2)  <=>  deficit² p^t <= q^2c p^(2td)
    lower_ok = deficit <= 0 || deficit * deficit * pt <= qc * qc * pdt * pdt;
  }
  v.satisfied = lower_ok && upper_ok;
  return v;
}

BoundVerdict theorem_b_branch2_verdict(const BigInt& count, unsigned d, double c,
                                       std::uint64_t p, unsigned t, const BigInt& q) {
  if (d < 1) throw Error(ErrorKind::InvalidArgument, "Theorem B bounds need d >= 1");
  BoundVerdict v;
  v.formula = FormulaId::TheoremBBranch2;
  v.count = count;
  v.inputs = theorem_inputs(d, c, p, t, q);
  v.lower = -kInf;
  v.upper = qc_times_p(q, c, p, static_cast<double>(d - 1) * t);
  const double n = to_double(count);
  v.satisfied = n <= v.upper;
  const auto ci = integral(c);
  if (ci && near(n, v.upper)) {
    v.exact = true;
    v.satisfied = count <= pow_big(q, *ci) * pow_big(BigInt(p), t * (d - 1));
  }
  return v;
}

BoundVerdict trivial_verdict(const BigInt& count, unsigned d, double c, std::uint64_t p,
                             unsigned t, const BigInt& q) {
  BoundVerdict v;
  v.formula = FormulaId::Trivial;
  v.count = count;
  v.inputs = theorem_inputs(d, c, p, t, q);
  v.lower = -kInf;
  v.upper = qc_times_p(q, c, p, static_cast<double>(d) * t);
  const double n = to_double(count);
  v.satisfied = n <= v.upper;
  const auto ci = integral(c);
  if (ci && near(n, v.upper)) {
    v.exact = true;
    v.satisfied = count <= pow_big(q, *ci) * pow_big(BigInt(p), t * d);
  }
  return v;
}

std::vector<BoundVerdict> theorem_b_verdicts(const BigInt& count, unsigned d, double c,
                                             std::uint64_t p, unsigned t, const BigInt& q) {
  return {theorem_b_verdict(count, d, c, p, t, q), theorem_b_branch2_verdict(count, d, c, p, t, q),
          trivial_verdict(count, d, c, p, t, q)};
}

}  // namespace frobcount
