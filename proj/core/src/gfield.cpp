#include "frobcount/gfield.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <tuple>

#include "frobcount/error.hpp"

namespace frobcount {

__extension__ using u128 = unsigned __int128;

std::vector<CodeRange> split_range(std::uint64_t total, unsigned shards) {
  if (shards == 0) throw Error(ErrorKind::InvalidArgument, "shard count must be >= 1");
  std::vector<CodeRange> out;
  out.reserve(shards);
  const std::uint64_t base = total / shards;
  const std::uint64_t extra = total % shards;
  std::uint64_t begin = 0;
  for (unsigned i = 0; i < shards; ++i) {
    const std::uint64_t len = base + (i < extra ? 1 : 0);
    out.push_back({begin, begin + len});
    begin += len;
  }
  return out;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d * d <= n; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

namespace {

using Poly = std::vector<std::uint64_t>;  // over 𝔽_p, low coefficient first

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t p) {
  std::uint64_t r = 1 % p;
  a %= p;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a, p);
    a = mulmod(a, a, p);
    e >>= 1;
  }
  return r;
}

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo f (f nonzero).
Poly poly_rem(Poly a, const Poly& f, std::uint64_t p) {
  poly_trim(a);
  const std::size_t df = f.size() - 1;
  const std::uint64_t lead_inv = powmod(f.back(), p - 2, p);
  while (a.size() >= f.size()) {
    const std::uint64_t c = mulmod(a.back(), lead_inv, p);
    const std::size_t shift = a.size() - 1 - df;
    for (std::size_t i = 0; i <= df; ++i) {
      a[shift + i] = (a[shift + i] + p - mulmod(c, f[i], p)) % p;
    }
    poly_trim(a);
  }
  return a;
}

Poly poly_mulmod(const Poly& a, const Poly& b, const Poly& f, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly prod(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      prod[i + j] = (prod[i + j] + mulmod(a[i], b[j], p)) % p;
    }
  }
  return poly_rem(std::move(prod), f, p);
}

Poly poly_powmod(Poly base, std::uint64_t e, const Poly& f, std::uint64_t p) {
  Poly r{1};
  base = poly_rem(std::move(base), f, p);
  while (e > 0) {
    if (e & 1) r = poly_mulmod(r, base, f, p);
    base = poly_mulmod(base, base, f, p);
    e >>= 1;
  }
  return r;
}

Poly poly_gcd(Poly a, Poly b, std::uint64_t p) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_rem(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

// Rabin's test for a monic f of degree t.
bool is_irreducible(const Poly& f, std::uint64_t p) {
  const std::size_t t = f.size() - 1;
  if (t == 1) return true;
  const Poly x{0, 1};
  // h_k = x^(p^k) mod f.
  std::vector<Poly> frob_x{poly_rem(x, f, p)};
  for (std::size_t k = 1; k <= t; ++k) {
    frob_x.push_back(poly_powmod(frob_x.back(), p, f, p));
  }
  Poly last = frob_x[t];
  poly_trim(last);
  if (last != Poly{0, 1}) return false;
  for (std::uint64_t r : prime_factors(t)) {
    Poly h = frob_x[t / r];
    h.resize(std::max<std::size_t>(h.size(), 2), 0);
    h[1] = (h[1] + p - 1) % p;
    Poly g = poly_gcd(h, f, p);
    if (g.size() != 1) return false;
  }
  return true;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

constexpr std::uint32_t kNoLog = std::numeric_limits<std::uint32_t>::max();

}  // namespace

namespace detail {

class FieldCore {
 public:
  FieldCore(std::uint64_t p, unsigned t, std::uint64_t seed);

  std::uint64_t p;
  unsigned t;
  std::uint64_t order;
  std::uint64_t seed;
  Poly modulus;  // monic, size t + 1
  std::vector<std::uint64_t> p_powers;  // p^i, i <= t

  // frob[j] is the t×t matrix (row-major) of x ↦ x^(p^j), j < t.
  std::vector<std::vector<std::uint64_t>> frob;

  bool tables = false;
  std::uint64_t group_order = 0;  // order - 1
  std::vector<std::uint32_t> exp;   // exp[i] = code of γ^i
  std::vector<std::uint32_t> log;   // log[code]
  std::vector<std::uint32_t> zech;  // zech[d] = log(1 + γ^d) or kNoLog
  std::vector<std::uint64_t> p_pow_mod;  // p^j mod group_order
  std::uint64_t log_minus_one = 0;

  void decode(std::uint64_t code, std::uint64_t* digits) const {
    for (unsigned i = 0; i < t; ++i) {
      digits[i] = code % p;
      code /= p;
    }
  }
  std::uint64_t encode(const std::uint64_t* digits) const {
    std::uint64_t code = 0;
    for (unsigned i = t; i-- > 0;) code = code * p + digits[i];
    return code;
  }

  std::uint64_t add_digits(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t out = 0;
    std::uint64_t scale = 1;
    for (unsigned i = 0; i < t; ++i) {
      const std::uint64_t s = (a % p + b % p) % p;
      out += s * scale;
      a /= p;
      b /= p;
      scale *= p;
    }
    return out;
  }

  std::uint64_t neg_digits(std::uint64_t a) const {
    std::uint64_t out = 0;
    std::uint64_t scale = 1;
    for (unsigned i = 0; i < t; ++i) {
      const std::uint64_t d = a % p;
      out += ((p - d) % p) * scale;
      a /= p;
      scale *= p;
    }
    return out;
  }

  // Schoolbook product followed by reduction modulo the monic modulus.
  std::uint64_t mul_coords(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t da[kMaxExtensionDegree];
    std::uint64_t db[kMaxExtensionDegree];
    std::uint64_t prod[2 * kMaxExtensionDegree] = {};
    decode(a, da);
    decode(b, db);
    // t >= 2 implies p <= 2^20, so partial sums stay below 2^45.
    for (unsigned i = 0; i < t; ++i) {
      if (da[i] == 0) continue;
      for (unsigned j = 0; j < t; ++j) prod[i + j] += da[i] * db[j];
    }
    for (unsigned k = 2 * t - 1; k-- > t;) {
      const std::uint64_t c = prod[k] % p;
      if (c == 0) continue;
      for (unsigned i = 0; i < t; ++i) prod[k - t + i] += c * ((p - modulus[i]) % p);
    }
    for (unsigned i = 0; i < t; ++i) prod[i] %= p;
    return encode(prod);
  }

  std::uint64_t pow_coords(std::uint64_t a, std::uint64_t e) const {
    std::uint64_t r = 1;
    while (e > 0) {
      if (e & 1) r = mul_coords(r, a);
      a = mul_coords(a, a);
      e >>= 1;
    }
    return r;
  }

  std::uint64_t apply_matrix(const std::vector<std::uint64_t>& mat, std::uint64_t code) const {
    std::uint64_t in[kMaxExtensionDegree];
    std::uint64_t out[kMaxExtensionDegree];
    decode(code, in);
    for (unsigned r = 0; r < t; ++r) {
      std::uint64_t acc = 0;
      for (unsigned c = 0; c < t; ++c) acc += mat[r * t + c] * in[c];
      out[r] = acc % p;
    }
    return encode(out);
  }

 private:
  void build_frobenius_matrices();
  void build_tables();
};

FieldCore::FieldCore(std::uint64_t p_, unsigned t_, std::uint64_t seed_)
    : p(p_), t(t_), seed(seed_) {
  p_powers.push_back(1);
  for (unsigned i = 0; i < t; ++i) p_powers.push_back(p_powers.back() * p);
  order = p_powers[t];

  // Candidates are indexed by their lower coefficients read as base-p digits.
  const std::uint64_t start = seed == 0 ? 0 : splitmix64(seed) % order;
  for (std::uint64_t j = 0; j < order; ++j) {
    std::uint64_t idx = (start + j) % order;
    Poly f(t + 1, 0);
    for (unsigned i = 0; i < t; ++i) {
      f[i] = idx % p;
      idx /= p;
    }
    f[t] = 1;
    if (is_irreducible(f, p)) {
      modulus = std::move(f);
      break;
    }
  }
  if (modulus.empty()) throw Error(ErrorKind::InvalidArgument, "no irreducible modulus found");

  if (t >= 2) build_frobenius_matrices();
  if (t >= 2 && order <= kTableLimit) build_tables();
}

void FieldCore::build_frobenius_matrices() {
  frob.assign(t, std::vector<std::uint64_t>(t * t, 0));
  std::uint64_t digits[kMaxExtensionDegree];
  for (unsigned j = 0; j < t; ++j) {
    const std::uint64_t gp = pow_coords(p, p_powers[j]);  // g^(p^j); code p is g
    std::uint64_t col = 1;
    for (unsigned c = 0; c < t; ++c) {
      decode(col, digits);
      for (unsigned r = 0; r < t; ++r) frob[j][r * t + c] = digits[r];
      col = mul_coords(col, gp);
    }
  }
}

void FieldCore::build_tables() {
  group_order = order - 1;
  const auto factors = prime_factors(group_order);
  std::uint64_t gamma = 0;
  for (std::uint64_t cand = p; cand < order; ++cand) {
    bool primitive = true;
    for (std::uint64_t r : factors) {
      if (pow_coords(cand, group_order / r) == 1) {
        primitive = false;
        break;
      }
    }
    if (primitive) {
      gamma = cand;
      break;
    }
  }
  // Multiplication by γ is 𝔽_p-linear; use its matrix for the table walk.
  std::vector<std::uint64_t> mul_gamma(t * t);
  {
    std::uint64_t digits[kMaxExtensionDegree];
    for (unsigned c = 0; c < t; ++c) {
      decode(mul_coords(p_powers[c], gamma), digits);
      for (unsigned r = 0; r < t; ++r) mul_gamma[r * t + c] = digits[r];
    }
  }
  exp.resize(group_order);
  log.assign(order, kNoLog);
  std::uint64_t cur = 1;
  for (std::uint64_t i = 0; i < group_order; ++i) {
    exp[i] = static_cast<std::uint32_t>(cur);
    log[cur] = static_cast<std::uint32_t>(i);
    cur = apply_matrix(mul_gamma, cur);
  }
  zech.resize(group_order);
  for (std::uint64_t d = 0; d < group_order; ++d) {
    const std::uint64_t c = exp[d];
    const std::uint64_t d0 = c % p;
    const std::uint64_t plus_one = c - d0 + (d0 + 1) % p;
    zech[d] = plus_one == 0 ? kNoLog : log[plus_one];
  }
  p_pow_mod.resize(t);
  for (unsigned j = 0; j < t; ++j) p_pow_mod[j] = p_powers[j] % group_order;
  log_minus_one = p == 2 ? 0 : group_order / 2;
  tables = true;
}

}  // namespace detail

namespace {

std::shared_ptr<const detail::FieldCore> shared_core(std::uint64_t p, unsigned t,
                                                     std::uint64_t seed) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint64_t, unsigned, std::uint64_t>,
                  std::shared_ptr<const detail::FieldCore>>
      cache;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(p, t, seed);
  auto it = cache.find(key);
  if (it != cache.end()) return it->second;
  auto core = std::make_shared<const detail::FieldCore>(p, t, seed);
  cache.emplace(key, core);
  return core;
}

}  // namespace

DiffField DiffField::make(std::uint64_t p, unsigned t, std::uint64_t m, std::uint64_t seed) {
  if (p > std::numeric_limits<std::uint32_t>::max()) {
    throw Error(ErrorKind::TooLarge, "characteristic must fit in 32 bits");
  }
  if (!is_prime(p)) throw Error(ErrorKind::NotPrime, std::to_string(p) + " is not prime");
  if (t < 1 || t > kMaxExtensionDegree) {
    throw Error(ErrorKind::TooLarge, "extension degree must lie in [1, 24], got " + std::to_string(t));
  }
  BigInt order = big_pow(p, t);
  if (order > kMaxFieldOrder) {
    throw Error(ErrorKind::TooLarge, "field order " + order.str() + " exceeds 2^40");
  }
  return DiffField(shared_core(p, t, seed), static_cast<unsigned>(m % t));
}

std::uint64_t DiffField::p() const noexcept { return core_->p; }
unsigned DiffField::t() const noexcept { return core_->t; }
std::uint64_t DiffField::order() const noexcept { return core_->order; }
std::uint64_t DiffField::q() const noexcept { return core_->p_powers[m_]; }
std::uint64_t DiffField::reduction_q() const noexcept {
  return m_ == 0 ? core_->order : core_->p_powers[m_];
}
std::uint64_t DiffField::seed() const noexcept { return core_->seed; }
const std::vector<std::uint64_t>& DiffField::modulus() const noexcept { return core_->modulus; }
bool DiffField::has_tables() const noexcept { return core_->tables; }

DiffField DiffField::with_frobenius_exponent(std::int64_t m) const {
  const auto t = static_cast<std::int64_t>(core_->t);
  return DiffField(core_, static_cast<unsigned>(((m % t) + t) % t));
}

FElem DiffField::generator() const noexcept {
  if (core_->t == 1) return FElem{(core_->p - core_->modulus[0]) % core_->p};
  return FElem{core_->p};
}

FElem DiffField::from_int(std::int64_t v) const noexcept {
  const auto p = static_cast<std::int64_t>(core_->p);
  return FElem{static_cast<std::uint64_t>(((v % p) + p) % p)};
}

FElem DiffField::from_int(const BigInt& v) const {
  BigInt r = v % core_->p;
  if (r < 0) r += core_->p;
  return FElem{static_cast<std::uint64_t>(r)};
}

FElem DiffField::from_coords(std::span<const std::uint64_t> coords) const {
  if (coords.size() > core_->t) {
    throw Error(ErrorKind::InvalidArgument, "too many coordinates for the field degree");
  }
  std::uint64_t digits[kMaxExtensionDegree] = {};
  for (std::size_t i = 0; i < coords.size(); ++i) digits[i] = coords[i] % core_->p;
  return FElem{core_->encode(digits)};
}

std::vector<std::uint64_t> DiffField::coords(FElem x) const {
  std::vector<std::uint64_t> out(core_->t);
  core_->decode(x.code, out.data());
  return out;
}

FElem DiffField::add(FElem a, FElem b) const noexcept {
  const auto& c = *core_;
  if (c.p == 2) return FElem{a.code ^ b.code};
  if (c.t == 1) return FElem{(a.code + b.code) % c.p};
  if (a.code == 0) return b;
  if (b.code == 0) return a;
  if (!c.tables) return FElem{c.add_digits(a.code, b.code)};
  const std::uint64_t la = c.log[a.code];
  const std::uint64_t lb = c.log[b.code];
  const std::uint64_t d = lb >= la ? lb - la : lb + c.group_order - la;
  const std::uint32_t z = c.zech[d];
  if (z == kNoLog) return FElem{0};
  std::uint64_t e = la + z;
  if (e >= c.group_order) e -= c.group_order;
  return FElem{c.exp[e]};
}

FElem DiffField::neg(FElem a) const noexcept {
  const auto& c = *core_;
  if (c.p == 2 || a.code == 0) return a;
  if (c.t == 1) return FElem{c.p - a.code};
  if (!c.tables) return FElem{c.neg_digits(a.code)};
  std::uint64_t e = c.log[a.code] + c.log_minus_one;
  if (e >= c.group_order) e -= c.group_order;
  return FElem{c.exp[e]};
}

FElem DiffField::mul(FElem a, FElem b) const noexcept {
  const auto& c = *core_;
  if (a.code == 0 || b.code == 0) return FElem{0};
  if (c.t == 1) return FElem{a.code * b.code % c.p};
  if (!c.tables) return FElem{c.mul_coords(a.code, b.code)};
  std::uint64_t e = std::uint64_t{c.log[a.code]} + c.log[b.code];
  if (e >= c.group_order) e -= c.group_order;
  return FElem{c.exp[e]};
}

FElem DiffField::inv(FElem a) const {
  if (a.code == 0) throw Error(ErrorKind::DivisionByZero, "inverse of zero");
  const auto& c = *core_;
  if (c.t == 1) return FElem{powmod(a.code, c.p - 2, c.p)};
  if (c.tables) {
    const std::uint64_t l = c.log[a.code];
    return FElem{c.exp[l == 0 ? 0 : c.group_order - l]};
  }
  return FElem{c.pow_coords(a.code, c.order - 2)};
}

FElem DiffField::pow(FElem a, std::uint64_t e) const noexcept {
  if (e == 0) return one();
  if (a.code == 0) return zero();
  const auto& c = *core_;
  const std::uint64_t n = c.order - 1;
  // a^(n) = 1 for a ≠ 0, so fold e into [1, n].
  const std::uint64_t r = (e - 1) % n + 1;
  if (c.t == 1) return FElem{powmod(a.code, r, c.p)};
  if (c.tables) {
    const auto l = static_cast<std::uint64_t>(
        static_cast<u128>(c.log[a.code]) * r % c.group_order);
    return FElem{c.exp[l]};
  }
  return FElem{c.pow_coords(a.code, r)};
}

FElem DiffField::pow(FElem a, const BigInt& e) const {
  if (e < 0) throw Error(ErrorKind::InvalidArgument, "negative exponent");
  if (e == 0) return one();
  if (a.code == 0) return zero();
  const std::uint64_t n = core_->order - 1;
  const auto r = static_cast<std::uint64_t>(BigInt((e - 1) % n)) + 1;
  return pow(a, r);
}

FElem DiffField::frobenius_p(FElem x, std::uint64_t j) const noexcept {
  const auto& c = *core_;
  j %= c.t;
  if (j == 0 || x.code == 0 || c.t == 1) return x;
  if (c.tables) {
    const auto l = static_cast<std::uint64_t>(
        static_cast<u128>(c.log[x.code]) * c.p_pow_mod[j] % c.group_order);
    return FElem{c.exp[l]};
  }
  return FElem{c.apply_matrix(c.frob[j], x.code)};
}

FElem DiffField::frobenius_p_inverse(FElem x, std::uint64_t j) const noexcept {
  const unsigned t = core_->t;
  return frobenius_p(x, (t - j % t) % t);
}

FElem DiffField::frobenius(FElem x, std::uint64_t k) const noexcept {
  const unsigned t = core_->t;
  return frobenius_p(x, (m_ * (k % t)) % t);
}

FElem DiffField::frobenius_inverse(FElem x, std::uint64_t k) const noexcept {
  const unsigned t = core_->t;
  return frobenius_p(x, (t - (m_ * (k % t)) % t) % t);
}

FElem DiffField::frobenius_linear(FElem x, std::uint64_t j) const {
  const auto& c = *core_;
  j %= c.t;
  if (c.t == 1 || j == 0) return x;
  return FElem{c.apply_matrix(c.frob[j], x.code)};
}

std::uint64_t DiffField::fixed_field_size() const noexcept {
  if (m_ == 0) return core_->order;
  return core_->p_powers[std::gcd(core_->t, m_)];
}

std::vector<FElem> DiffField::elements() const {
  if (core_->order > (std::uint64_t{1} << 26)) {
    throw Error(ErrorKind::TooLarge, "refusing to materialize more than 2^26 elements");
  }
  std::vector<FElem> out(core_->order);
  for (std::uint64_t i = 0; i < core_->order; ++i) out[i] = FElem{i};
  return out;
}

std::string DiffField::render(FElem x) const {
  const auto& c = *core_;
  if (c.t == 1) return std::to_string(x.code);
  if (x.code == 0) return "0";
  std::uint64_t digits[kMaxExtensionDegree];
  c.decode(x.code, digits);
  std::string out;
  for (unsigned i = c.t; i-- > 0;) {
    const std::uint64_t d = digits[i];
    if (d == 0) continue;
    if (!out.empty()) out += '+';
    if (i == 0) {
      out += std::to_string(d);
      continue;
    }
    if (d != 1) out += std::to_string(d);
    out += 'g';
    if (i > 1) out += '^' + std::to_string(i);
  }
  return out;
}

std::string DiffField::describe() const {
  return "(" + std::to_string(p()) + "," + std::to_string(t()) + "," + std::to_string(m_) + ")";
}

}  // namespace frobcount
