// Random difference polynomials for property tests.
#pragma once

#include <random>

#include "frobcount/diffpoly.hpp"

namespace frobcount::testing {

struct CorpusShape {
  std::size_t arity = 2;
  unsigned max_sigma_degree = 2;
  unsigned max_terms = 5;
};

/// Constant parts are drawn so that multiples of p show up often; those are
/// the exponents a twisting reduction can divide out.
inline DiffPoly random_diffpoly(std::mt19937_64& rng, const DiffField& field, const CorpusShape& shape) {
  const Domain d = Domain::field(field);
  const std::uint64_t p = field.p();
  const std::uint64_t constants[] = {0, 1, 2, p, 2 * p, p * p};
  DiffPoly out(d, shape.arity);
  const unsigned terms = 1 + static_cast<unsigned>(rng() % shape.max_terms);
  for (unsigned j = 0; j < terms; ++j) {
    DiffMonomial m(shape.arity);
    for (std::size_t i = 0; i < shape.arity; ++i) {
      std::vector<std::uint64_t> c(shape.max_sigma_degree + 1, 0);
      if (rng() % 3 != 0) c[0] = constants[rng() % 6];
      for (unsigned k = 1; k <= shape.max_sigma_degree; ++k) {
        if (rng() % 3 == 0) c[k] = rng() % 2 == 0 ? 1 : p;
      }
      m.set_exp(i, SigmaExp(c));
    }
    out.add_term(m, FElem{1 + rng() % (field.order() - 1)});
  }
  return out;
}

inline DiffPoly random_nonconstant(std::mt19937_64& rng, const DiffField& field, const CorpusShape& shape) {
  while (true) {
    DiffPoly p = random_diffpoly(rng, field, shape);
    if (!p.is_zero() && !p.is_constant()) return p;
  }
}

/// Calls fn(point) for every point of field^n in enumeration order.
template <class Fn>
void for_each_point(const DiffField& field, std::size_t n, Fn&& fn) {
  std::vector<FElem> pt(n, field.zero());
  const std::uint64_t order = field.order();
  while (true) {
    fn(std::as_const(pt));
    std::size_t i = n;
    while (i > 0) {
      --i;
      if (++pt[i].code < order) break;
      pt[i].code = 0;
      if (i == 0) return;
    }
    if (n == 0) return;
  }
}

}  // namespace frobcount::testing
