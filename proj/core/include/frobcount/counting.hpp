#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "frobcount/diffpoly.hpp"
#include "frobcount/gfield.hpp"

namespace frobcount {

/// A parameter value written as an integer polynomial in the generator g of
/// the target field, c_0 + c_1 g + ... . Its image depends on the field.
struct ParamValue {
  std::vector<BigInt> g_coeffs;

  FElem evaluate(const DiffField& field) const;
  std::string to_string() const;
  friend bool operator==(const ParamValue& a, const ParamValue& b);
};

struct Parameter {
  std::string name;
  std::optional<ParamValue> value;

  friend bool operator==(const Parameter&, const Parameter&) = default;
};

/// A system of difference equations P_1 = ... = P_N = 0 in `arity` unknowns.
///
/// Parameters are extra variables placed after the unknowns (so every
/// polynomial has arity + params.size() variables). Specializing to a field
/// substitutes their values, which plays the role of the specialization
/// η: D → (𝔽_{p^t}, Frob_q).
struct DiffSystem {
  std::size_t arity = 0;
  std::vector<DiffPoly> polys;
  std::optional<unsigned> declared_trf_dim;
  std::vector<Parameter> params;

  /// Polynomials in the unknowns only, over `field`.
  /// Throws UnassignedParameter, BadReduction, DomainMismatch.
  std::vector<DiffPoly> specialize(const DiffField& field) const;

  /// Σ of term counts; a rough size measure of the system.
  std::size_t complexity() const;
};

struct CountOptions {
  /// Largest number of tuples p^(t·n) that may be enumerated.
  std::uint64_t budget = 100'000'000;
  /// Number of contiguous shards over the first coordinate.
  unsigned shards = 1;
  /// Worker threads; 0 means the available hardware parallelism.
  unsigned threads = 0;
  std::size_t max_witnesses = 16;
  /// Minimum Jacobian rank for a smooth-point witness. Defaults to n - d when
  /// a transformal dimension d is declared, 1 otherwise.
  std::optional<unsigned> rank_threshold;
};

struct CountReport {
  std::uint64_t p = 0;
  unsigned t = 0;
  unsigned m = 0;
  std::uint64_t q = 0;
  std::size_t n = 0;
  std::uint64_t count = 0;
  std::uint64_t evaluated = 0;
  std::vector<std::vector<FElem>> smooth_witnesses;
  unsigned jacobian_threshold = 0;
  std::chrono::nanoseconds elapsed{0};
};

/// Exact number of solutions of the system in 𝔽_{p^t}^n with σ = Frob_{p^m}.
/// Throws BudgetExceeded, UnassignedParameter.
CountReport count(const DiffSystem& sys, const DiffField& field, const CountOptions& opts = {});

/// As count, with the first coordinate split into `shards` contiguous ranges.
/// The report is identical for every shard count apart from `elapsed`.
CountReport count_sharded(const DiffSystem& sys, const DiffField& field, unsigned shards,
                          CountOptions opts = {});

/// Rank of the Jacobian (∂P_i/∂x_j)(point) over 𝔽_{p^t}. Throws NotOnVariety.
unsigned jacobian_rank(const DiffSystem& sys, std::span<const FElem> point, const DiffField& field);

/// Rank by Gaussian elimination.
unsigned matrix_rank(const DiffField& field, std::vector<std::vector<FElem>> rows);

}  // namespace frobcount
