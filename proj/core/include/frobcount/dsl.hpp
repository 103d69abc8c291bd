#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frobcount/counting.hpp"
#include "frobcount/diffpoly.hpp"

namespace frobcount {

struct FieldSpec {
  std::uint64_t p = 0;
  unsigned t = 1;
  std::uint64_t m = 0;
  std::optional<std::uint64_t> seed;

  DiffField make() const { return DiffField::make(p, t, m, seed.value_or(0)); }
  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

struct ScheduleSpec {
  std::uint64_t p = 0;
  /// (n_i, m_i): the field DF(p, n_i, m_i) = (𝔽_{p^n_i}, Frob_{p^m_i}).
  std::vector<std::pair<unsigned, unsigned>> pairs;

  friend bool operator==(const ScheduleSpec&, const ScheduleSpec&) = default;
};

/// Contents of a `.dsys` file.
///
///     # comment
///     vars: x, y
///     params: a=g^2+1, b
///     field: p=2,t=4,m=2
///     schedule: p=2, (4,2), (6,2)
///     dim: 1
///     system:
///       x*s(x) - y^2
///       s2(a*x) - b
///
/// Polynomials are kept over ℚ with parameters as trailing variables; they
/// are reduced into a concrete field only when a system is specialized.
struct SystemFile {
  std::vector<std::string> vars;
  std::vector<Parameter> params;
  std::optional<FieldSpec> field;
  std::optional<ScheduleSpec> schedule;
  std::optional<unsigned> dim;
  std::vector<DiffPoly> system;

  /// vars followed by parameter names.
  std::vector<std::string> symbol_names() const;
  DiffSystem to_system() const;

  friend bool operator==(const SystemFile&, const SystemFile&) = default;
};

/// Throws ParseError (kinds Syntax, UndeclaredSymbol, SigmaDepthExceeded).
SystemFile parse_system(std::string_view text);

/// Canonical text; parse_system(render_system(f)) == f.
std::string render_system(const SystemFile& file);

/// Parses a single expression over the given symbols into a polynomial over ℚ.
DiffPoly parse_expression(std::string_view text, const std::vector<std::string>& symbols);

}  // namespace frobcount
