#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "frobcount/dsl.hpp"

namespace frobcount::cli {

enum class Subcommand { Count, Sweep, Reduce, Twist, Bounds, Examples };
enum class Format { Csv, Json };

namespace exit_code {
inline constexpr int kOk = 0;
inline constexpr int kCheckFailed = 1;
inline constexpr int kUsage = 2;
inline constexpr int kParse = 3;
inline constexpr int kBudget = 4;
inline constexpr int kMath = 5;
inline constexpr int kIo = 6;
}  // namespace exit_code

struct RunConfig {
  Subcommand subcommand = Subcommand::Count;
  /// Path of a .dsys file; empty when a preset is named instead.
  std::string input;
  std::string preset;
  /// Empty means standard output.
  std::string out;
  std::uint64_t budget = 100'000'000;
  unsigned shards = 1;
  unsigned threads = 0;
  std::vector<double> c_values;
  std::size_t witnesses = 16;
  std::optional<std::uint64_t> seed;
  Format format = Format::Csv;
  /// Writes elapsed_ms as 0 so artifacts compare byte for byte.
  bool timing = true;
  /// Replace the file's field; several give one row each.
  std::vector<FieldSpec> fields;
  /// Exponent q for `reduce`; defaults to the field's reduction exponent.
  std::optional<std::uint64_t> q;
  /// Tail tolerance for `sweep`.
  double tolerance = 0.1;
};

/// Parses "p,t,m" or "p,t". Throws InvalidArgument.
FieldSpec parse_field_spec(const std::string& text);

/// Executes one subcommand. Diagnostics go to `err`; artifacts go to `out`
/// unless config.out names a file.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace frobcount::cli
