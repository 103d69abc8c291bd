#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace frobcount::cli {

struct CheckOptions {
  unsigned shards = 1;
  unsigned threads = 0;
  std::uint64_t seed = 0;
};

struct CheckRow {
  std::string preset;
  std::string check;
  std::size_t cases = 0;
  std::size_t failures = 0;
  /// First failing case, or a short summary when everything passed.
  std::string detail;

  bool passed() const { return failures == 0; }
};

/// Assertions bundled with a preset. Throws InvalidArgument for an unknown name.
std::vector<CheckRow> run_preset_checks(std::string_view name, const CheckOptions& opts);

void write_check_table(std::ostream& out, const std::vector<CheckRow>& rows);

}  // namespace frobcount::cli
