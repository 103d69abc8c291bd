#include "frobcount/presets.hpp"

#include "frobcount/error.hpp"

namespace frobcount {

std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& [name, text] : detail::embedded_presets()) out.emplace_back(name);
  return out;
}

std::optional<std::string_view> preset_text(std::string_view name) {
  for (const auto& [n, text] : detail::embedded_presets()) {
    if (n == name) return text;
  }
  return std::nullopt;
}

SystemFile load_preset(std::string_view name) {
  const auto text = preset_text(name);
  if (!text) throw Error(ErrorKind::InvalidArgument, "unknown preset '" + std::string(name) + "'");
  return parse_system(*text);
}

}  // namespace frobcount
