#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frobcount/dsl.hpp"

namespace frobcount {

namespace detail {
const std::vector<std::pair<std::string_view, std::string_view>>& embedded_presets();
}

/// Names of the bundled .dsys files, sorted.
std::vector<std::string> preset_names();

std::optional<std::string_view> preset_text(std::string_view name);

/// Throws InvalidArgument for an unknown name.
SystemFile load_preset(std::string_view name);

}  // namespace frobcount
