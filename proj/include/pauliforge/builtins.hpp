#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "pauliforge/circuit.hpp"

namespace pauliforge {

/// Ids of the named reference circuits.
std::vector<std::string> builtin_names();

/// `.prc` text of a named circuit; throws std::invalid_argument for unknown ids.
std::string builtin_text(std::string_view name);

Circuit builtin(std::string_view name);

}  // namespace pauliforge
