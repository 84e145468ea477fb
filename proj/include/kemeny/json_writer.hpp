#pragma once

#include "json.hpp"

#include <string>

namespace kemeny {

/// Serializes with every floating-point number at 17 significant digits
/// (%.17g); non-finite numbers become null. Object keys keep insertion order
/// only if the json type does, so reports use ordered_json.
std::string dump_json(const nlohmann::ordered_json& value, int indent = 2);

}  // namespace kemeny
