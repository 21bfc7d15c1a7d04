#pragma once

#include <json.hpp>

#include <string>

namespace witten {

/// Deterministic serialisation: insertion-ordered keys, floating-point values
/// printed with 17 significant digits.
std::string dump_json(const nlohmann::ordered_json& value, int indent = 2);

}  // namespace witten
