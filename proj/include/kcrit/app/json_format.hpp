#pragma once

#include <json.hpp>

#include <string>

namespace kcrit::app {

using Json = nlohmann::ordered_json;

/// Serializes with fixed key order and every floating-point number printed
/// with 17 significant digits, so equal values always give equal bytes.
/// Non-finite numbers become null.
std::string dump_json(const Json& value, int indent = 2);

}  // namespace kcrit::app
