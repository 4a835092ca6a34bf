#pragma once

#include <iosfwd>

#include <json.hpp>

namespace interf::cli {

using Json = nlohmann::ordered_json;

/// Deterministic serialization: insertion key order, two-space indent,
/// floats as %.17g, non-finite floats as null.
void write_json(std::ostream& os, const Json& value);

}  // namespace interf::cli
