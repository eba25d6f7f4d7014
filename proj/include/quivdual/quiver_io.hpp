#pragma once
#include "quivdual/quiver.hpp"

#include <json.hpp>
#include <string>

namespace qd {

using Json = nlohmann::ordered_json;

Json quiver_to_json(const Quiver &q);
// Throws PARSE (with line and column for malformed text) or INVALID_QUIVER.
Quiver quiver_from_json(const Json &j);
Quiver parse_quiver(const std::string &text);
// Canonical pretty-printed form: nodes and arrows sorted, potential canonical.
std::string emit_quiver(const Quiver &q);

Json kahler_map_to_json(const KahlerMap &m, const std::vector<std::string> &target_vars,
                                  const std::vector<std::string> &source_vars);

std::string read_file(const std::string &path);
// Writes through a temporary file in the same directory and renames it into place.
void write_file_atomic(const std::string &path, const std::string &content);

} // namespace qd
