#pragma once

#include <nlohmann/json.hpp>

#include <filesystem>
#include <string>
#include <string_view>

#include "qpoker/circuit/circuit.hpp"

namespace qpoker {

// Canonical circuit document:
//   {"n": int, "name": str?, "ops": [{"kind": str, "targets": [int], "params": [float], "tag": str?}]}
// Files use the .qpc.json extension.
nlohmann::json to_json(const Circuit& circuit);
Circuit circuit_from_json(const nlohmann::json& doc);

std::string serialize(const Circuit& circuit);
// Throws std::invalid_argument: "malformed JSON", "unknown gate kind", "target out of range", ...
Circuit deserialize(std::string_view text);

Circuit load_circuit_file(const std::filesystem::path& path);
void save_circuit_file(const Circuit& circuit, const std::filesystem::path& path);

}  // namespace qpoker
