/**
 * @file fixtures.hpp
 * @brief Reference arrays compiled into the library from data/fixtures.
 */
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "magicrect/array.hpp"

namespace magicrect {

std::uint64_t fnv1a64(const std::string& bytes);

std::vector<std::string> fixture_names();
/// Raw file text; throws InvalidInput on unknown name or checksum mismatch against MANIFEST.json.
const std::string& fixture_text(const std::string& name);
nlohmann::json fixture_json(const std::string& name);
MRSInstance fixture_instance(const std::string& name);
/// Names whose checksum disagrees with the manifest (empty when all is well).
std::vector<std::string> fixture_checksum_failures();

}  // namespace magicrect
