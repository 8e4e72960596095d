/**
 * @file io.hpp
 * @brief JSON, CSV, LaTeX and plain-text serialization of groups and instances.
 */
#pragma once

#include <string>

#include <json.hpp>

#include "magicrect/array.hpp"

namespace magicrect {

enum class Format { Json, Csv, Latex, Pretty };

Format parse_format(const std::string& name);

nlohmann::json group_to_json(const Group& g);
/// Accepts {"factors":[..]} or a text spec such as "Z12+Z4".
Group group_from_json(const nlohmann::json& j);

nlohmann::json element_to_json(const Element& e);
Element element_from_json(const Group& g, const nlohmann::json& j);

nlohmann::json array_to_json(const PFArray& a);
PFArray array_from_json(const Group& g, const nlohmann::json& j);

nlohmann::json instance_to_json(const MRSInstance& inst);
MRSInstance instance_from_json(const nlohmann::json& j);

std::string to_csv(const MRSInstance& inst);
/// compact renders entries as concatenated digits (only when every factor is at most 10).
std::string to_latex(const MRSInstance& inst, bool compact);
std::string to_pretty(const MRSInstance& inst);

std::string export_instance(const MRSInstance& inst, Format fmt, bool compact = false);

MRSInstance read_instance_file(const std::string& path);

}  // namespace magicrect
