#pragma once

#include <json.hpp>
#include <string>

#include "facloc/instance.hpp"

namespace facloc {

// Shortest decimal string that parses back to exactly the same double.
// Coordinates travel as strings so files round-trip bit-for-bit and never
// depend on locale or printf quirks.
std::string format_double(double v);
double parse_double(const std::string& s);

nlohmann::json instance_to_json(const Instance& P);
Instance instance_from_json(const nlohmann::json& j);

void save_instance(const Instance& P, const std::string& path);
Instance load_instance(const std::string& path);

// 64-bit FNV-1a over a string, hex-encoded; stable across platforms.
std::string stable_hash_hex(const std::string& s);

}  // namespace facloc
