#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

#include "aoi/distributions.hpp"
#include "aoi/topology.hpp"

namespace aoi {

// JSON config formats. Malformed JSON, an unknown "kind", a missing or
// mistyped field all raise Error(kConfig).
//
//   distribution: {"kind": "rayleigh", "scale": 1.0}
//     exponential{rate} rayleigh{scale} chisquare{k} beta{alpha,beta}
//     uniform{a,b} constant{value}
//   network: {"nodes": 4, "links": [{"from":0,"to":1,"dist":{...},"priority":0}, ...]}
//     "priority" defaults to the link's position in the list.

InterUpdateDistribution parse_distribution(std::string_view json_text);
std::string distribution_to_json(const InterUpdateDistribution& dist);

/// Parses without validating; see validate() / Network.
NetworkDesc parse_network(std::string_view json_text);
std::string network_to_json(const NetworkDesc& desc);

/// Reads and validates a network file.
Network load_network(const std::filesystem::path& path);

/// FNV-1a over the canonical JSON form; identifies a network in result records.
std::uint64_t config_hash(const NetworkDesc& desc);

}  // namespace aoi
