#pragma once

#include <string>
#include <vector>

#include <json.hpp>

namespace fracgrid {

inline constexpr const char* kToolVersion = "0.1.0";

/// Record of one CLI invocation, written as manifest.json next to the artifacts.
struct RunManifest {
  std::string command;
  nlohmann::json config;  ///< fully resolved, defaults materialised
  std::vector<std::string> artifacts;
  std::string started_at;   ///< ISO-8601 UTC
  std::string finished_at;  ///< ISO-8601 UTC
  std::string tool_version = kToolVersion;
};

/// Current UTC time as YYYY-MM-DDTHH:MM:SSZ.
std::string utc_timestamp();

nlohmann::json manifest_to_json(const RunManifest& manifest);

/// Throws IoError if any listed artifact is missing or the file cannot be written.
void write_manifest(const RunManifest& manifest, const std::string& path);

}  // namespace fracgrid
