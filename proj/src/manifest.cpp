#include "fracgrid/manifest.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>

#include "fracgrid/csv_writer.hpp"
#include "fracgrid/errors.hpp"

namespace fracgrid {

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm parts{};
  gmtime_r(&now, &parts);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &parts);
  return buf;
}

nlohmann::json manifest_to_json(const RunManifest& m) {
  return {
      {"tool", "fracgrid"},
      {"version", m.tool_version},
      {"command", m.command},
      {"started_at", m.started_at},
      {"finished_at", m.finished_at},
      {"config", m.config},
      {"artifacts", m.artifacts},
  };
}

void write_manifest(const RunManifest& manifest, const std::string& path) {
  for (const auto& artifact : manifest.artifacts) {
    if (!std::filesystem::exists(artifact)) {
      throw IoError("artifact '" + artifact + "' listed in manifest does not exist", artifact);
    }
  }
  write_text_file(path, manifest_to_json(manifest).dump(2) + "\n");
}

}  // namespace fracgrid
