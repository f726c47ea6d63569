#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "fracgrid/solver.hpp"

namespace fracgrid {

/// Values supplied on the command line. Anything set here wins over the
/// config file, which in turn wins over the preset defaults.
struct ConfigOverrides {
  std::optional<double> gamma;
  std::optional<double> alpha;
  std::optional<double> beta;
  std::optional<double> dt;
  std::optional<double> dx;
  std::optional<std::string> grid;  ///< "NXxNY"
  std::optional<std::size_t> steps;
  std::optional<std::string> memory;  ///< "full", "short:L", "adaptive:a"
  std::vector<std::string> sources;   ///< "j,l=value"; replaces file sources when non-empty
  std::optional<std::string> initial_csv;
  std::optional<std::size_t> snapshot_every;
  std::optional<std::uint64_t> memory_cap_bytes;
};

/// Config file schema (JSON):
///
///   {
///     "physics": {"gamma": 0.5, "alpha": 1, "beta": 0},
///     "time":    {"dt": 0.5, "steps": 200, "snapshot_every": 0},
///     "grid":    {"nx": 100, "ny": 100, "dx": 5,
///                 "initial": [[...], ...] | "initial_csv": "path"},
///     "memory":  {"strategy": "full" | "short" | "adaptive", "length": 100, "base": 5},
///     "sources": [{"j": 50, "l": 50, "value": 0.1}, ...],
///     "limits":  {"memory_cap_bytes": 4294967296}
///   }
///
/// Unknown keys anywhere are rejected. gamma, dt, dx, grid.nx, grid.ny and
/// time.steps are required; everything else has a default.
SimulationConfig config_from_json(const nlohmann::json& document);

/// Inverse of config_from_json; every default is written out explicitly.
nlohmann::json config_to_json(const SimulationConfig& config);

/// Reads and parses a JSON config file. Throws IoError or ConfigError.
nlohmann::json load_config_document(const std::string& path);

/// Applies flag overrides onto a config document and converts the result.
/// `defaults` may be null (no preset) and `file` may be null (no config file).
SimulationConfig resolve_config(const nlohmann::json& defaults, const nlohmann::json& file,
                                const ConfigOverrides& overrides);

/// "j,l=value".
PointSource parse_source(const std::string& text);
/// "NXxNY".
std::pair<std::size_t, std::size_t> parse_grid_dims(const std::string& text);

}  // namespace fracgrid
