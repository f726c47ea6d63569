#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fracgrid/grid.hpp"
#include "fracgrid/memory_schedule.hpp"
#include "fracgrid/psi_table.hpp"

namespace fracgrid {

/// Initial value for cell (j, l).
struct PointSource {
  std::size_t j;
  std::size_t l;
  double value;
  friend bool operator==(const PointSource&, const PointSource&) = default;
};

struct SimulationConfig {
  double gamma = 1.0;  ///< anomalous diffusion exponent, (0, 1]
  double alpha = 1.0;  ///< diffusivity
  double beta = 0.0;   ///< linear decay rate
  double dt = 1.0;
  double dx = 1.0;
  std::size_t nx = 3;
  std::size_t ny = 3;
  std::size_t n_steps = 1;
  std::vector<PointSource> sources;
  /// Dense initial field; when present it is applied before `sources`.
  std::optional<Grid2D> initial_field;
  MemoryStrategy strategy = FullMemory{};
  /// Snapshot every this many steps (0 = ceil(n_steps / 100)); step 0 and the
  /// final step are always kept.
  std::size_t snapshot_every = 0;
  std::uint64_t memory_cap_bytes = HistoryBuffer::kDefaultByteCap;

  friend bool operator==(const SimulationConfig&, const SimulationConfig&) = default;
};

/// alpha * dt^gamma / dx^2.
double stability_ratio(const SimulationConfig& config);

/// Empty when the config passes the conservative 2D FTCS bound r <= 1/4,
/// otherwise a human-readable warning.
std::optional<std::string> stability_warning(const SimulationConfig& config);

/// Throws ConfigError naming the first offending key.
void validate(const SimulationConfig& config);

/// Effective snapshot cadence.
std::size_t snapshot_interval(const SimulationConfig& config);

/// Grid with the initial condition applied and the boundary ring zeroed.
Grid2D initial_grid(const SimulationConfig& config);

/// sum over (m, w) in schedule of w * psi(gamma, m) * delta^{k-m}, per cell,
/// accumulated in schedule order. Throws std::out_of_range when an offset
/// exceeds k, the table, or the recorded history.
Grid2D history_sum(const HistoryBuffer& history, const MemorySchedule& schedule,
                   const PsiTable& table, std::size_t k);

/// Owns the evolving state of one simulation: current grid, stencil history,
/// psi table and step counter.
class Stepper {
public:
  explicit Stepper(const SimulationConfig& config);
  /// Re-uses an existing table (must match gamma and cover n_steps).
  Stepper(const SimulationConfig& config, PsiTable table);

  /// Advances from step k to k + 1. Throws DivergenceError if any cell
  /// becomes non-finite.
  void step();

  std::size_t step_index() const noexcept { return k_; }
  const Grid2D& grid() const noexcept { return grid_; }
  const HistoryBuffer& history() const noexcept { return history_; }
  const PsiTable& table() const noexcept { return table_; }
  const SimulationConfig& config() const noexcept { return config_; }
  /// Number of history terms summed so far (sum of schedule lengths).
  std::uint64_t terms_visited() const noexcept { return terms_visited_; }

private:
  SimulationConfig config_;
  PsiTable table_;
  Grid2D grid_;
  HistoryBuffer history_;
  std::size_t k_ = 0;
  double decay_;  // 1 - beta * dt
  double gain_;   // dt * alpha * dt^(gamma - 1) / dx^2
  std::uint64_t terms_visited_ = 0;
  Grid2D accumulator_;
};

struct Snapshot {
  std::size_t step;
  Grid2D grid;
};

struct SimulationResult {
  SimulationConfig config;
  std::vector<Snapshot> snapshots;
  Grid2D final_grid;
  /// Wall-clock seconds spent in the stepping loop.
  double elapsed_seconds = 0.0;
  std::uint64_t terms_visited = 0;
  std::optional<std::string> warning;
};

/// Per-step callback (step index after the update, current grid); used for
/// progress logging.
using StepObserver = std::function<void(std::size_t, const Grid2D&)>;

/// Runs n_steps explicit steps from the initial condition. Table construction
/// happens before the clock starts.
SimulationResult run(const SimulationConfig& config, const StepObserver& observer = {});

}  // namespace fracgrid
