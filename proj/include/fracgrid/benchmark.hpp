#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "fracgrid/grid.hpp"
#include "fracgrid/solver.hpp"

namespace fracgrid {

/// 100x100 grid, alpha = 1, beta = 0, dt = 0.5, dx = 5, 200 steps (t = 100),
/// 0.1 at (50,50) and 0.05 on its four neighbours, full memory.
SimulationConfig profile_preset(double gamma);

/// 20x20 grid, alpha = 1, beta = 0, dt = 1, dx = 10, 1500 steps, 10 at (10,10),
/// full memory.
SimulationConfig comparison_preset(double gamma);

inline const std::vector<double> kDefaultShortLengths{10, 25, 50, 100, 250, 500, 1000, 1500};
inline const std::vector<std::uint64_t> kDefaultAdaptiveBases{3, 4, 5, 8, 12, 20, 40, 100};

/// Percent error of a grid against a reference.
struct RelativeError {
  double l2_pct = 0.0;
  double linf_pct = 0.0;
};

/// 100 * ||approx - ref|| / ||ref|| in the L2 and max norms over all cells.
/// Throws ConfigError on a shape mismatch or an all-zero reference.
RelativeError relative_error(const Grid2D& approx, const Grid2D& reference);

struct BenchmarkRecord {
  std::string strategy;  ///< "full", "short" or "adaptive"
  double param = 0.0;    ///< L (time units), a, or 0 for full
  double gamma = 0.0;
  double elapsed_s = 0.0;
  double err_l2_pct = 0.0;
  double err_linf_pct = 0.0;
  /// Total history terms summed over the run; a deterministic cost measure.
  std::uint64_t terms_visited = 0;
  bool failed = false;
  std::string failure;
};

/// Orders by (gamma, strategy, param).
bool record_less(const BenchmarkRecord& a, const BenchmarkRecord& b);

struct ComparisonOptions {
  /// Timed runs per cell; the fastest is reported.
  std::size_t repeats = 1;
  /// Run sweep cells concurrently. Off by default so timings are not skewed
  /// by contention.
  bool parallel = false;
  /// Worker cap when parallel (0 = hardware concurrency).
  std::size_t workers = 0;
};

/// One full-memory reference run per gamma, then one record per short length
/// and per adaptive base. The reference itself is reported as a "full" record
/// with zero error. A cell that throws becomes a failed record with NaN errors.
/// The result is sorted with record_less.
std::vector<BenchmarkRecord> run_comparison(const SimulationConfig& base,
                                            const std::vector<double>& gammas,
                                            const std::vector<double>& short_lengths,
                                            const std::vector<std::uint64_t>& adaptive_bases,
                                            const ComparisonOptions& options = {});

struct GammaTrace {
  double gamma = 0.0;
  /// Row through the focus cell of the final grid.
  std::vector<double> profile;
  /// Snapshot times (step * dt) and focus-cell values at those times.
  std::vector<double> times;
  std::vector<double> focus_values;
  Grid2D final_grid;
};

/// Cell holding the largest initial source value (first on ties), or the
/// grid centre when there are no sources.
std::pair<std::size_t, std::size_t> focus_cell(const SimulationConfig& config);

/// Runs `base` (forced to full memory) once per gamma.
std::vector<GammaTrace> gamma_sweep(const SimulationConfig& base, const std::vector<double>& gammas);

/// Worker count from FRACGRID_THREADS (unset or 0 = hardware concurrency).
std::size_t worker_count_from_env();

}  // namespace fracgrid
