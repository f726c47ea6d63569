#include "fracgrid/benchmark.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <thread>

#include "fracgrid/errors.hpp"

namespace fracgrid {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

struct Cell {
  MemoryStrategy strategy;
  std::size_t gamma_index;
};

BenchmarkRecord timed_cell(const SimulationConfig& config, const Grid2D& reference,
                           std::size_t repeats) {
  BenchmarkRecord record;
  record.strategy = strategy_name(config.strategy);
  record.param = strategy_parameter(config.strategy);
  record.gamma = config.gamma;
  try {
    double best = std::numeric_limits<double>::infinity();
    SimulationResult result;
    for (std::size_t r = 0; r < std::max<std::size_t>(1, repeats); ++r) {
      result = run(config);
      best = std::min(best, result.elapsed_seconds);
    }
    const auto err = relative_error(result.final_grid, reference);
    record.elapsed_s = best;
    record.err_l2_pct = err.l2_pct;
    record.err_linf_pct = err.linf_pct;
    record.terms_visited = result.terms_visited;
  } catch (const std::exception& e) {
    record.failed = true;
    record.failure = e.what();
    record.elapsed_s = kNaN;
    record.err_l2_pct = kNaN;
    record.err_linf_pct = kNaN;
  }
  return record;
}

}  // namespace

SimulationConfig profile_preset(double gamma) {
  SimulationConfig c;
  c.gamma = gamma;
  c.alpha = 1.0;
  c.beta = 0.0;
  c.dt = 0.5;
  c.dx = 5.0;
  c.nx = 100;
  c.ny = 100;
  c.n_steps = 200;
  c.sources = {{50, 50, 0.1}, {51, 50, 0.05}, {50, 51, 0.05}, {49, 50, 0.05}, {50, 49, 0.05}};
  c.strategy = FullMemory{};
  return c;
}

SimulationConfig comparison_preset(double gamma) {
  SimulationConfig c;
  c.gamma = gamma;
  c.alpha = 1.0;
  c.beta = 0.0;
  c.dt = 1.0;
  c.dx = 10.0;
  c.nx = 20;
  c.ny = 20;
  c.n_steps = 1500;
  c.sources = {{10, 10, 10.0}};
  c.strategy = FullMemory{};
  return c;
}

RelativeError relative_error(const Grid2D& approx, const Grid2D& reference) {
  if (!approx.same_shape(reference)) {
    throw ConfigError("error norms need grids of the same shape", "reference");
  }
  const auto a = approx.data();
  const auto r = reference.data();
  double diff_sq = 0.0, ref_sq = 0.0, diff_max = 0.0, ref_max = 0.0;
  for (std::size_t c = 0; c < r.size(); ++c) {
    const double d = a[c] - r[c];
    diff_sq += d * d;
    ref_sq += r[c] * r[c];
    diff_max = std::max(diff_max, std::abs(d));
    ref_max = std::max(ref_max, std::abs(r[c]));
  }
  if (ref_sq == 0.0) throw ConfigError("reference grid is identically zero", "reference");
  return {100.0 * std::sqrt(diff_sq) / std::sqrt(ref_sq), 100.0 * diff_max / ref_max};
}

bool record_less(const BenchmarkRecord& a, const BenchmarkRecord& b) {
  if (a.gamma != b.gamma) return a.gamma < b.gamma;
  if (a.strategy != b.strategy) return a.strategy < b.strategy;
  return a.param < b.param;
}

std::size_t worker_count_from_env() {
  std::size_t hw = std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("FRACGRID_THREADS")) {
    char* end = nullptr;
    const long requested = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && requested > 0) {
      return static_cast<std::size_t>(requested);
    }
  }
  return hw;
}

std::vector<BenchmarkRecord> run_comparison(const SimulationConfig& base,
                                            const std::vector<double>& gammas,
                                            const std::vector<double>& short_lengths,
                                            const std::vector<std::uint64_t>& adaptive_bases,
                                            const ComparisonOptions& options) {
  std::vector<BenchmarkRecord> records;
  std::vector<std::optional<Grid2D>> references(gammas.size());
  std::vector<Cell> cells;

  for (std::size_t g = 0; g < gammas.size(); ++g) {
    SimulationConfig config = base;
    config.gamma = gammas[g];
    config.strategy = FullMemory{};
    BenchmarkRecord full;
    full.strategy = "full";
    full.gamma = gammas[g];
    try {
      double best = std::numeric_limits<double>::infinity();
      SimulationResult result;
      for (std::size_t r = 0; r < std::max<std::size_t>(1, options.repeats); ++r) {
        result = run(config);
        best = std::min(best, result.elapsed_seconds);
      }
      full.elapsed_s = best;
      full.terms_visited = result.terms_visited;
      references[g] = std::move(result.final_grid);
    } catch (const std::exception& e) {
      full.failed = true;
      full.failure = e.what();
      full.elapsed_s = full.err_l2_pct = full.err_linf_pct = kNaN;
    }
    records.push_back(full);
    for (double length : short_lengths) cells.push_back({ShortMemory{length}, g});
    for (std::uint64_t a : adaptive_bases) cells.push_back({AdaptiveMemory{a}, g});
  }

  std::vector<BenchmarkRecord> cell_records(cells.size());
  auto evaluate = [&](std::size_t index) {
    const Cell& cell = cells[index];
    SimulationConfig config = base;
    config.gamma = gammas[cell.gamma_index];
    config.strategy = cell.strategy;
    const auto& reference = references[cell.gamma_index];
    if (!reference) {
      BenchmarkRecord& rec = cell_records[index];
      rec.strategy = strategy_name(cell.strategy);
      rec.param = strategy_parameter(cell.strategy);
      rec.gamma = config.gamma;
      rec.failed = true;
      rec.failure = "reference run failed";
      rec.elapsed_s = rec.err_l2_pct = rec.err_linf_pct = kNaN;
      return;
    }
    cell_records[index] = timed_cell(config, *reference, options.repeats);
  };

  const std::size_t workers =
      options.parallel ? (options.workers > 0 ? options.workers : worker_count_from_env()) : 1;
  if (workers <= 1 || cells.size() <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) evaluate(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < std::min(workers, cells.size()); ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < cells.size(); i = next++) evaluate(i);
      });
    }
  }

  records.insert(records.end(), cell_records.begin(), cell_records.end());
  std::stable_sort(records.begin(), records.end(), record_less);
  return records;
}

std::pair<std::size_t, std::size_t> focus_cell(const SimulationConfig& config) {
  if (config.sources.empty()) return {config.nx / 2, config.ny / 2};
  const auto best = std::max_element(
      config.sources.begin(), config.sources.end(),
      [](const PointSource& a, const PointSource& b) { return a.value < b.value; });
  return {best->j, best->l};
}

std::vector<GammaTrace> gamma_sweep(const SimulationConfig& base, const std::vector<double>& gammas) {
  std::vector<GammaTrace> traces;
  const auto [fj, fl] = focus_cell(base);
  for (double gamma : gammas) {
    SimulationConfig config = base;
    config.gamma = gamma;
    config.strategy = FullMemory{};
    const SimulationResult result = run(config);
    GammaTrace trace;
    trace.gamma = gamma;
    trace.profile = slice_profile(result.final_grid, fl);
    for (const auto& snap : result.snapshots) {
      trace.times.push_back(static_cast<double>(snap.step) * config.dt);
      trace.focus_values.push_back(snap.grid(fj, fl));
    }
    trace.final_grid = result.final_grid;
    traces.push_back(std::move(trace));
  }
  return traces;
}

}  // namespace fracgrid
