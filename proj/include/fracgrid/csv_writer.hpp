#pragma once

#include <span>
#include <string>
#include <vector>

#include "fracgrid/benchmark.hpp"
#include "fracgrid/grid.hpp"
#include "fracgrid/memory_schedule.hpp"

namespace fracgrid {

inline constexpr const char* kBenchmarkHeader =
    "strategy,param,gamma,elapsed_s,err_l2_pct,err_linf_pct";

// Formatters return the exact file contents; the write_* functions put them on
// disk and throw IoError naming the path on failure.

/// ny lines of nx comma-separated values, round-trip exact.
std::string format_grid_csv(const Grid2D& grid);
/// One "index,value" line per entry.
std::string format_profile_csv(std::span<const double> profile);
/// Header line then one "x,y" line per point.
std::string format_series_csv(const std::string& header, std::span<const double> x,
                              std::span<const double> y);
/// Header then records sorted by (gamma, strategy, param). Throws ConfigError
/// for an empty list.
std::string format_benchmark_csv(std::vector<BenchmarkRecord> records);
/// "m,w" header then one line per entry.
std::string format_schedule_csv(const MemorySchedule& schedule);

void write_text_file(const std::string& path, const std::string& contents);

void write_grid_csv(const Grid2D& grid, const std::string& path);
void write_profile_csv(std::span<const double> profile, const std::string& path);
void write_benchmark_csv(const std::vector<BenchmarkRecord>& records, const std::string& path);

/// Parses a matrix CSV written by write_grid_csv (ny rows of nx values).
Grid2D read_grid_csv(const std::string& path, double dx = 1.0);

}  // namespace fracgrid
