#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace fracgrid {

/// Every past step contributes.
struct FullMemory {
  friend bool operator==(const FullMemory&, const FullMemory&) = default;
};

/// Only the most recent window of `length` time units contributes.
struct ShortMemory {
  double length;
  friend bool operator==(const ShortMemory&, const ShortMemory&) = default;
};

/// Offsets 0..base are visited one by one; beyond that, interval i >= 2 spans
/// [base^(i-1) + i, base^i] and is sampled every 2i - 1 offsets with weight 2i - 1.
struct AdaptiveMemory {
  std::uint64_t base;
  friend bool operator==(const AdaptiveMemory&, const AdaptiveMemory&) = default;
};

using MemoryStrategy = std::variant<FullMemory, ShortMemory, AdaptiveMemory>;

/// Throws ConfigError for L <= 0 (or non-finite) and base < 2.
void validate(const MemoryStrategy& strategy);

/// "full", "short" or "adaptive".
std::string strategy_name(const MemoryStrategy& strategy);
/// L for short, a for adaptive, 0 for full.
double strategy_parameter(const MemoryStrategy& strategy);
/// Inverse of "name[:param]" as accepted by the CLI, e.g. "short:100", "adaptive:5".
MemoryStrategy parse_strategy(const std::string& text);
std::string format_strategy(const MemoryStrategy& strategy);

/// One backward-sum term: history offset m (reads delta^{k-m}) with integer weight.
struct ScheduleEntry {
  std::uint64_t offset;
  std::uint64_t weight;
  friend bool operator==(const ScheduleEntry&, const ScheduleEntry&) = default;
};

using MemorySchedule = std::vector<ScheduleEntry>;

/// [(0,1), (1,1), ..., (k,1)].
MemorySchedule full_schedule(std::uint64_t k);

/// Unit weights on offsets 0..min(floor(L/dt), k). Throws ConfigError for
/// non-positive L or dt.
MemorySchedule short_schedule(std::uint64_t k, double length, double dt);

/// Adaptive schedule for current step k.
///
/// For k <= base this is full_schedule(k). Otherwise offsets 0..base carry unit
/// weight; interval i = 2, 3, ... contributes samples
///   m = base^(i-1) + (2i-1) eta - i + 1,   eta = 1, 2, ...
/// with weight 2i - 1, each standing in for the window [m - (i-1), m + (i-1)].
/// A sample is taken only while m <= base^i and its window ends at or before k.
/// Offsets after the last admitted window, up to k, are added with unit weight.
///
/// Throws ConfigError for base < 2.
MemorySchedule adaptive_schedule(std::uint64_t k, std::uint64_t base);

/// Dispatches on the strategy.
MemorySchedule make_schedule(const MemoryStrategy& strategy, std::uint64_t k, double dt);

/// How the windows of a schedule cover history indices 0..k.
struct CoverageStats {
  std::uint64_t weight_sum = 0;
  /// Indices in [0, k] inside no window.
  std::uint64_t gap_count = 0;
  /// Indices inside two or more windows.
  std::uint64_t overlap_count = 0;
  /// Sum over overlapped indices of (cover count - 1), so that
  /// weight_sum == k + 1 - gap_count + overlap_excess.
  std::uint64_t overlap_excess = 0;
  std::vector<std::uint64_t> gap_indices;
  std::vector<std::uint64_t> overlap_indices;
};

/// A weight-w entry covers the w consecutive indices centred on its offset
/// (w is odd for every generated schedule). Indices beyond [0, k] are ignored.
CoverageStats coverage_report(const MemorySchedule& schedule, std::uint64_t k);

}  // namespace fracgrid
