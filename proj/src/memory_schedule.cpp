#include "fracgrid/memory_schedule.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#include "fracgrid/errors.hpp"
#include "fracgrid/format.hpp"

namespace fracgrid {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void check_base(std::uint64_t base) {
  if (base < 2) {
    throw ConfigError("adaptive base interval must be >= 2, got " + std::to_string(base),
                      "memory");
  }
}

// base^exponent, saturating at UINT64_MAX.
std::uint64_t saturating_pow(std::uint64_t base, unsigned exponent) {
  std::uint64_t result = 1;
  for (unsigned e = 0; e < exponent; ++e) {
    if (result > std::numeric_limits<std::uint64_t>::max() / base) {
      return std::numeric_limits<std::uint64_t>::max();
    }
    result *= base;
  }
  return result;
}

}  // namespace

void validate(const MemoryStrategy& strategy) {
  std::visit(overloaded{
                 [](const FullMemory&) {},
                 [](const ShortMemory& s) {
                   if (!std::isfinite(s.length) || s.length <= 0.0) {
                     throw ConfigError("short memory length L must be positive and finite",
                                       "memory");
                   }
                 },
                 [](const AdaptiveMemory& a) { check_base(a.base); },
             },
             strategy);
}

std::string strategy_name(const MemoryStrategy& strategy) {
  return std::visit(overloaded{
                        [](const FullMemory&) { return std::string("full"); },
                        [](const ShortMemory&) { return std::string("short"); },
                        [](const AdaptiveMemory&) { return std::string("adaptive"); },
                    },
                    strategy);
}

double strategy_parameter(const MemoryStrategy& strategy) {
  return std::visit(overloaded{
                        [](const FullMemory&) { return 0.0; },
                        [](const ShortMemory& s) { return s.length; },
                        [](const AdaptiveMemory& a) { return static_cast<double>(a.base); },
                    },
                    strategy);
}

std::string format_strategy(const MemoryStrategy& strategy) {
  return std::visit(overloaded{
                        [](const FullMemory&) { return std::string("full"); },
                        [](const ShortMemory& s) { return "short:" + format_double(s.length); },
                        [](const AdaptiveMemory& a) { return "adaptive:" + std::to_string(a.base); },
                    },
                    strategy);
}

MemoryStrategy parse_strategy(const std::string& text) {
  const auto colon = text.find(':');
  const std::string name = text.substr(0, colon);
  const std::string arg = colon == std::string::npos ? std::string{} : text.substr(colon + 1);

  if (name == "full") {
    if (colon != std::string::npos) throw ConfigError("full memory takes no parameter", "memory");
    return FullMemory{};
  }
  if (arg.empty()) {
    throw ConfigError("memory strategy '" + text + "' needs a parameter, e.g. short:100", "memory");
  }
  char* end = nullptr;
  errno = 0;
  if (name == "short") {
    const double length = std::strtod(arg.c_str(), &end);
    if (*end != '\0' || errno == ERANGE) {
      throw ConfigError("bad short memory length '" + arg + "'", "memory");
    }
    MemoryStrategy s = ShortMemory{length};
    validate(s);
    return s;
  }
  if (name == "adaptive") {
    if (arg.front() == '-') throw ConfigError("bad adaptive base '" + arg + "'", "memory");
    const unsigned long long base = std::strtoull(arg.c_str(), &end, 10);
    if (*end != '\0' || errno == ERANGE) {
      throw ConfigError("bad adaptive base '" + arg + "'", "memory");
    }
    MemoryStrategy s = AdaptiveMemory{base};
    validate(s);
    return s;
  }
  throw ConfigError("unknown memory strategy '" + name + "' (expected full, short or adaptive)",
                    "memory");
}

MemorySchedule full_schedule(std::uint64_t k) {
  MemorySchedule schedule;
  schedule.reserve(k + 1);
  for (std::uint64_t m = 0; m <= k; ++m) schedule.push_back({m, 1});
  return schedule;
}

MemorySchedule short_schedule(std::uint64_t k, double length, double dt) {
  if (!std::isfinite(length) || length <= 0.0) {
    throw ConfigError("short memory length L must be positive", "memory");
  }
  if (!std::isfinite(dt) || dt <= 0.0) throw ConfigError("dt must be positive", "dt");
  const double steps = std::floor(length / dt);
  const std::uint64_t last =
      steps >= static_cast<double>(k) ? k : static_cast<std::uint64_t>(steps);
  return full_schedule(last);
}

MemorySchedule adaptive_schedule(std::uint64_t k, std::uint64_t base) {
  check_base(base);
  if (k <= base) return full_schedule(k);

  MemorySchedule schedule;
  for (std::uint64_t m = 0; m <= base; ++m) schedule.push_back({m, 1});

  // Last history index covered so far.
  std::uint64_t covered = base;
  bool window_past_k = false;
  for (unsigned i = 2; !window_past_k; ++i) {
    const std::uint64_t lower = saturating_pow(base, i - 1);
    const std::uint64_t upper = saturating_pow(base, i);
    if (lower > k || lower + i > k) break;  // interval starts beyond k
    const std::uint64_t width = 2 * std::uint64_t{i} - 1;
    const std::uint64_t half = i - 1;
    // eta = 1 sample is lower + i; later samples step by width.
    for (std::uint64_t m = lower + i; m <= upper; m += width) {
      if (m + half > k) {
        window_past_k = true;
        break;
      }
      schedule.push_back({m, width});
      covered = m + half;
    }
    if (upper == std::numeric_limits<std::uint64_t>::max()) break;
  }
  for (std::uint64_t m = covered + 1; m <= k; ++m) schedule.push_back({m, 1});
  return schedule;
}

MemorySchedule make_schedule(const MemoryStrategy& strategy, std::uint64_t k, double dt) {
  return std::visit(overloaded{
                        [&](const FullMemory&) { return full_schedule(k); },
                        [&](const ShortMemory& s) { return short_schedule(k, s.length, dt); },
                        [&](const AdaptiveMemory& a) { return adaptive_schedule(k, a.base); },
                    },
                    strategy);
}

CoverageStats coverage_report(const MemorySchedule& schedule, std::uint64_t k) {
  CoverageStats stats;
  std::vector<std::uint32_t> hits(k + 1, 0);
  for (const auto& entry : schedule) {
    stats.weight_sum += entry.weight;
    const std::uint64_t half = (entry.weight - 1) / 2;
    const std::uint64_t first = entry.offset >= half ? entry.offset - half : 0;
    const std::uint64_t last = entry.offset + (entry.weight - 1 - half);
    for (std::uint64_t m = first; m <= last && m <= k; ++m) ++hits[m];
  }
  for (std::uint64_t m = 0; m <= k; ++m) {
    if (hits[m] == 0) {
      ++stats.gap_count;
      stats.gap_indices.push_back(m);
    } else if (hits[m] > 1) {
      ++stats.overlap_count;
      stats.overlap_excess += hits[m] - 1;
      stats.overlap_indices.push_back(m);
    }
  }
  return stats;
}

}  // namespace fracgrid
