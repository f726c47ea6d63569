#include "fracgrid/solver.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fracgrid/errors.hpp"
#include "fracgrid/format.hpp"

namespace fracgrid {

namespace {

void require(bool ok, const char* key, const std::string& message) {
  if (!ok) throw ConfigError(std::string(key) + ": " + message, key);
}

bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }

// acc = sum_{(m,w)} w * psi[m] * delta^{k-m}, visiting the schedule in order.
// The boundary ring of every delta field is zero, so it stays zero in acc.
void accumulate(Grid2D& acc, const HistoryBuffer& history, const MemorySchedule& schedule,
                const PsiTable& table, std::size_t k) {
  auto out = acc.data();
  std::fill(out.begin(), out.end(), 0.0);
  for (const auto& [m, w] : schedule) {
    if (m > k) {
      throw std::out_of_range("schedule offset " + std::to_string(m) + " exceeds step " +
                              std::to_string(k));
    }
    const double coefficient = static_cast<double>(w) * table.at(m);
    const auto delta = history.at(k - m).data();
    for (std::size_t c = 0; c < out.size(); ++c) out[c] += coefficient * delta[c];
  }
}

}  // namespace

double stability_ratio(const SimulationConfig& config) {
  return config.alpha * std::pow(config.dt, config.gamma) / (config.dx * config.dx);
}

std::optional<std::string> stability_warning(const SimulationConfig& config) {
  const double r = stability_ratio(config);
  if (r > 0.25) {
    return "stability ratio alpha*dt^gamma/dx^2 = " + format_double(r) +
           " exceeds 1/4; the explicit scheme may diverge";
  }
  return std::nullopt;
}

void validate(const SimulationConfig& c) {
  require(std::isfinite(c.gamma) && c.gamma > 0.0 && c.gamma <= 1.0, "gamma",
          "must be in (0, 1], got " + format_double(c.gamma));
  require(std::isfinite(c.alpha) && c.alpha >= 0.0, "alpha",
          "must be finite and >= 0, got " + format_double(c.alpha));
  require(std::isfinite(c.beta) && c.beta >= 0.0, "beta",
          "must be finite and >= 0, got " + format_double(c.beta));
  require(positive_finite(c.dt), "dt", "must be finite and > 0, got " + format_double(c.dt));
  require(positive_finite(c.dx), "dx", "must be finite and > 0, got " + format_double(c.dx));
  require(c.nx >= 3 && c.ny >= 3, "grid",
          "must be at least 3x3, got " + std::to_string(c.nx) + "x" + std::to_string(c.ny));
  for (const auto& s : c.sources) {
    require(s.j > 0 && s.l > 0 && s.j + 1 < c.nx && s.l + 1 < c.ny, "source",
            "cell (" + std::to_string(s.j) + "," + std::to_string(s.l) +
                ") is not an interior cell");
    require(std::isfinite(s.value), "source", "value must be finite");
  }
  if (c.initial_field) {
    require(c.initial_field->nx() == c.nx && c.initial_field->ny() == c.ny, "initial",
            "initial field shape does not match the grid");
    require(c.initial_field->all_finite(), "initial", "initial field has non-finite values");
  }
  try {
    validate(c.strategy);
  } catch (const ConfigError& e) {
    throw ConfigError(std::string("memory: ") + e.what(), "memory");
  }
}

std::size_t snapshot_interval(const SimulationConfig& config) {
  if (config.snapshot_every > 0) return config.snapshot_every;
  return std::max<std::size_t>(1, (config.n_steps + 99) / 100);
}

Grid2D initial_grid(const SimulationConfig& config) {
  Grid2D grid(config.nx, config.ny, config.dx);
  if (config.initial_field) {
    const auto dense = config.initial_field->data();
    std::copy(dense.begin(), dense.end(), grid.data().begin());
  }
  for (const auto& s : config.sources) grid(s.j, s.l) = s.value;
  for (std::size_t l = 0; l < grid.ny(); ++l) {
    for (std::size_t j = 0; j < grid.nx(); ++j) {
      if (grid.is_boundary(j, l)) grid(j, l) = 0.0;
    }
  }
  return grid;
}

Grid2D history_sum(const HistoryBuffer& history, const MemorySchedule& schedule,
                   const PsiTable& table, std::size_t k) {
  if (history.empty()) throw std::out_of_range("history is empty");
  const auto& shape = history.at(0);
  Grid2D acc(shape.nx(), shape.ny(), shape.dx());
  accumulate(acc, history, schedule, table, k);
  return acc;
}

Stepper::Stepper(const SimulationConfig& config)
    : Stepper(config, PsiTable(config.gamma, config.n_steps)) {}

Stepper::Stepper(const SimulationConfig& config, PsiTable table)
    : config_((validate(config), config)),
      table_(std::move(table)),
      grid_(initial_grid(config_)),
      history_(config_.nx, config_.ny, config_.n_steps + 1, config_.memory_cap_bytes),
      decay_(1.0 - config_.beta * config_.dt),
      gain_(config_.dt * config_.alpha * std::pow(config_.dt, config_.gamma - 1.0) /
            (config_.dx * config_.dx)),
      accumulator_(config_.nx, config_.ny, config_.dx) {
  if (table_.gamma() != config_.gamma || table_.capacity() < config_.n_steps) {
    throw ConfigError("psi table does not match gamma or step count", "gamma");
  }
  history_.push(laplacian_field(grid_));
}

void Stepper::step() {
  const MemorySchedule schedule = make_schedule(config_.strategy, k_, config_.dt);
  accumulate(accumulator_, history_, schedule, table_, k_);
  terms_visited_ += schedule.size();

  const std::size_t nx = grid_.nx();
  const std::size_t ny = grid_.ny();
  auto u = grid_.data();
  const auto sum = accumulator_.data();
  bool finite = true;
  for (std::size_t l = 1; l + 1 < ny; ++l) {
    for (std::size_t c = l * nx + 1; c < (l + 1) * nx - 1; ++c) {
      u[c] = decay_ * u[c] + gain_ * sum[c];
      finite = finite && std::isfinite(u[c]);
    }
  }
  ++k_;
  if (!finite) {
    const double worst = grid_.max_abs();
    throw DivergenceError("solution diverged at step " + std::to_string(k_) +
                              " (max |u| = " + format_double(worst) + ")",
                          static_cast<long>(k_), worst);
  }
  history_.push(laplacian_field(grid_));
}

SimulationResult run(const SimulationConfig& config, const StepObserver& observer) {
  Stepper stepper(config);
  SimulationResult result;
  result.config = config;
  result.warning = stability_warning(config);
  const std::size_t every = snapshot_interval(config);
  result.snapshots.push_back({0, stepper.grid()});

  using Clock = std::chrono::steady_clock;
  Clock::duration elapsed{};
  for (std::size_t n = 0; n < config.n_steps; ++n) {
    const auto start = Clock::now();
    stepper.step();
    elapsed += Clock::now() - start;
    const std::size_t k = stepper.step_index();
    if (k % every == 0 || k == config.n_steps) result.snapshots.push_back({k, stepper.grid()});
    if (observer) observer(k, stepper.grid());
  }
  result.final_grid = stepper.grid();
  result.elapsed_seconds = std::chrono::duration<double>(elapsed).count();
  result.terms_visited = stepper.terms_visited();
  return result;
}

}  // namespace fracgrid
